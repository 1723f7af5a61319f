"""Explicit modules for the truncated current algebra sl2 (x) C[t]/t^T.

A module is a basis together with exact matrices for the generators
``x (x) t^r`` with ``x`` in {e, f, h} and ``0 <= r < T``.  Generators are
written as pairs ``("f", 2)``.

The fusion filtration of a tensor product of evaluation modules is computed
from the cyclic vector v.  When v is a highest-weight vector, PBW shows that
the degree <= s piece is spanned by commuting monomials in the ``f (x) t^p``
applied to v, so only f-monomials are ever generated; the induced e and h
actions on the associated graded module then follow from the commutation
relations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from flint import fmpq, fmpq_mat

from fusionlab import config
from fusionlab.errors import DomainError, ResourceCapError, VerificationError
from fusionlab.linalg import EchelonBasis, SparseMatrix, axpy, gather_columns, rref

GENS = ("e", "f", "h")
SHIFT = {"e": 2, "f": -2, "h": 0}

# [x, y] as a list of (coefficient, z)
_BRACKET = {
    ("e", "f"): [(1, "h")], ("f", "e"): [(-1, "h")],
    ("h", "e"): [(2, "e")], ("e", "h"): [(-2, "e")],
    ("h", "f"): [(-2, "f")], ("f", "h"): [(2, "f")],
}


def bracket(x, y):
    return _BRACKET.get((x, y), [])


def as_fmpq(z):
    if isinstance(z, fmpq):
        return z
    if isinstance(z, Fraction):
        return fmpq(z.numerator, z.denominator)
    if isinstance(z, int):
        return fmpq(z)
    if isinstance(z, str):
        q = Fraction(z)
        return fmpq(q.numerator, q.denominator)
    raise DomainError(f"cannot use {z!r} as an exact rational")


def fmpq_to_fraction(c):
    return Fraction(int(c.p), int(c.q))


@dataclass(frozen=True)
class GradedDims:
    """dims[s] is the dimension of the t-degree s component."""

    dims: Tuple[int, ...]

    @property
    def total(self):
        return sum(self.dims)

    def to_list(self):
        return list(self.dims)


def _trim(dims):
    dims = list(dims)
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return tuple(dims) if dims else (0,)


class ExplicitModule:
    """A finite-dimensional module with exact generator matrices.

    Matrices are built lazily by ``factory(x, r)`` and cached; generators
    with ``r >= trunc`` act as zero.
    """

    def __init__(self, weights, trunc, *, labels=None, tdeg=None, cyclic_index=None,
                 ops=None, factory=None, name="module"):
        self.weights = list(weights)
        self.dim = len(self.weights)
        self.trunc = trunc
        self.labels = list(labels) if labels is not None else list(range(self.dim))
        self.tdeg = list(tdeg) if tdeg is not None else None
        self.cyclic_index = cyclic_index
        self._ops = dict(ops or {})
        self._factory = factory
        self.name = name

    def __repr__(self):
        return f"ExplicitModule({self.name}, dim={self.dim}, trunc={self.trunc})"

    @property
    def graded(self):
        return self.tdeg is not None

    def generators(self):
        return [(x, r) for r in range(self.trunc) for x in GENS]

    def op(self, x, r):
        if x not in GENS:
            raise DomainError(f"unknown generator {x!r}")
        if r < 0:
            raise DomainError("negative t-degree")
        if r >= self.trunc:
            return SparseMatrix(self.dim, self.dim)
        key = (x, r)
        mat = self._ops.get(key)
        if mat is None:
            mat = self._factory(x, r) if self._factory else SparseMatrix(self.dim, self.dim)
            self._ops[key] = mat
        return mat

    @property
    def action(self):
        return {g: self.op(*g) for g in self.generators()}

    def cyclic_vector(self):
        if self.cyclic_index is None:
            raise DomainError(f"{self.name} has no cyclic vector")
        return {self.cyclic_index: fmpq(1)}

    def apply(self, word, vec):
        """Apply the product word[0] word[1] ... word[-1] to vec."""
        for x, r in reversed(word):
            vec = self.op(x, r).apply(vec)
            if not vec:
                break
        return vec

    def graded_dims(self):
        if not self.graded:
            return GradedDims((self.dim,))
        out = [0] * (max(self.tdeg, default=0) + 1)
        for s in self.tdeg:
            out[s] += 1
        return GradedDims(_trim(out))

    def weight_graded_dims(self):
        out = {}
        for i in range(self.dim):
            key = (self.weights[i], self.tdeg[i] if self.graded else 0)
            out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items(), key=lambda kv: (-kv[0][0], kv[0][1])))

    def character(self):
        """Weight and degree multiplicities, as a sorted tuple."""
        return tuple(sorted(self.weight_graded_dims().items()))

    def indices_by_weight(self):
        out = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return out

    # structural checks

    def bracket_failures(self, pairs=None):
        """Generator pairs where [x t^a, y t^b] != [x,y] t^(a+b)."""
        gens = self.generators()
        if pairs is None:
            pairs = [(g1, g2) for i, g1 in enumerate(gens) for g2 in gens[i + 1:]]
        bad = []
        for (x, a), (y, b) in pairs:
            X, Y = self.op(x, a), self.op(y, b)
            lhs = X @ Y - Y @ X
            rhs = SparseMatrix(self.dim, self.dim)
            for c, z in bracket(x, y):
                rhs = rhs + self.op(z, a + b).scale(c)
            if lhs != rhs:
                bad.append(((x, a), (y, b)))
        return bad

    def weight_failures(self):
        H = self.op("h", 0)
        return [i for i in range(self.dim)
                if H.column(i) != ({i: fmpq(self.weights[i])} if self.weights[i] else {})]

    def grading_failures(self):
        if not self.graded:
            return []
        bad = []
        for x, r in self.generators():
            for j, col in self.op(x, r).cols.items():
                for i in col:
                    if self.tdeg[i] != self.tdeg[j] + r or self.weights[i] != self.weights[j] + SHIFT[x]:
                        bad.append(((x, r), j, i))
        return bad

    def check_structure(self):
        problems = []
        if self.bracket_failures():
            problems.append("bracket")
        if self.weight_failures():
            problems.append("weights")
        if self.grading_failures():
            problems.append("grading")
        return problems


def irrep(k):
    """V(k) with basis v_i = f^i v_0, i = 0..k."""
    if k < 0:
        raise DomainError("highest weight must be non-negative")
    n = k + 1
    ops = {
        ("e", 0): SparseMatrix(n, n, {i: {i - 1: fmpq(i * (k - i + 1))} for i in range(1, n)}),
        ("f", 0): SparseMatrix(n, n, {i: {i + 1: fmpq(1)} for i in range(n - 1)}),
        ("h", 0): SparseMatrix.diagonal([k - 2 * i for i in range(n)]),
    }
    return ExplicitModule([k - 2 * i for i in range(n)], 1, ops=ops, cyclic_index=0,
                          name=f"V({k})")


def evaluation(M, z, trunc):
    """x (x) t^r acts as z^r x."""
    if trunc < 1:
        raise DomainError("trunc must be at least 1")
    z = as_fmpq(z)

    def factory(x, r):
        base = M.op(x, 0)
        return base if r == 0 else base.scale(z ** r)

    out = ExplicitModule(M.weights, trunc, labels=M.labels, cyclic_index=M.cyclic_index,
                         factory=factory, name=f"{M.name}^{z}")
    out.parameter = z
    return out


def _lift_into(cols, A, i, dims, strides):
    """Add A acting on tensor factor i to the column dict ``cols``."""
    st = strides[i]
    others = [range(d) for k, d in enumerate(dims) if k != i]
    ost = [strides[k] for k in range(len(dims)) if k != i]
    bases = [sum(a * s for a, s in zip(t, ost)) for t in itertools.product(*others)]
    for a, col in A.cols.items():
        shifted = [(row * st, c) for row, c in col.items()]
        for base in bases:
            tgt = cols.setdefault(base + a * st, {})
            for off, c in shifted:
                k = base + off
                v = tgt.get(k, 0) + c
                if v == 0:
                    tgt.pop(k, None)
                else:
                    tgt[k] = v


def tensor(modules, trunc=None, cap=None):
    """Tensor product with the Leibniz action; the first factor is most significant."""
    if not modules:
        raise DomainError("need at least one factor")
    if trunc is None:
        trunc = max(M.trunc for M in modules)
    dims = [M.dim for M in modules]
    n = math.prod(dims)
    cap = config.dimension_cap(cap)
    if n > cap:
        raise ResourceCapError("tensor product", n, cap)
    strides = []
    acc = 1
    for d in reversed(dims):
        strides.append(acc)
        acc *= d
    strides.reverse()
    digits = list(itertools.product(*(range(d) for d in dims)))
    weights = [sum(M.weights[a] for M, a in zip(modules, t)) for t in digits]
    tdeg = None
    if all(M.graded for M in modules):
        tdeg = [sum(M.tdeg[a] for M, a in zip(modules, t)) for t in digits]
    labels = [tuple(M.labels[a] for M, a in zip(modules, t)) for t in digits]
    cyc = None
    if all(M.cyclic_index is not None for M in modules):
        cyc = sum(M.cyclic_index * s for M, s in zip(modules, strides))

    def factory(x, r):
        cols = {}
        for i, M in enumerate(modules):
            A = M.op(x, r)
            if not A.is_zero():
                _lift_into(cols, A, i, dims, strides)
        return SparseMatrix(n, n, cols)

    out = ExplicitModule(weights, trunc, labels=labels, tdeg=tdeg, cyclic_index=cyc,
                         factory=factory, name=" (x) ".join(M.name for M in modules))
    out.factors = list(modules)
    return out


def check_distinct(params):
    qs = [as_fmpq(z) for z in params]
    if len(set((int(q.p), int(q.q)) for q in qs)) != len(qs):
        raise DomainError(f"fusion parameters must be pairwise distinct: {list(params)}")
    return qs


def default_params(n):
    return list(range(n))


def evaluation_tensor(highest_weights, params=None, trunc=None, cap=None):
    """V(k_1)^{z_1} (x) ... (x) V(k_n)^{z_n}, with t truncated at n by default."""
    n = len(highest_weights)
    params = default_params(n) if params is None else list(params)
    if len(params) != n:
        raise DomainError(f"{n} factors but {len(params)} parameters")
    params = check_distinct(params)
    trunc = max(n, 1) if trunc is None else trunc
    cap = config.dimension_cap(cap)
    size = math.prod(k + 1 for k in highest_weights)
    if size > cap:
        raise ResourceCapError("tensor product", size, cap)
    return tensor([evaluation(irrep(k), z, trunc) for k, z in zip(highest_weights, params)],
                  trunc, cap)


# fusion filtration


@dataclass
class LoweringGen:
    key: tuple
    tdeg: int
    extra: int
    matrix: SparseMatrix


@dataclass
class Filtration:
    """Associated graded data of the cyclic span of a highest-weight vector.

    Labels are exponent vectors over ``gens``; ``pieces[(weight, extra, s)]``
    lists the labels whose classes form a basis of that graded piece, and
    ``coords[label]`` expresses the class of any generated monomial in
    terms of the basis labels of its piece.
    """

    top_weight: int
    top_extra: int
    gens: List[LoweringGen]
    pieces: Dict[tuple, list] = field(default_factory=dict)
    coords: Dict[tuple, dict] = field(default_factory=dict)
    parent: Dict[tuple, tuple] = field(default_factory=dict)
    dim: int = 0

    @property
    def selected(self):
        return sum(len(v) for v in self.pieces.values())

    @property
    def defect(self):
        return self.dim - self.selected

    def piece_of(self, label):
        w = self.top_weight - 2 * sum(label)
        extra = self.top_extra + sum(g.extra * c for g, c in zip(self.gens, label))
        s = sum(g.tdeg * c for g, c in zip(self.gens, label))
        return (w, extra, s)

    def graded_dims(self):
        out = {}
        for (_, _, s), labels in self.pieces.items():
            out[s] = out.get(s, 0) + len(labels)
        top = max(out, default=0)
        return GradedDims(_trim([out.get(s, 0) for s in range(top + 1)]))

    def weight_graded_dims(self):
        out = {}
        for (w, _, s), labels in self.pieces.items():
            if labels:
                out[(w, s)] = out.get((w, s), 0) + len(labels)
        return dict(sorted(out.items(), key=lambda kv: (-kv[0][0], kv[0][1])))

    def bigraded_dims(self):
        """Dimensions indexed by (t-degree, extra degree)."""
        out = {}
        for (_, j, s), labels in self.pieces.items():
            if labels:
                out[(s, j)] = out.get((s, j), 0) + len(labels)
        return dict(sorted(out.items()))


def is_highest_weight_cyclic(M):
    c = M.cyclic_index
    if c is None:
        return False
    v = {c: fmpq(1)}
    for r in range(M.trunc):
        if M.op("e", r).apply(v):
            return False
        img = M.op("h", r).apply(v)
        if any(i != c for i in img):
            return False
    return True


def _columns(A, cols):
    return gather_columns([A], [(0, b) for b in cols], A.nrows())


def hw_filtration(M, gens, extra=None, cap=None):
    """Filtration of U(g[t]) v by t-degree for a highest-weight cyclic v.

    ``gens`` are the lowering generators; ``extra`` optionally assigns a
    second grading to basis vectors that every generator respects.

    Every candidate monomial at a given weight comes from a basis monomial one
    weight higher, so all candidates of a weight class are known at once.
    Ordering them by t-degree, the pivot columns of a single reduced echelon
    form are a degree-by-degree greedy basis, and the entries of a non-pivot
    column on pivots of its own degree are its coordinates in gr.
    """
    cap = config.dimension_cap(cap)
    if M.dim > cap:
        raise ResourceCapError("fusion filtration", M.dim, cap)
    c = M.cyclic_index
    extra = extra or [0] * M.dim
    classes = {}
    for i in range(M.dim):
        classes.setdefault((M.weights[i], extra[i]), []).append(i)
    top_w, top_j = M.weights[c], extra[c]
    filt = Filtration(top_w, top_j, list(gens), dim=M.dim)
    zero = tuple([0] * len(gens))
    filt.coords[zero] = {zero: fmpq(1)}
    cls = classes[(top_w, top_j)]
    vec = fmpq_mat(len(cls), 1)
    vec[cls.index(c), 0] = 1
    filt.pieces[(top_w, top_j, 0)] = [zero]
    # (extra, s) -> (labels, columns on the class) for the previous weight
    prev = {(top_j, 0): ([zero], vec)}
    w = top_w - 2
    while prev and any(ww == w for ww, _ in classes):
        cur = {}
        for j in sorted(jj for ww, jj in classes if ww == w):
            rows = classes[(w, j)]
            n = len(rows)
            cand = []          # (s, label, gen index, source label, matrix id, column)
            mats = []
            seen = set()
            for gi, g in enumerate(gens):
                src_j = j - g.extra
                if (w + 2, src_j) not in classes:
                    continue
                block = None
                for (pj, ps), (slabels, svec) in prev.items():
                    if pj != src_j:
                        continue
                    keep = []
                    for b, u in enumerate(slabels):
                        lab = list(u)
                        lab[gi] += 1
                        lab = tuple(lab)
                        if lab not in seen:
                            seen.add(lab)
                            keep.append((b, lab))
                    if not keep:
                        continue
                    if block is None:
                        block = g.matrix.block(rows, classes[(w + 2, src_j)])
                    for b, lab in keep:
                        cand.append((ps + g.tdeg, lab, gi, slabels[b], len(mats), b))
                    mats.append(block * svec)
            if not cand:
                continue
            cand.sort(key=lambda t: t[0])
            C = gather_columns(mats, [(t[4], t[5]) for t in cand], n)
            ents = [C.entries()]
            R, piv = rref(C)
            ent = R.entries()
            nc = len(cand)
            pivset = {col: a for a, col in enumerate(piv)}
            by_s = {}
            for a, col in enumerate(piv):
                by_s.setdefault(cand[col][0], []).append(col)
            for s, cols in by_s.items():
                chosen = [cand[col][1] for col in cols]
                filt.pieces[(w, j, s)] = chosen
                cur[(j, s)] = (chosen, gather_columns([C], [(0, col) for col in cols], n, ents))
                for col in cols:
                    filt.parent[cand[col][1]] = (cand[col][2], cand[col][3])
            for col, (s, lab, _, _, _, _) in enumerate(cand):
                if col in pivset:
                    filt.coords[lab] = {lab: fmpq(1)}
                    continue
                co = {}
                for a, pc in enumerate(piv):
                    if pc > col:
                        break
                    if cand[pc][0] == s:
                        v = ent[a * nc + col]
                        if v != 0:
                            co[cand[pc][1]] = v
                filt.coords[lab] = co
        prev = cur
        w -= 2
    return filt


def _generic_graded_dims(M, cap=None):
    """Breadth-first closure of the cyclic vector under all generators."""
    cap = config.dimension_cap(cap)
    if M.dim > cap:
        raise ResourceCapError("fusion filtration", M.dim, cap)
    basis = EchelonBasis(M.dim)
    layers = {0: [M.cyclic_vector()]}
    dims = []
    s = 0
    stale = 0
    while basis.dim < M.dim and stale <= M.trunc:
        before = basis.dim
        frontier = []
        for r in range(1, min(s, M.trunc - 1) + 1):
            for v in layers.get(s - r, []):
                for x in GENS:
                    w = M.op(x, r).apply(v)
                    if w:
                        frontier.append(w)
        if s == 0:
            frontier = list(layers[0])
        new = []
        while frontier:
            vecs = [basis.reduce_vector(v) for v in frontier]
            vecs = [v for v in vecs if v]
            added = []
            for v in vecs:
                if basis.add_rows([v]):
                    added.append(v)
            new.extend(added)
            frontier = [M.op(x, 0).apply(v) for v in added for x in GENS]
            frontier = [v for v in frontier if v]
        layers[s] = new
        dims.append(basis.dim - before)
        stale = stale + 1 if basis.dim == before else 0
        s += 1
    return GradedDims(_trim(dims)), M.dim - basis.dim


def lowering_gens(M):
    return [LoweringGen(("f", p), p, 0, M.op("f", p)) for p in range(M.trunc)]


def filtration(M, cap=None):
    if not is_highest_weight_cyclic(M):
        raise DomainError("cyclic vector is not a highest-weight vector")
    return hw_filtration(M, lowering_gens(M), cap=cap)


def fusion_graded(M, cap=None):
    """Graded dimensions of the associated graded of the cyclic span of M."""
    if M.cyclic_index is None:
        raise DomainError("module has no cyclic vector")
    if is_highest_weight_cyclic(M):
        filt = hw_filtration(M, lowering_gens(M), cap=cap)
        dims, defect = filt.graded_dims(), filt.defect
    else:
        dims, defect = _generic_graded_dims(M, cap)
    if defect:
        raise VerificationError(f"cyclic vector generates a subspace of codimension {defect}")
    return dims


def fusion_module(M, cap=None, check=True):
    """The associated graded module gr M as an explicit graded module."""
    filt = filtration(M, cap)
    if filt.defect:
        raise VerificationError(f"cyclic vector generates a subspace of codimension {filt.defect}")
    return gr_module(filt, M.trunc, name=f"gr({M.name})")


def gr_module(filt, trunc, name="gr"):
    order = sorted(filt.pieces.items(), key=lambda kv: (-kv[0][0], kv[0][1], kv[0][2]))
    labels, weights, tdeg = [], [], []
    for (w, _, s), labs in order:
        for lab in labs:
            labels.append(lab)
            weights.append(w)
            tdeg.append(s)
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    ng = len(filt.gens)
    F = []
    for gi in range(ng):
        cols = {}
        for i, lab in enumerate(labels):
            tgt = list(lab)
            tgt[gi] += 1
            co = filt.coords.get(tuple(tgt))
            if co:
                cols[i] = {index[l]: c for l, c in co.items()}
        F.append(SparseMatrix(n, n, cols))
    H = {a: {} for a in range(1, trunc)}
    E = {r: {} for r in range(trunc)}

    def h_image(a, i):
        if a == 0:
            return {i: fmpq(weights[i])} if weights[i] else {}
        if a >= trunc:
            return {}
        return H[a][i]

    for i, lab in enumerate(labels):
        if i == 0 and not any(lab):
            for a in H:
                H[a][i] = {}
            for r in E:
                E[r][i] = {}
            continue
        p, plab = filt.parent[lab]
        j = index[plab]
        Fp = F[p]
        for a in range(1, trunc):
            out = Fp.apply(H[a][j])
            if a + p < trunc:
                axpy(out, -2, F[a + p].column(j))
            H[a][i] = out
        for r in range(trunc):
            out = Fp.apply(E[r][j])
            axpy(out, 1, h_image(r + p, j))
            E[r][i] = out
    ops = {("h", 0): SparseMatrix.diagonal(weights)}
    for p in range(trunc):
        ops[("f", p)] = F[p]
        ops[("e", p)] = SparseMatrix(n, n, E[p])
        if p:
            ops[("h", p)] = SparseMatrix(n, n, H[p])
    return ExplicitModule(weights, trunc, labels=labels, tdeg=tdeg, cyclic_index=0,
                          ops=ops, name=name)


def fusion_of(highest_weights, params=None, trunc=None, cap=None):
    """gr of V(k_1)^{z_1} (x) ... (x) V(k_n)^{z_n} as a graded module."""
    return fusion_module(evaluation_tensor(highest_weights, params, trunc, cap), cap)


def fusion_graded_of(highest_weights, params=None, cap=None):
    M = evaluation_tensor(highest_weights, params, cap=cap)
    return hw_filtration(M, lowering_gens(M), cap=cap)


def local_weyl(m, params=None, cap=None):
    """gr of the m-fold tensor product of V(1) evaluation modules."""
    if m < 0:
        raise DomainError("m must be non-negative")
    if m == 0:
        return ExplicitModule([0], 1, labels=[()], tdeg=[0], cyclic_index=0, name="W_loc(0)")
    cap = config.dimension_cap(cap)
    if 2 ** m > cap:
        raise ResourceCapError("local Weyl module", 2 ** m, cap)
    W = fusion_of([1] * m, params, trunc=m, cap=cap)
    W.name = f"W_loc({m})"
    return W


# quotients


class _Piece:
    def __init__(self, idx):
        self.idx = idx
        self.pos = {g: a for a, g in enumerate(idx)}
        self.basis = EchelonBasis(len(idx))
        self.keep = None

    def local(self, vec):
        return {self.pos[i]: c for i, c in vec.items()}

    def finish(self):
        piv = set(self.basis.pivots)
        self.keep = [a for a in range(len(self.idx)) if a not in piv]

    def normal_form(self, vec):
        """Coordinates on the kept positions of vec modulo the piece subspace."""
        red = self.basis.reduce_vector(self.local(vec)) if self.basis.dim else self.local(vec)
        return red


def truncate(M, N):
    """M / (g (x) t^N C[t]) M with the induced action of g (x) C[t]/t^N."""
    if not M.graded:
        raise DomainError("truncate needs a graded module")
    if N < 1:
        raise DomainError("N must be at least 1")
    groups = {}
    for i in range(M.dim):
        groups.setdefault((M.weights[i], M.tdeg[i]), []).append(i)
    pieces = {key: _Piece(idx) for key, idx in groups.items()}
    key_of = {i: (M.weights[i], M.tdeg[i]) for i in range(M.dim)}
    pending = {}
    for r in range(N, M.trunc):
        for x in GENS:
            for j, col in M.op(x, r).cols.items():
                i0 = next(iter(col))
                pending.setdefault(key_of[i0], []).append(col)
    for key, vecs in pending.items():
        P = pieces[key]
        P.basis.add_rows([P.local(v) for v in vecs])
    for P in pieces.values():
        P.finish()
    # quotient basis
    qindex = {}
    weights, tdeg, labels = [], [], []
    for key in sorted(pieces, key=lambda k: (-k[0], k[1])):
        P = pieces[key]
        for a in P.keep:
            g = P.idx[a]
            qindex[g] = len(weights)
            weights.append(M.weights[g])
            tdeg.append(M.tdeg[g])
            labels.append(M.labels[g])
    n = len(weights)

    def project(vec):
        if not vec:
            return {}
        P = pieces[key_of[next(iter(vec))]]
        red = P.normal_form(vec)
        return {qindex[P.idx[a]]: c for a, c in red.items()}

    for key, P in pieces.items():
        if not P.basis.dim:
            continue
        rows = P.basis.rows
        for a in range(P.basis.dim):
            vec = {P.idx[b]: rows[a, b] for b in range(len(P.idx)) if rows[a, b] != 0}
            for x, r in M.generators():
                if project(M.op(x, r).apply(vec)):
                    raise VerificationError("truncation subspace is not a submodule")
    qlist = sorted(qindex, key=qindex.get)

    def factory(x, r):
        A = M.op(x, r)
        return SparseMatrix(n, n, {qindex[g]: project(A.column(g)) for g in qlist})

    cyc = qindex.get(M.cyclic_index) if M.cyclic_index is not None else None
    out = ExplicitModule(weights, N, labels=labels, tdeg=tdeg, cyclic_index=cyc,
                         factory=factory, name=f"{M.name}/t^{N}")
    out.quotient_of = M
    out.kernel_dim = M.dim - n
    out.project = project
    out.qindex = qindex
    return out


# relations


def lowering_words(r, s):
    """Exponent vectors (b_0, ..., b_s) with sum r and weighted sum s."""
    out = []

    def rec(p, rem_r, rem_s, pref):
        if p > s:
            if rem_r == 0 and rem_s == 0:
                out.append(tuple(pref))
            return
        top = rem_r if p == 0 else min(rem_r, rem_s // p)
        for b in range(top + 1):
            rec(p + 1, rem_r - b, rem_s - p * b, pref + [b])

    rec(0, r, s, [])
    return out


def _power_apply(M, x, p, e, vec, divided):
    A = M.op(x, p)
    for _ in range(e):
        vec = A.apply(vec)
        if not vec:
            return {}
    if divided and e > 1:
        f = fmpq(1, math.factorial(e))
        vec = {i: f * c for i, c in vec.items()}
    return vec


def lowering_apply(M, r, s, vec, divided=True):
    """x(r,s) applied to vec, with divided powers (f t^p)^(b) = (f t^p)^b / b!."""
    out = {}
    for b in lowering_words(r, s):
        w = vec
        for p, e in enumerate(b):
            if e:
                w = _power_apply(M, "f", p, e, w, divided)
                if not w:
                    break
        if w:
            axpy(out, 1, w)
    return out


def lowering_operator(M, r, s, divided=True):
    n = M.dim
    return SparseMatrix(n, n, {i: lowering_apply(M, r, s, {i: fmpq(1)}, divided) for i in range(n)})


def garland_lhs(M, r, s, vec):
    """(e t)^(s) (f)^(s+r) vec."""
    w = _power_apply(M, "f", 0, s + r, vec, True)
    return _power_apply(M, "e", 1, s, w, True)


@dataclass
class RelationReport:
    k: int
    N: int
    j: int
    checked: int = 0
    garland_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def relation_range(k, N, j):
    """(ell, r, s) with r + s >= 1 + r ell + q + p and r + s <= m."""
    m = k * N + j
    out = []
    for ell in range(1, m + 2):
        q = max(0, (N - ell) * k)
        p = max(0, j - ell)
        for r in range(1, m + 1):
            for s in range(0, m - r + 1):
                if r + s >= 1 + r * ell + q + p:
                    out.append((ell, r, s))
    return out


def check_relations_on(M, k, N, j, report):
    m = k * N + j
    v = M.cyclic_vector()
    for ell, r, s in relation_range(k, N, j):
        report.checked += 1
        if lowering_apply(M, r, s, v):
            report.failures.append(("relation", M.name, ell, r, s))
    report.checked += 1
    if _power_apply(M, "f", 0, m + 1, v, False):
        report.failures.append(("top", M.name, m + 1))
    for r in range(0, m + 1):
        for s in range(0, m - r + 1):
            report.garland_checked += 1
            lhs = garland_lhs(M, r, s, v)
            rhs = lowering_apply(M, r, s, v)
            if s % 2:
                rhs = {i: -c for i, c in rhs.items()}
            if lhs != rhs:
                report.failures.append(("garland", M.name, r, s))


def verify_cv13_relations(k, N, j, cap=None, params=None):
    """The relations x(r,s) v = 0 on the cyclic vector of W(m, N), m = kN + j,
    realized both as a truncated local Weyl module and as a fusion product,
    plus Garland's identity on the same vectors."""
    if not 0 <= j < N:
        raise DomainError("need 0 <= j < N")
    m = k * N + j
    report = RelationReport(k, N, j)
    W = truncate(local_weyl(m, cap=cap), N)
    check_relations_on(W, k, N, j, report)
    F = fusion_of([k] * (N - j) + [k + 1] * j, params, cap=cap)
    check_relations_on(F, k, N, j, report)
    return report


@dataclass
class IndependenceReport:
    k: int
    N: int
    j: int
    param_sets: list
    graded: list
    weight_graded: list

    @property
    def ok(self):
        return (all(g == self.graded[0] for g in self.graded) and
                all(w == self.weight_graded[0] for w in self.weight_graded))


def parameter_sets(n, seed=0):
    """Integers, negative integers, and seeded random rationals."""
    import random
    rng = random.Random(seed)
    rats = []
    seen = set()
    while len(rats) < n:
        q = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        if q not in seen:
            seen.add(q)
            rats.append(q)
    return [list(range(n)), [-(i + 1) for i in range(n)], rats]


def parameter_independence(k, N, j, param_sets=None, cap=None, seed=0):
    if not 0 <= j < N:
        raise DomainError("need 0 <= j < N")
    ks = [k] * (N - j) + [k + 1] * j
    if param_sets is None:
        param_sets = parameter_sets(N, seed)
    if len(param_sets) < 2 and N > 1:
        raise DomainError("need at least two parameter sets")
    graded, weighted = [], []
    for ps in param_sets:
        filt = fusion_graded_of(ks, ps, cap)
        if filt.defect:
            raise VerificationError(f"fusion with parameters {ps} is not cyclic")
        graded.append(filt.graded_dims())
        weighted.append(filt.weight_graded_dims())
    return IndependenceReport(k, N, j, [[str(z) for z in ps] for ps in param_sets],
                              graded, weighted)
