from fusionlab.cli import main_entry

main_entry()
