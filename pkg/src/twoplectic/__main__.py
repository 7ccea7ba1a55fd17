from twoplectic.cli import main

main(prog_name="verify")
