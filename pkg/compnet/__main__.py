from compnet.src.cli import main

main(prog_name='compnet')
