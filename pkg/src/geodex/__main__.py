from geodex.cli import main

main()
