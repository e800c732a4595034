from arrcover.cli import main

main()
