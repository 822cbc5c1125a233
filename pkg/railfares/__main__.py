from railfares.cli.main import main

main()
