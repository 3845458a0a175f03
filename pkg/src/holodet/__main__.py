from holodet.cli import main

main()
