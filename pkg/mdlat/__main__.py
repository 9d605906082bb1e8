from mdlat.cli import main

main()
