"""Secrelay command-line entry point."""

from secrelay.main import main

if __name__ == '__main__':
    main()
