"""
Main entry point for the volterraheat CLI
"""
from volterraheat.cli import main

if __name__ == "__main__":
    main()
