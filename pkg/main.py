"""
Main entry point for building component graphs and verifying their identities.
"""

import sys

from src.cli import main

if __name__ == '__main__':
    sys.exit(main())
