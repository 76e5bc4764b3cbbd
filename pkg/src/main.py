"""
Application entry point for the gotas command line.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
# Standard library imports
import sys

# Local application imports
from cli.app import main


def run_app() -> None:
    """Run the command line with sys.argv and exit with its status."""
    sys.exit(main(sys.argv[1:]))


if __name__ == '__main__':
    run_app()
