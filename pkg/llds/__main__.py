"""
llds main entry point
"""

from llds.cli.main import cli

if __name__ == "__main__":
    cli()
