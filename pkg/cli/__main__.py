"""
WassVal - CLI Module Entry Point
Allows running valctl via: python -m cli
"""

from cli.valctl import app

if __name__ == "__main__":
    app()
