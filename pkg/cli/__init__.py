"""
WassVal - CLI Module
Command-line interface using Typer
"""
