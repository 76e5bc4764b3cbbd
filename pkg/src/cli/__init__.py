"""Command-line interface for the `gotas` console script."""
