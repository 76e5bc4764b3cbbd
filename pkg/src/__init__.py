"""Ordered topological approximation spaces: operators, audits and command line."""
