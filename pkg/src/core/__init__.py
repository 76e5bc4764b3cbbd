"""Core operators, audits and document handling for ordered approximation spaces."""
