"""CLI sub-commands for ``holo``."""
