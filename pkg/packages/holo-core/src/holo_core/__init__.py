"""holo-core: numerical ingredients for realizing Lie groups as automorphism groups of bounded domains."""

__version__ = "0.1.0"
