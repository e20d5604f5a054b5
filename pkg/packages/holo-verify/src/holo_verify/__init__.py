"""holo-verify: verification suites, counterexample searches and decomposition CLI."""

__version__ = "0.1.0"
