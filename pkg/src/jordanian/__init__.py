"""Exact symbolic engine for contracting standard q-deformed quantum-algebra
structures (R-matrices, twists, T-matrices) to their Jordanian h-deformed
counterparts, certifying every identity by exact arithmetic."""

__version__ = "0.1.0"
