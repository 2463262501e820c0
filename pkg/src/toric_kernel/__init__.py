"""toric-kernel: exact computational toric geometry.

Cones, fans, lattice polytopes, toric ideals, divisor class theory,
Cox-ring data and sparse root counts, all in exact integer/rational
arithmetic, plus the ``toric-kernel`` command line tool.
"""

__version__ = "0.1.0"
