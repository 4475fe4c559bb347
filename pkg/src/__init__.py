"""quasishift

Exact symbolic computation in U(gl_d) and S(gl_d): PBW normal ordering,
quasi-derivations and argument-shift verification.
"""

__version__ = "0.1.0"
