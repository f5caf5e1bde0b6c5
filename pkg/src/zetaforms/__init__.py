"""zetaforms: exact-arithmetic and high-precision engine for linear forms in zeta values.

Subpackages cover: exact integer/rational utilities (number_core),
arbitrary-precision numerics and step-function measures (analysis_core),
generalized hypergeometric evaluation and classical summation oracles
(hypergeom), the classical rational approximations to zeta(2) and zeta(3)
(apery), well-poised constructions for odd zeta values (wellpoised), the
q-zeta(2) pipeline (qzeta), the zeta(2) irrationality-measure pipeline
(zeta2_measure), fractional-part bounds for powers of 3/2, 4/3, 5/4
(powfrac), Legendre-transform integer sequences (schmidt), and L-values
of the conductor-32 elliptic curve (lseries).
"""

__version__ = "0.1.0"
