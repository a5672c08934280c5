"""Exact evaluation of A-hypergeometric polynomials by the difference holonomic gradient method."""
from ahg_hgm.settings import VERSION as __version__
