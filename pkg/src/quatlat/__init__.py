"""quatlat: exact quaternion orders over real cyclotomic fields.

Builds the quaternion algebra (a, b) over K = Q(zeta_n + zeta_n^{-1}),
manipulates its orders as exact integer lattices, maximizes them, enumerates
norm-one unit groups and recognizes their isomorphism types, and replays a
bundled corpus of worked cases from the command line.
"""

from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
