"""treecert: exact-arithmetic certificates for group actions on trees.

Subpackages cover the rational-function algebra, 2x2 matrix words, the
degree valuation and its Bruhat-Tits tree, the explicit genus-2 surface
representation and its certificates, finite coset-tree and index-chain
machinery, tree-count planning for RAAGs from graph colorings, and
word-level certificates for an HNN and an amalgam acting on products
of trees.  The `treecert` CLI fronts all of it.
"""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
