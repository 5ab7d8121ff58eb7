"""Kernel selection: compiled extension if built, else the pure-Python twin.

Set TREECERT_PURE_KERNELS=1 to force the pure backend (used by the
benchmark to compare the two implementations).
"""

import os

if os.environ.get("TREECERT_PURE_KERNELS"):
    from . import _poly_py as impl
else:
    try:
        from . import _poly_cy as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _poly_py as impl

BACKEND = impl.BACKEND

poly_trim = impl.poly_trim
poly_add = impl.poly_add
poly_sub = impl.poly_sub
poly_neg = impl.poly_neg
poly_scale = impl.poly_scale
poly_mul = impl.poly_mul
poly_shift = impl.poly_shift
poly_divmod = impl.poly_divmod
poly_gcd = impl.poly_gcd
poly_eval = impl.poly_eval
