"""Backend selection for the F_p elimination kernel.

The compiled extension is used when importable; set
``LEFSCHETZ_PURE_PYTHON=1`` to force the numpy fallback.
"""

from __future__ import annotations

import os

from . import _modp_py

_compiled = None
if not os.environ.get("LEFSCHETZ_PURE_PYTHON"):
    try:
        from . import _modp as _compiled
    except ImportError:  # extension not built
        _compiled = None

_active = _compiled if _compiled is not None else _modp_py

BACKEND = "cython" if _compiled is not None else "python"
rank_modp = _active.rank_modp
rref_modp = _active.rref_modp


def available_backends() -> dict:
    """Name -> module for every importable backend."""
    out = {"python": _modp_py}
    if _compiled is not None:
        out["cython"] = _compiled
    else:
        try:
            from . import _modp

            out["cython"] = _modp
        except ImportError:
            pass
    return out
