"""Selects the compiled numerical core at import, falling back to NumPy.

Set ``ANTKINETICS_PURE=1`` in the environment to force the pure NumPy
implementation even when the extension is built (used by the parity tests
and the benchmark).
"""

from __future__ import annotations

import os

from . import _core_py

if os.environ.get("ANTKINETICS_PURE", "").strip() not in ("", "0"):
    _impl = _core_py
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _core_py

COMPILED = bool(getattr(_impl, "COMPILED", False))

bessel_k0 = _impl.bessel_k0
bessel_k1 = _impl.bessel_k1
bessel_k0_many = _impl.bessel_k0_many
bessel_k1_many = _impl.bessel_k1_many
pair_torques = _impl.pair_torques
shifted_values = _impl.shifted_values
fv_rhs_core = _impl.fv_rhs_core


def backend_name() -> str:
    return "compiled" if COMPILED else "numpy"
