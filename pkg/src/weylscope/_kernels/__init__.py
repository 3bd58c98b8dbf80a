"""Backend selection: compiled extension when available, numpy fallback otherwise.

Set WEYLSCOPE_PURE=1 to force the pure backend (useful for benchmarking and
for debugging kernel-level differences).
"""

from __future__ import annotations

import os
import warnings

from . import pure

_FORCED_PURE = os.environ.get("WEYLSCOPE_PURE", "") not in ("", "0")

if _FORCED_PURE:
    kernels = pure
else:
    try:
        from . import _speedups as kernels  # type: ignore[no-redef]
    except ImportError:  # extension not built; stay functional
        warnings.warn(
            "weylscope compiled kernels unavailable; using the slower pure backend",
            RuntimeWarning,
            stacklevel=2,
        )
        kernels = pure

BACKEND_NAME: str = kernels.BACKEND_NAME


def available_backends() -> dict[str, object]:
    """Importable backends by name (used by the benchmark command)."""
    out: dict[str, object] = {"pure": pure}
    try:
        from . import _speedups

        out["cython"] = _speedups
    except ImportError:
        pass
    return out
