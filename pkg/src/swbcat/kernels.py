"""Backend selection for the hot inner loops.

The compiled extension is used when it was built; otherwise the pure-Python
module with identical semantics is used.  ``use("python")`` or
``use("compiled")`` switches explicitly (the benchmark does this).
"""
from __future__ import annotations

from . import _pykernels

try:  # pragma: no cover - depends on the build
    from . import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

_NAMES = ("component_labels", "gf2_rank", "reduce_turnbacks", "slide_state", "neighbour_keys")

BACKEND = ""


def available() -> list[str]:
    return ["python"] + (["compiled"] if _ckernels is not None else [])


def use(name: str) -> None:
    """Route the kernel functions to the named backend."""
    global BACKEND
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        mod = _ckernels
    elif name == "python":
        mod = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    for fn in _NAMES:
        if hasattr(mod, fn):
            globals()[fn] = getattr(mod, fn)
    BACKEND = name


use("compiled" if _ckernels is not None else "python")
