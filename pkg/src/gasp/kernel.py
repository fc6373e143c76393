"""Kernel backend selection.

The compiled Cython kernel is used when the extension imported cleanly and
the lowered universe fits in 62 bits; otherwise the pure-Python twin runs.
Set GASP_KERNEL=pure or GASP_KERNEL=compiled to force a backend (forcing
the compiled one fails loudly when it is unavailable).
"""

from __future__ import annotations

import os

from . import _pykernel
from .lowering import LoweredProgram

try:
    from . import _ckernel
except ImportError:
    _ckernel = None

_FORCED = os.environ.get("GASP_KERNEL")
if _FORCED not in (None, "", "pure", "compiled"):
    raise RuntimeError(f"GASP_KERNEL must be 'pure' or 'compiled', not {_FORCED!r}")
if _FORCED == "compiled" and _ckernel is None:
    raise RuntimeError("GASP_KERNEL=compiled but the compiled kernel is not built")


def available_backends() -> tuple[str, ...]:
    return ("pure", "compiled") if _ckernel is not None else ("pure",)


def default_backend() -> str:
    if _FORCED:
        return _FORCED
    return "compiled" if _ckernel is not None else "pure"


def backend_for(lp: LoweredProgram, backend: str | None = None) -> str:
    """Resolve which backend will run for a given lowered program."""
    chosen = backend or default_backend()
    if chosen == "compiled" and (_ckernel is None or lp.n > _ckernel.MAX_ATOMS):
        if backend == "compiled" and _ckernel is not None:
            raise ValueError(
                f"compiled kernel supports at most {_ckernel.MAX_ATOMS} atoms, got {lp.n}"
            )
        return "pure"
    return chosen


def enumerate_masks(lp: LoweredProgram, mode: int, backend: str | None = None) -> list[int]:
    if backend_for(lp, backend) == "compiled":
        return _ckernel.enumerate_masks(lp, mode)
    return _pykernel.enumerate_masks(lp, mode)
