"""Backend selection for the binomial-transform kernel.

The compiled extension is used when it imports; ``BERNZETA_PURE_PYTHON=1``
forces the reference implementation.
"""

from __future__ import annotations

import os

from . import _binomial_py

__all__ = ["BinomialTransform", "BACKEND", "available_backends", "get_backend"]

_backends = {"python": _binomial_py.BinomialTransform}

try:
    from . import _binomial_cy
except ImportError:  # extension not built
    pass
else:
    _backends["cython"] = _binomial_cy.BinomialTransform


def available_backends() -> list[str]:
    return sorted(_backends)


def get_backend(name: str):
    try:
        return _backends[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}") from None


if os.environ.get("BERNZETA_PURE_PYTHON", "").strip() not in ("", "0") or "cython" not in _backends:
    BACKEND = "python"
else:
    BACKEND = "cython"

BinomialTransform = _backends[BACKEND]
