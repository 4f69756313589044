"""Numerical kernels with a compiled fast path and a NumPy fallback.

The three batch kernels below dominate the runtime of the verification
harness (they are evaluated over 10^4..10^5 sphere nodes):

- ``shadow_halfsum_batch``: facet half-sum shadow areas,
- ``illuminated_batch``: cosine-weighted and plain moments of lit facets,
- ``contains_batch``: half-space membership for Monte Carlo volumes.

At import time the compiled Cython module is preferred when present;
otherwise the pure-NumPy implementation is used. The environment variable
``SHADOWCALC_KERNELS`` overrides the choice:

- ``auto`` (default): each kernel picks its measured winner — the compiled
  loops for ``illuminated_batch`` and ``contains_batch`` (branch-heavy,
  where NumPy pays for temporaries and multiple passes) and BLAS-backed
  NumPy for the pure-matmul ``shadow_halfsum_batch``; without the
  extension, all three fall back to NumPy;
- ``compiled``: force the extension for all kernels, raise if missing;
- ``numpy``: force the fallback for all kernels (benchmarking, debugging).

Both backends implement the same contract and agree to floating-point
roundoff; ``BACKEND`` records which module is active (``auto`` reports
``compiled`` whenever the extension loaded). ``benchmarks/bench_kernels.py``
reproduces the measurement behind the ``auto`` routing.
"""

from __future__ import annotations

import os

from . import _numpy

_choice = os.environ.get("SHADOWCALC_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "compiled", "numpy"):
    raise ValueError(
        f"SHADOWCALC_KERNELS={_choice!r}: expected auto, compiled, or numpy")

_impl = None
if _choice in ("auto", "compiled"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "SHADOWCALC_KERNELS=compiled but the shadowcalc._speedups "
                "extension is not built; reinstall the package or use "
                "SHADOWCALC_KERNELS=numpy")
        _impl = None

if _impl is None:
    BACKEND = "numpy"
    shadow_halfsum_batch = _numpy.shadow_halfsum_batch
    illuminated_batch = _numpy.illuminated_batch
    contains_batch = _numpy.contains_batch
else:
    BACKEND = "compiled"
    illuminated_batch = _impl.illuminated_batch
    contains_batch = _impl.contains_batch
    if _choice == "auto":
        shadow_halfsum_batch = _numpy.shadow_halfsum_batch
    else:
        shadow_halfsum_batch = _impl.shadow_halfsum_batch

__all__ = [
    "BACKEND",
    "shadow_halfsum_batch",
    "illuminated_batch",
    "contains_batch",
]
