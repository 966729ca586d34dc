"""Kernel backend selection.

The compiled Cython kernel is preferred when present; POLPOISSON_BACKEND
forces the choice ("compiled"/"cy" or "pure"/"py").  Both backends expose the
same functions and produce identical results.
"""

import os

_requested = os.environ.get("POLPOISSON_BACKEND", "").strip().lower()

if _requested in ("", "auto"):
    try:
        from . import _speedups as _impl
    except ImportError:
        from . import pure as _impl
elif _requested in ("compiled", "cy", "c"):
    from . import _speedups as _impl
elif _requested in ("pure", "py", "python"):
    from . import pure as _impl
else:
    raise ImportError(
        f"POLPOISSON_BACKEND={_requested!r} is not one of: auto, compiled, pure")

BACKEND = _impl.BACKEND_NAME

add_terms = _impl.add_terms
sub_terms = _impl.sub_terms
neg_terms = _impl.neg_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
partial_terms = _impl.partial_terms
eval_terms = _impl.eval_terms
ordered_terms = _impl.ordered_terms
FloatPoly = _impl.FloatPoly
