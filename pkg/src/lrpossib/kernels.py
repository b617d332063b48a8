"""Backend selection for the batch kernels.

The compiled extension is preferred when importable; the numpy fallback
gives identical results, just slower.  Set LRPOSSIB_BACKEND=python or
=cython to force one (forcing cython raises if the extension is absent,
so tests can prove which code ran).
"""
import os

_forced = os.environ.get("LRPOSSIB_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _gridcore_py as _impl

    BACKEND = "python"
elif _forced == "cython":
    from . import _gridcore as _impl  # type: ignore[attr-defined]

    BACKEND = "cython"
else:
    try:
        from . import _gridcore as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _gridcore_py as _impl

        BACKEND = "python"

binom_loglik = _impl.binom_loglik
poisson_loglik = _impl.poisson_loglik
normal_loglik = _impl.normal_loglik
trinom_loglik = _impl.trinom_loglik
max_argmax = _impl.max_argmax
