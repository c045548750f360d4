"""Backend selection for the hot loops.

The compiled extension is used when it imports; ``SPLITCODE_KERNELS=python``
forces the pure-Python fallback.  Both backends return identical results.
"""
import os

from . import _pykernels

python = _pykernels
compiled = None

if os.environ.get("SPLITCODE_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

backend = compiled if compiled is not None else _pykernels
BACKEND = "cython" if compiled is not None else "python"

coverage_counts = backend.coverage_counts
diff_hill_climb = backend.diff_hill_climb
