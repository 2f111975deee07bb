"""Backend selection for the hot enumeration kernel.

The candidate filter behind ``enumerate_consistent`` dominates runtime, so it
exists twice: a Cython extension (``_kernels_cy``) and a pure-Python twin
(``_kernels_py``).  The compiled one is picked at import when built; results
are identical either way.  Set ``MOORELIMIT_BACKEND=python`` or ``=cython`` to
force a backend (the latter raises if the extension is missing).
"""

from __future__ import annotations

import os

_requested = os.environ.get("MOORELIMIT_BACKEND", "").strip().lower()

if _requested == "python":
    from . import _kernels_py as _impl

    BACKEND = "python"
elif _requested == "cython":
    from . import _kernels_cy as _impl  # type: ignore[attr-defined]

    BACKEND = "cython"
elif _requested == "":
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"
else:
    raise RuntimeError(f"MOORELIMIT_BACKEND must be 'python' or 'cython', got {_requested!r}")

consistent_machine_encodings = _impl.consistent_machine_encodings
