"""Hot sweep kernels: compiled extension with a pure-Python fallback.

The compiled module is selected at import when available; set
``SYSTEMA_KERNEL=pure`` to force the fallback (the benchmark does this to
compare the two).  Both expose the same functions over the int tables
from :mod:`systema._kernels.tables`:

* ``sweep_laplace_identity``  exhaustive row-set-expansion == determinant
* ``sweep_rank_gap``          exhaustive row-rank vs submatrix-rank scan
* ``det_index``               determinant of one int-encoded matrix
"""

import os

from .tables import OpTables, op_tables

if os.environ.get("SYSTEMA_KERNEL") == "pure":
    from . import _pure as _impl
else:
    try:
        from . import _ext as _impl
    except ImportError:
        from . import _pure as _impl

BACKEND = _impl.BACKEND
det_index = _impl.det_index
sweep_laplace_identity = _impl.sweep_laplace_identity
sweep_rank_gap = _impl.sweep_rank_gap
