"""Select the compiled sign kernels when available, else the pure-Python ones.

Set ``DIRAC_LINFTY_PURE=1`` to force the fallback.
"""

import os

BACKEND = "python"

if not os.environ.get("DIRAC_LINFTY_PURE"):
    try:
        from ._kernels import contract_sign, merge_sign, perm_sign, sort_sign, wedge_dicts
        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import contract_sign, merge_sign, perm_sign, sort_sign, wedge_dicts

__all__ = ["BACKEND", "contract_sign", "merge_sign", "perm_sign", "sort_sign", "wedge_dicts"]
