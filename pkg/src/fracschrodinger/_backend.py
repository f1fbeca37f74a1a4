"""Select the compiled kernel core, falling back to numpy."""

import os

from . import _core_py

core = _core_py
NAME = "python"

if not os.environ.get("FRACSCHRODINGER_PURE_PYTHON"):
    try:
        from . import _core as core  # noqa: F811

        NAME = "compiled"
    except ImportError:
        pass

taylor_batch = core.taylor_batch
ray_level = core.ray_level

__all__ = ["NAME", "core", "taylor_batch", "ray_level"]
