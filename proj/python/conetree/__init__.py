"""Coarse-geometry workbench bindings.

The compiled extension carries the whole API; this package just re-exports
it so `import conetree` works from a wheel.
"""

from ._conetree import *  # noqa: F401,F403
from ._conetree import __version__  # noqa: F401
