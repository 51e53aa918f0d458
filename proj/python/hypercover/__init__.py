"""Hypercube cover classifier bindings.

The compiled module sits next to this package in a wheel install and on the
build tree's PYTHONPATH during development; support both layouts.
"""

try:
    from ._hypercover import *  # noqa: F401,F403
    from ._hypercover import __doc__  # noqa: F401
except ImportError:
    from _hypercover import *  # noqa: F401,F403
    from _hypercover import __doc__  # noqa: F401
