"""Python face of the kuzlab spectral-summation laboratory.

Installed wheels carry the extension inside this package; development
builds put a top-level _kuzlab next to the test runner instead, so both
locations are tried.
"""

try:
    from ._kuzlab import *  # noqa: F401,F403
    from ._kuzlab import __doc__  # noqa: F401
except ImportError:
    from _kuzlab import *  # noqa: F401,F403
    from _kuzlab import __doc__  # noqa: F401
