"""Finite-algebra relational workbench (python bindings)."""

try:
    from malrel._malrel import *  # noqa: F401,F403
    from malrel._malrel import __doc__  # noqa: F401
except ImportError:  # in-tree build: extension sits next to the package
    from _malrel import *  # noqa: F401,F403
    from _malrel import __doc__  # noqa: F401
