"""Combinatorial operads: labeled trees, free operads, pushouts and surface instances."""

from .bounds import Bounds
from .operad import FreeOperad, OperadInstance, TreeOperad, check_axioms
from .pushout import UNDECIDED, PushoutSystem, equal_in_pushout, normal_form, normalize
from .trees import TRIVIAL, Leaf, Node, canonicalize

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "FreeOperad",
    "Leaf",
    "Node",
    "OperadInstance",
    "PushoutSystem",
    "TRIVIAL",
    "TreeOperad",
    "UNDECIDED",
    "canonicalize",
    "check_axioms",
    "equal_in_pushout",
    "normal_form",
    "normalize",
    "__version__",
]
