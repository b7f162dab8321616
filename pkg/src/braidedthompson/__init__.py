"""Exact computation in braided Thompson groups.

The package is organised in layers:

* ``braid``       braid words, word-problem engines, strand surgery
* ``forest``      binary trees and forests with address-based leaves
* ``diagram``     tree/braid/tree group elements and their normal forms
* ``characters``  abelian invariants and finiteness decision procedures
* ``simplicial``  simplicial complexes, matching complexes, integer homology
* ``steinfarley`` vertices, links and cube patches of the ambient complex
"""

from .braid import BraidWord, Permutation, full_twist, half_twist
from .diagram import Diagram, x_gen
from .forest import Forest, Tree

__all__ = [
    "BraidWord",
    "Permutation",
    "half_twist",
    "full_twist",
    "Tree",
    "Forest",
    "Diagram",
    "x_gen",
]

__version__ = "0.1.0"
