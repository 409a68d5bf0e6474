"""Combinatorics of modular branching for affine Hecke algebras of type A."""

from .multiseg import Convention, DomainError, Multisegment, Segment
from .multipartition import MultiPartition, Multicharge, Node

__all__ = ["Convention", "DomainError", "Multisegment", "Segment", "MultiPartition", "Multicharge", "Node"]
__version__ = "0.1.0"
