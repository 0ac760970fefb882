"""Exact-arithmetic Maurer-Cartan toolkit.

Subpackages cover: the endpoint-preserving ordinal category and finite
simplicial machinery, Dold-Kan style (de)normalization and homotopy
invariants, Maurer-Cartan enumeration for quasi-comonoids and for
monad/comonad enrichments, nilpotent differential graded Lie algebras with
gauge actions and the exponential denormalization equivalence, cosimplicial
simplicial groups and classifying-space correspondences, and the
bar/cobar route to A-infinity structure extraction.
"""

__version__ = "0.1.0"
