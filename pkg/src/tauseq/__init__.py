"""Exact-arithmetic toolkit for torsion classes and tau-exceptional sequences.

Everything is computed over the rationals or a prime field, never floats.
The main entry points are :func:`tauseq.quiver.build_algebra`,
:class:`tauseq.universe.ModuleUniverse` and the mutation machinery in
:mod:`tauseq.sequences`.
"""

from tauseq.fields import FieldSpec
from tauseq.quiver import Quiver, build_algebra, opposite

__all__ = ["FieldSpec", "Quiver", "build_algebra", "opposite"]
__version__ = "0.1.0"
