"""hopfcyc: exact symbolic Hopf algebras and Hopf-cyclic cohomology certification."""

__version__ = "0.1.0"

from .ncpoly import NCPoly, TensorElem, gen, word_str
from .scalars import QQ, QQ_Q, Q_GEN, RatFunc

__all__ = [
    "NCPoly",
    "TensorElem",
    "gen",
    "word_str",
    "QQ",
    "QQ_Q",
    "Q_GEN",
    "RatFunc",
    "__version__",
]
