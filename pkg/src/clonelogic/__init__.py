"""First-order logic kernel organized around a substitution clone.

Subpackages cover terms and substitutions, propositional algebras,
formulas with a positional universal binder, Hilbert-style proof
checking, finite-model semantics, and a command line front end.
"""

__version__ = "0.1.0"
