"""Structure-tensor engine for finite-dimensional Hopf *-algebras and finite
compact quantum groups: axiom verification, Haar states, corepresentation
theory, the discrete dual, and rewriting for free *-algebra presentations."""

__version__ = "0.1.0"
