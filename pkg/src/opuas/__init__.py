"""opuas: exact computations in the operad of unital associative algebras.

Everything is exact rational arithmetic.  The package computes truncation
ideals, operadic ideal closures, symmetric-group character decompositions,
generating degrees and codimension series, and re-derives the classification
of quotient operads of GK-dimension at most 6 together with the matching
PI-algebra invariants.
"""

__version__ = "0.1.0"
