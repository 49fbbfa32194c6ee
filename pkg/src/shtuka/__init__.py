"""Exact arithmetic for genus-zero rank-one shtuka functions, the special
functions and periods attached to them, and twisted L-series, over F_q(x)
with an arbitrary monic irreducible chosen at infinity.

Layers, bottom up: ff (finite fields), poly (polynomials, fractions,
multivariate coefficients), skew (twisted polynomial rings), series
(precision-tracked Laurent series in the uniformizer root u), carlitz
(the F_q[theta] special case and Gauss sums), genus0 (general contexts,
ideals, shtuka data), lseries (L-series, exponentials, log-algebraicity).
"""

from .ff import Field, FieldElem, make_field, frobenius

__all__ = ["Field", "FieldElem", "make_field", "frobenius"]
