"""Finite-satisfiability evidence for arithmetic sentences about shifted rough primes.

Builds, for every finite fragment of the sentence families, a concrete
interpretation of the constants c_1 < ... < c_n in the standard model and
certifies that it satisfies the fragment.
"""

__version__ = "0.1.0"
