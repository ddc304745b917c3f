"""Bott-Samelson atlases, standard Poisson structures, and total positivity.

Exact-arithmetic constructions on the homogeneous spaces G/B(v) and G/N(v)
for G = SL(n) and Sp(4): chart enumeration and parametrization, symbolic
Poisson brackets, symmetric Poisson CGL presentations, torus-leaf
classification, and positivity certification on the totally positive part.
"""

__version__ = "0.1.0"
