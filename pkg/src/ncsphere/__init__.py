"""Numerical laboratory for noncommutative 3-spheres.

Subpackages:
    theta     Jacobi theta functions, modular lambda, sixteen relations
    moduli    trigonometric invariants, classification, flow, dualities
    variety   relation matrices, minors, characteristic varieties, sigma
    elliptic  elliptic triples, theta parametrization, periods, Jacobian data
    nctorus   noncommutative-torus elements and the Sklyanin representation
    pairing   Hochschild cycle and the cyclic-cocycle pairing
    cli       command-line front door
"""

__version__ = "0.1.0"
