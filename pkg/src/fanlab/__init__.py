"""fanlab: exact-arithmetic analysis of simplicial complete fans.

Wall relations and intersection numbers, special-ray classification,
suspension and cross-polytope structure, induced 4-cycles, gamma vectors
and signatures, and an odd-exponent engine deciding mixed-volume vanishing
over generalized permutohedra.
"""

__version__ = "0.1.0"
