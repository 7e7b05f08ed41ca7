"""C2-effective spectral sequence for 2-completed C2-equivariant connective
real K-theory: coefficient rings, the E1 algebra and d1, the E2 page, homotopy
assembly, charts and a command line."""

__version__ = "0.1.0"
