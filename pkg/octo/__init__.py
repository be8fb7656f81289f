"""
OctoGauss core

Cayley-Dickson arithmetic, chart geometry of hypersurfaces in S7 and CP3,
octonionic Gauss maps and the Hopf machinery built on them.
"""

__version__ = "1.0.0"
