"""haarsym: exact Haar-measure integration over the classical compact groups,
uniform sampling of the Cartan-embedded compact symmetric spaces, and Monte
Carlo verification of the Gaussian limits of linear trace statistics on them.
"""

__version__ = "0.1.0"
