"""weylest: consistent estimation on deterministic equidistributed samples.

Submodules
----------
weyl            fractional-part sequences {n*alpha} on (0,1), exact to double
distributions   Gaussian/Cauchy location-scale families and inverse-transform
                sampling of Weyl sequences
estimators      sign-count, CDF-at-a-point, mean, tail-extrema and strong
                fractional estimators of a useful signal
density         Gaussian-kernel density estimation and scale estimators
coin            the coin-toss group {0,1}^N: Bernoulli streams, Cesaro
                estimation, Haar-typicality Monte Carlo, objectivity classifier
harness         experiment runner, built-in reference tables, CSV/markdown
                reports, CLI
acceptance      the acceptance-criteria suite behind `weylest --check`
"""

from ._backend import backend_name
from ._version import __version__

__all__ = ["__version__", "backend_name"]
