"""Default numerical tolerances.

Every check accepts these as keyword arguments; the values here are the
library-wide defaults.
"""

EPS_HERM = 1e-10        # relative Hermitian-symmetry validation
EPS_UNIT = 1e-10        # unitarity and operator-identity residuals (Frobenius)
EPS_RECON = 1e-10       # relative reconstruction error of factorizations
EPS_PSD = 1e-10         # absolute clamp window for PSD square roots
EPS_POLY = 1e-9         # polynomial / block-form residuals (scaled by n for products)
EPS_EIG = 1e-9          # eigenvalue matching in spectral checks

SIGMA_LO = 1e-7         # singular values at or below count as exactly 0
SIGMA_HI = 1.0 - 1e-7   # singular values at or above count as exactly 1

TRIM_TOL = 1e-14        # polynomial trailing-coefficient trim threshold
DEGENERACY_CUTOFF = 1e-8  # |sin(lambda)| below this: spectral projectors undefined
