"""Numeric tolerances and defaults shared across the package.

Reference quantities are closed-form; the tolerances only absorb floating-point error.
"""

# states marked normalized
NORMALIZATION_TOL = 1e-12
# entrywise A == A^dagger
HERMITIAN_TOL = 1e-12
# input accepted by the eigen-solver
EIGEN_HERMITIAN_TOL = 1e-10
# min eigenvalue >= -POSITIVITY_TOL
POSITIVITY_TOL = 1e-10
# Frobenius norm of sum(elements) - I
COMPLETENESS_TOL = 1e-10
# probabilities in [-tol, 0) are clamped to 0, below raise
PROBABILITY_CLAMP_TOL = 1e-12
DISTRIBUTION_SUM_TOL = 1e-10
# eigenvalues above this count towards the rank
RANK_TOL = 1e-9
# concurrence at or below this means product state
PRODUCT_TOL = 1e-9

REGULARIZATION_EPS = 1e-9
PRODUCT_FEASIBILITY_TOL = 1e-6
PENALTY_WEIGHT = 10.0
# slack element appended by the product decoder only up to this trace
MAX_SLACK_TRACE = 1.0

DEFAULT_MAX_DEPTH = 6
PRINT_DIGITS = 9
