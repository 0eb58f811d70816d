MARGINAL_TOLERANCE = 1e-9
COLUMN_SUM_TOLERANCE = 1e-9
CORRECTION_TOLERANCE = 1e-10
# Singular values below this fraction of the largest count as rank loss.
RANK_TOLERANCE = 1e-8

# Relative size of the supply perturbation used to keep simplex bases nondegenerate.
PERTURBATION = 1e-9
# Consecutive degenerate pivots tolerated under Dantzig's rule before switching to Bland's.
DEGENERATE_STREAK = 50
MAX_PIVOTS = 1_000_000


class ErrorCode:
    NEGATIVE_MARGINALS = "Transport marginals must be nonnegative."
    UNBALANCED_MARGINALS = "Row and column marginals must carry the same total mass."
    NON_FINITE_COST = "Transport costs must be finite."
    SHAPE_MISMATCH = "Cost matrix shape does not match the marginals."
    COLUMN_SUMS_NOT_ONE = "Plan columns must each sum to one to form convex combinations."
    NOT_SQUARE = "The second-order correction needs a square transport plan."
    COVARIANCE_MATCH_FAILED = "No ensemble-space correction reproduces the posterior covariance."
    PIVOT_LIMIT = "Transportation simplex exceeded its pivot limit."
