KERNEL_TOL = 1e-10
SUMMABILITY_TOL = 1e-12
KERNEL_MAX_CUTOFF = 100_000  # per coordinate - caps kernel series length when the tail bound decays slowly
VALIDATED_X_RANGE = 10.0  # |x_j| <= 10
VALIDATED_MAX_DEGREE = 200
QUADRATURE_NODE_TOL = 1e-13  # Newton correction relative to max(1, |x_i|)
QUADRATURE_MAX_NEWTON = 4
CRAMER_CONSTANT = 1.086435  # |H_k(x)| <= CRAMER_CONSTANT * exp(x^2 / 4) for all k
COEFFICIENT_DROP_THRESHOLD = 1e-300

DEFAULT_MASTER_SEED = 42
DEFAULT_REPLICATIONS = 10_000
DEFAULT_QUADRATURE_ORDER = 60
THREADS_ENV_VAR = 'HERMITE_MC_THREADS'

# Dyadic s-grid used by the tractability diagnostics (2^4 .. 2^20)
DIAGNOSTIC_S_GRID = [2 ** p for p in range(4, 21)]
HEURISTIC_SETTLE_TOL = 0.01  # last three dyadic values within 1%

CSV_FLOAT_DIGITS = 12
RESULTS_STORAGE_NAME = 'experiment_results.json'
LOG_LEVEL = 'WARNING'
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
