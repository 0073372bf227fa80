# Configuration file for wealthmaps

# Measurement Protocol (desk scale; see config_full_scale.py for N=1e5)
N_AGENTS = 10_000           # System size
INIT_LO = 1.0               # Initial wealth drawn uniformly from (INIT_LO, INIT_HI)
INIT_HI = 100.0
TRANSIENT = 10_000          # Iterations discarded before measuring
MEASURE_ITERS = 100         # Post-transient iterations averaged per realization
REALIZATIONS = 10           # Independently seeded initial conditions
BASE_SEED = 20071213
SNAPSHOT_ONLY = False       # True: scalar stats from the t=TRANSIENT snapshot only
WORKERS = 1                 # Process pool size for realizations / sweep cells

# Default Parameters (Boltzmann-Gibbs regime)
DEFAULT_A = 0.6             # Environmental pressure
DEFAULT_R = 4.0             # Growth capacity

# Uniform Map / Bifurcation Scan
BIFURCATION_A = 0.0
BIFURCATION_TRANSIENT = 1_000
BIFURCATE_TRANSIENT = 10_000  # bifurcate subcommand; orbits within ~0.02 of r = e^2 need longer
BIFURCATION_KEPT = 256
MAX_PERIOD = 64
PERIOD_RTOL = 1e-9
PERIOD_ATOL = 1e-12         # Absolute floor so orbits collapsed to 0 read as period 1
FLIP_XTOL = 1e-10

# Statistics
COLLAPSE_THRESHOLD = 1e-6   # Mean wealth below this is reported COLLAPSED
KS_ACCEPT = 0.08            # Largest KS distance a fit may have to be accepted
CLASSIFY_MARGIN = 0.01      # Required KS gap between the two candidate laws
PARETO_QUANTILE = 0.95      # Default Pareto xmin: top 5% of the sample
EXPONENTIAL_XMIN = 0.0      # Whole-sample exponential MLE
CLASSIFY_EXPONENTIAL_XMIN = 2.0  # Exponential tail compared against the Pareto tail
EXCHANGE_EXPONENTIAL_XMIN = 0.0  # Exchange wealth is in units of the endowment
MIN_TAIL = 10               # Fewest tail samples a fit accepts
HISTOGRAM_BINS = 50

# Exchange Models
INITIAL_ENDOWMENT = 1.0
OMEGA_LO = 0.1              # Heterogeneous omega_i ~ Uniform(OMEGA_LO, OMEGA_HI)
OMEGA_HI = 0.9
TRANSACTION_CHUNK = 1 << 18 # Random draws generated per block
EXCHANGE_TRANSACTIONS = 10_000_000

# Instability Experiment
PERTURBATION_AMPLITUDE = 1e-3
INSTABILITY_STEPS = 500
INSTABILITY_AGENTS = 1_000

# Output
FLOAT_FORMAT = '%.17g'
OUTPUT_FOLDER = 'output'
OUTPUT_DIR_ENV = 'WEALTHMAPS_OUT_DIR'

# Logging Configuration
LOG_LEVEL = 'INFO'   # DEBUG, INFO, WARNING, ERROR, CRITICAL
LOG_DIR = 'logs'
