import os

# Default degree k of the coefficient field GF(p^k)
DEFAULT_EXT_DEGREE = 1

# Seed for every randomized check (random induced elements, random weight vectors)
DEFAULT_SEED = 0

# Output format of the command line ("text" or "json")
DEFAULT_FORMAT = "text"

# Environment variable overriding the goldens directory
GOLDENS_ENV_VAR = "MODP_SATAKE_GOLDENS"

# Goldens shipped with the repository
DEFAULT_GOLDENS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "goldens")

# Largest finite quotient Z/p^m the cocycle oracle will enumerate
ORACLE_MAX_ORDER = 2 ** 15

# Primes swept by `verify`
VERIFY_PRIMES = (2, 3, 5, 7)

# Primes swept by the Jacquet table
TABLE1_PRIMES = (3, 5)

# Number of samples drawn by randomized checks
EXTENSION_SAMPLES = 10


def goldens_dir() -> str:
    """Directory holding golden JSON files (env var wins over the default)."""
    return os.environ.get(GOLDENS_ENV_VAR) or DEFAULT_GOLDENS_DIR
