"""
Configuration settings for mrdkit
"""
from pathlib import Path

# Base paths
BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"  # Default location for written code/certificate files

# Arithmetic limits
# q^n must fit a signed 64-bit integer so element encodings stay exact
MAX_QN = 2 ** 63

# Enumeration caps - exhaustive work beyond these raises TooLarge
SCAN_CAP = 2 ** 24            # field scans (irreducible polys, normal basis, primitive element)
CODEWORD_CAP = 2 ** 24        # projective codewords ranked by min_distance
GROUP_PAIR_CAP = 2 ** 22      # |GL_m(q)| * |GL_n(q)| for brute-force equivalences
SQRT_SCAN_LIMIT = 2 ** 16     # sqrt_fq scans F_q below this order
SYMMETRY_SCAN_CAP = 2 ** 12   # matrices evaluated by the Gabidulin (i, h, j) scan
ISOMETRY_PAIR_CAP = 2 ** 12   # (X, Y) pairs in the exhaustive isometry characterization

# Global work bound when neither --max-work nor the environment variable is set
MAX_WORK = CODEWORD_CAP
MAX_WORK_ENV = "MRDKIT_MAX_WORK"

# Field elements sampled by verify-theorems checks that quantify over K
SAMPLE_ELEMENTS_CAP = 2 ** 12

# Seed for the sampled checks in verify-theorems
RANDOM_SEED = 20160601

# Exit codes (see `mrdkit --help`)
EXIT_CODES = {
    "pass": 0,
    "impossible": 1,    # mathematically impossible request, or a check answered "no"
    "fail": 1,
    "usage": 2,         # bad arguments, unreadable or malformed files
    "cap": 3,           # resource cap hit (TooLarge)
}

# Output settings
DEFAULT_FORMAT = "text"
JSON_INDENT = 2

# Status display names
STATUS_NAMES = {
    "pass": "PASS",
    "fail": "FAIL",
    "skipped": "SKIPPED",
}
