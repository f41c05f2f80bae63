# config/settings.py - Main configuration file

import os
from pathlib import Path

# Project paths
PROJECT_ROOT = Path(__file__).parent.parent
OUTPUT_DIR = PROJECT_ROOT / "output"
RESULTS_DIR = OUTPUT_DIR / "test_results"
LOGS_DIR = PROJECT_ROOT / "logs"
CONFIG_DIR = PROJECT_ROOT / "config"

SCHEMA_PATH = CONFIG_DIR / "schema.json"
PRESENTATION_SCHEMA_PATH = CONFIG_DIR / "presentation_schema.json"
WORKBENCH_SCHEMA_PATH = CONFIG_DIR / "workbench_schema.json"
DEFAULT_WORKBENCH_PATH = CONFIG_DIR / "workbench.json"

# Ensure directories exist
OUTPUT_DIR.mkdir(exist_ok=True)
LOGS_DIR.mkdir(exist_ok=True)

# Only environment hook: default parameter declaration, e.g. "q" or "p;q=p^2"
PARAMS_ENV_VAR = "QWORKBENCH_PARAMS"
DEFAULT_PARAMS = os.environ.get(PARAMS_ENV_VAR, "q")

# Rewrite engine settings
ENGINE_CONFIG = {
    "overlap_full_check_max_gens": 12,  # exhaustive associativity check up to this many generators
    "overlap_sample_triples": 64,  # sampled triples above the ceiling
    "random_seed": 20240601,
}

# H-prime pattern combinatorics
PATTERN_CONFIG = {
    "exhaustive_ceiling": 5,  # 2^25 subsets at n=5
    "parametrization_ceiling": 4,
    "rank_count_ceiling": 6,
    "workers": 1,  # >1 splits the bitmask range over processes
    "chunk_size": 1 << 16,
}

# Default algebra for the command line
ALGEBRA_CONFIG = {
    "preset": "quantum-matrices",
    "n": 2,
    "q": "generic",
    "grading": None,  # None = the preset's own grading
}

# Output settings
OUTPUT_CONFIG = {
    "format": "text",
    "validate_schema": True,
    "indent": 2,
}

# Logging configuration
LOGGING_CONFIG = {
    "level": "INFO",
    "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    "file": LOGS_DIR / "workbench.log",
}
