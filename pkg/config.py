"""OGC configuration: paths, budgets, and engine constants."""

import os

VERSION = "0.3.0"
APP_NAME = "OGC - Orthogonal Grassmann Codes"
SCHEMA_VERSION = 1

# Enumeration cache (SQLite)
CACHE_DIR = os.environ.get("OGC_CACHE") or os.path.expanduser("~/.ogc-cache")
CACHE_PATH = os.path.join(CACHE_DIR, "ogc.db")

# Field limits
MAX_FIELD_ORDER = 2 ** 16

# Budgets (all overridable from the command line)
MESSAGE_BUDGET = 2 ** 30        # codewords enumerated by the Gray engine
HYPERPLANE_BUDGET = 2 ** 30     # functionals enumerated by the hyperplane path
QUADRIC_BUDGET = 2 ** 24        # quadric coefficient vectors in the intersection lab
CLIQUE_VERTEX_CAP = 5000        # generators in the exact spread search
DELTA_POINT_CAP = 10 ** 6       # points of an enumerated Grassmannian
MAX_HADAMARD_R = 12             # 4096 x 4096 sign matrices
TRIPLE_BUDGET = 10 ** 8         # point pairs scanned by the projective cap check

# Gray-code engine
GRAY_BLOCK_MESSAGES = 2 ** 16   # codewords precomputed per low block
PREFIX_BLOCKS = 256             # high blocks scanned for an upper bound
RANDOM_PROBES = 2 ** 14         # random messages scanned for an upper bound
DEFAULT_SEED = 20100401

# Intersection lab
QUADRIC_CHUNK = 2 ** 15         # coefficient vectors evaluated per numpy batch
FORMULA_INSTANCES = 100         # random (M, B) pairs for the counting formula

# Concurrency
DEFAULT_THREADS = 1
