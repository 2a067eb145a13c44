"""Constants used for property tests."""

# Relative tolerance for comparing frequencies and processor requirements.
REL_TOL = 1e-9

# Offset of the frequencies drawn next to a staircase jump.
JUMP_OFFSET = 1e-9

# Range of the Amdahl parallel fraction of the speedup vectors.
FRACTION_MIN, FRACTION_MAX = 0.01, 0.99

# Max number of processors and tasks.
CORES_MAX = 8
TASKS_MAX = 6

# Number of examples of the suites that check a statement of the model on many instances.
N_EXAMPLES = 1000
