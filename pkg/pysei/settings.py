import os


class Settings:
    #
    # GENERAL
    #

    BASE_DIR: str = os.path.dirname(os.path.realpath(__file__))
    # Run in debug mode, which is more verbose than normal
    DEBUG: bool = False
    # Run in dev mode, a firehorse of information
    DEV: bool = False

    #
    # LOGGING
    #

    # Log mode, 'a'ppend or over'w'rite
    LOG_MODE: str = "a"

    # Standard logging format
    LOG_FORMAT_INFO: str = "%(asctime)s|%(levelname)s|%(message)s"

    # Debugging logging formart
    LOG_FORMAT_DEBUG: str = (
        "%(asctime)s|%(levelname)s|%(process)d|%(funcName)s|%(message)s"
    )

    # Dev logging format
    LOG_FORMAT_DEV: str = (
        "%(asctime)s|%(levelname)s|%(process)d|%(funcName)s|%(lineno)d|"
        "%(message)s"
    )

    # Dev logging level - custom logging level for more granularity
    LOG_DEV_LEVEL: int = 5

    # Logging levels
    LOG_INFO = "info"
    LOG_DEBUG = "debug"
    LOG_DEV = "dev"
    LOG_WARNING = "warning"

    # Log file
    LOG_DIR: str = os.path.join(BASE_DIR, "pysei.log")

    #
    # Stage solver
    #

    # Relative tolerance on successive stage iterates (inf-norm)
    FP_TOL: float = 1e-13
    # Fixed-point iteration cap per step
    MAX_ITERS: int = 200
    # Absolute floor for the relative stopping test
    FP_ABS_FLOOR: float = 1e-15
    # Kernels kept per stepper, oldest evicted first
    KERNEL_CACHE_SIZE: int = 64

    #
    # Condition checkers
    #

    # Pass threshold for scalar (RK) conditions
    SCALAR_TOL: float = 1e-13
    # Pass threshold for matrix valued symmetry conditions
    MATRIX_TOL: float = 1e-12
    # Pass threshold for matrix valued symplecticity conditions
    EI_SYMPLECTIC_TOL: float = 1e-11
    # Number of random Hamiltonian sample matrices per check batch
    RANDOM_SAMPLES: int = 5
    # Upper bound on the inf-norm of random sample matrices
    RANDOM_SAMPLE_NORM: float = 3.0
    # Seed for every random draw made by the library
    RANDOM_SEED: int = 20190101

    #
    # Jacobi elliptic functions
    #

    AGM_TOL: float = 1e-15
    AGM_MAX_ITERS: int = 60

    #
    # Reference trajectories and metrics
    #

    # h_ref = h / REFERENCE_REFINEMENT
    REFERENCE_REFINEMENT: int = 200
    # Maximum disagreement between the two reference tiers
    REFERENCE_TOL: float = 1e-10
    # Method used for numeric reference trajectories
    REFERENCE_METHOD: str = "SSSEI3s4"
    # Allowed rounding when matching times to grids
    GRID_TOL: float = 1e-9
    # Error pairs below this are excluded from order estimates
    ROUNDOFF_FLOOR: float = 1e-12

    #
    # Geometric step map probes
    #

    # Round trip defect must stay below ROUNDTRIP_FACTOR * fp_tol * |y0|
    ROUNDTRIP_FACTOR: float = 50.0
    # Central difference perturbation for step map Jacobians
    JACOBIAN_EPS: float = 1e-6
    # Allowed |D^T J D - J|
    JACOBIAN_TOL: float = 1e-5

    #
    # Output
    #

    # Full precision float formatting for CSV output
    CSV_FLOAT_FORMAT: str = "{:.17g}"
    # Marker written in place of errors for divergent rows
    DIVERGENT: str = "divergent"
    METRIC_COLUMNS: list[str] = [
        "method",
        "problem",
        "h",
        "t_end",
        "GE",
        "GEH",
        "wall_time",
        "n_steps",
        "mean_fp_iters",
    ]
    VERIFY_COLUMNS: list[str] = [
        "method",
        "check",
        "sample",
        "residual",
        "threshold",
        "passed",
    ]
