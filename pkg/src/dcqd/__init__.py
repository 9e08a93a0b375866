"""Direct characterization of quantum dynamics with faulty Bell-state preparation and measurement."""
from .errors import (
    DCQDError,
    DegenerateInput,
    IllConditioned,
    NotCP,
    NotHermitian,
    NotUnitary,
    OutOfRange,
    SingularMatrix,
    SingularNoise,
    ZeroContrast,
)
from .faulty import FaultySetting, build_faulty_lambda, reconstruct_faulty, total_map_probabilities
from .oracle import standard_qpt
from .protocol import (
    LambdaSystem,
    Reconstruction,
    coefficient_matrix_c,
    numeric_lambda,
    reconstruct_ideal,
    sample_shots,
    simulate_probabilities,
)
from .qobj import OPTIMAL_PARAMS, InputParams, concurrence, dcqd_input

__version__ = "0.1.0"
