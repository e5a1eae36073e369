"""Single-particle Mach-Zehnder interferometry with translational-internal entanglement."""

from .core import (
    RAMSEY,
    FourState,
    InternalBasis,
    PhysicalParams,
    TieParams,
    inner_product,
    prepare_input,
    validate_energy,
)
from .detection import (
    ChannelProbabilities,
    blind_probabilities,
    channel_probabilities,
    oracle_channel_probabilities,
)
from .errors import ConfigError, ParameterError, SingularConfigurationError
from .mzi import InterferometerConfig, OutputPair, merge_at_bs2, propagate

__version__ = "0.1.0"
