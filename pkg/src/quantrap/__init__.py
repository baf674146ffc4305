"""Numerics for trapped quantum particles: self-adjoint momentum extensions on an
interval, the infinite well as a limit of finite wells, singular barriers, and
deficiency-index bookkeeping."""
from .core import (
    Bounded,
    FullLine,
    Grid,
    HalfLine,
    MomentumDistribution,
    WaveFunction,
    default_p_grid,
    fourier_transform,
    inner_product,
    l2_distance,
)
from .errors import (
    GridMismatch,
    InvalidArgument,
    OutOfRange,
    PreconditionViolated,
    QuantrapError,
    UnfaithfulExpansion,
    UnsupportedForRegularized,
    UnsupportedRange,
)

__version__ = "0.1.0"
