"""Exact combinatorics of type B free probability.

Non-crossing partition lattices, the dual-number algebra C, moment and
cumulant transforms, boxed convolution, R- and S-transforms, and the
central and Poisson limit computations, all in rational arithmetic.
"""

from .dual import DualScalar, parse_rational
from .errors import (
    DimensionError,
    DomainError,
    ExactnessError,
    NotInvertibleError,
    SizeLimitError,
    TruncationError,
    TypeBError,
)
from .nc_lattice import (
    PartitionInterval,
    SetPartition,
    TypeBPartition,
    enumerate_nc,
    enumerate_ncb,
    is_noncrossing,
    kreweras,
    moebius,
    refines,
)
from .series import (
    CSeries,
    UnitSeries,
    box_conv,
    cf_product,
    check_box_conv,
    compose,
    invert_compositional,
    s_transform,
    series_pointwise_mul,
    zeta_prime,
)
from .cumulants import (
    CumulantSequence,
    MomentSequence,
    cumulants_to_moments,
    moments_to_cumulants,
)

__version__ = "0.1.0"
