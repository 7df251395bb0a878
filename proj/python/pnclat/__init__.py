"""Physical-layer network coding via lattice partitions over the Gaussian integers."""

from pnclat._core import (
    Field,
    GaussInt,
    LatticePartition,
    SignalCode,
    build_partition,
    canonical_associate,
    computation_rate,
    default_config,
    divmod,
    factor,
    gcd,
    is_prime,
    mmse_alpha,
    norm,
    quantize_nearest,
    select_coefficients,
    simulate,
    smith_normal_form,
)

__all__ = [
    "Field",
    "GaussInt",
    "LatticePartition",
    "SignalCode",
    "build_partition",
    "canonical_associate",
    "computation_rate",
    "default_config",
    "divmod",
    "factor",
    "gcd",
    "is_prime",
    "mmse_alpha",
    "norm",
    "quantize_nearest",
    "select_coefficients",
    "simulate",
    "smith_normal_form",
]

__version__ = "0.1.0"
