"""Trace functions over prime fields: transforms, sums and angle statistics."""

from ._core import (
    CapacityError,
    DomainViolation,
    InvalidArgument,
    InvalidModulus,
    TracefnError,
    angles,
    birch,
    fourier,
    gauss_sums,
    interval_max,
    kloosterman,
    kloosterman_fourth_moment,
    ks_distance,
    legendre,
    mellin,
    moment,
    mult_convolution,
    run_cli,
    salie,
    voronoi,
)

__all__ = [
    "CapacityError",
    "DomainViolation",
    "InvalidArgument",
    "InvalidModulus",
    "TracefnError",
    "angles",
    "birch",
    "fourier",
    "gauss_sums",
    "interval_max",
    "kloosterman",
    "kloosterman_fourth_moment",
    "ks_distance",
    "legendre",
    "mellin",
    "moment",
    "mult_convolution",
    "run_cli",
    "salie",
    "voronoi",
]
