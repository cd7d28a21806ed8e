"""Discrete Morse-Smale complexes of sampled scalar fields."""

from mscx._core import (
    Grid,
    Mesh,
    MorseSmale,
    add_noise,
    builtin_grid,
    circle_deviation,
    diagonal_mesh,
    diff,
    direction_histogram,
    morse_smale,
    morse_smale_mesh,
    poisson_mesh,
    random_field,
    random_field_3d,
    resample,
    run_experiment,
    sample,
    suggested_mesh,
    upsample,
)

__all__ = [
    "Grid",
    "Mesh",
    "MorseSmale",
    "add_noise",
    "builtin_grid",
    "circle_deviation",
    "diagonal_mesh",
    "diff",
    "direction_histogram",
    "morse_smale",
    "morse_smale_mesh",
    "poisson_mesh",
    "random_field",
    "random_field_3d",
    "resample",
    "run_experiment",
    "sample",
    "suggested_mesh",
    "upsample",
]
