"""nu-gap metric toolkit for discrete-time rational plants."""

from ._nugap import (
    Plant,
    __version__,
    nrcf,
    nu_metric,
    perturb_plant,
    random_plant,
    robustness_check,
    stability_margin,
    winding_number,
)

__all__ = [
    "Plant",
    "__version__",
    "nrcf",
    "nu_metric",
    "perturb_plant",
    "random_plant",
    "robustness_check",
    "stability_margin",
    "winding_number",
]
