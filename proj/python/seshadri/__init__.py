"""Certified Seshadri constant bounds for vector bundles."""

from ._core import (
    DomainError,
    InputError,
    __version__,
    hacon_epsilon,
    hirzebruch_intersection,
    list_scenarios,
    oracle,
    run,
    verify,
)

__all__ = [
    "DomainError",
    "InputError",
    "__version__",
    "hacon_epsilon",
    "hirzebruch_intersection",
    "list_scenarios",
    "oracle",
    "run",
    "verify",
]
