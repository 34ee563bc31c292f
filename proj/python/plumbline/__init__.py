"""Sliceness certificates from sphere plumbings and tubing calculus.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (  # noqa: F401
    PlumblineError,
    associated_link_pd,
    associated_link_svg_text,
    bicolour,
    bracket,
    canonical_code,
    certify,
    component_count,
    en_bound,
    en_sphere_count,
    jones,
    k3_plumbing_text,
    lbtree_count,
    verify_certificate,
    __version__,
)

__all__ = [
    "PlumblineError",
    "associated_link_pd",
    "associated_link_svg_text",
    "bicolour",
    "bracket",
    "canonical_code",
    "certify",
    "component_count",
    "en_bound",
    "en_sphere_count",
    "jones",
    "k3_plumbing_text",
    "lbtree_count",
    "verify_certificate",
    "__version__",
]
