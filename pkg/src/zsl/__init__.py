"""Zero-sum search over the metacyclic groups C_n x|_s C_2."""

from .group import Group, GroupElement, MetacyclicParams, validate_params
from .products import ProductReport, StateBudgetExceeded, compute_products, is_product_one_free
from .sequence import Sequence, format_sequence, parse_sequence

__all__ = [
    "Group",
    "GroupElement",
    "MetacyclicParams",
    "ProductReport",
    "Sequence",
    "StateBudgetExceeded",
    "compute_products",
    "format_sequence",
    "is_product_one_free",
    "parse_sequence",
    "validate_params",
]

__version__ = "0.1.0"
