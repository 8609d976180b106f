from .parameterization import (
    MODES,
    PovmParameterization,
    ProductDecode,
    decode_global,
    decode_product,
    encode_global,
    encode_product,
    global_from_kets,
    normalized_elements,
    product_from_angles,
    warm_starts,
)
from .search import SEARCH_METHODS, OptimizationResult, maximize_mi
