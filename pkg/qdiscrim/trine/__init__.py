from .adaptive import ProtocolNode, alternating_protocol, optimize_one_way, run_protocol
from .discriminate import discriminate, discriminate_protocol
from .ensemble import Ensemble, double_trine
from .measurement import (
    Povm,
    classify_povm,
    entangled_basis_povm,
    nine_outcome_product_povm,
    six_outcome_unentangled_povm,
)
from .optimizer import PovmParameterization, maximize_mi
from .statistics import mutual_information, outcome_probabilities

__all__ = [
    "discriminate",
    "discriminate_protocol",
    "double_trine",
    "entangled_basis_povm",
    "six_outcome_unentangled_povm",
    "nine_outcome_product_povm",
    "outcome_probabilities",
    "mutual_information",
    "classify_povm",
    "run_protocol",
    "alternating_protocol",
    "optimize_one_way",
    "maximize_mi",
    "Ensemble",
    "Povm",
    "PovmParameterization",
    "ProtocolNode",
]
