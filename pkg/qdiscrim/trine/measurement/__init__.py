from .constructions import (
    builtin_identity_povm,
    cyclic_unitary,
    entangled_basis_povm,
    entangled_basis_states,
    ideal_product_set,
    nine_outcome_product_povm,
    rotation,
    single_qubit_trine_povm,
    singlet_state,
    six_outcome_elements,
    six_outcome_states,
    six_outcome_unentangled_povm,
    trace_weight,
    trine_perp_states,
)
from .entanglement import classify_povm, concurrence, concurrence_signed, principal_ket
from .Povm import (
    Povm,
    PovmClass,
    PovmReport,
    completeness_defect,
    operators_from_json,
    povm_report,
    read_povm,
    write_povm,
)
from .singlet import (
    singlet_superposition_states,
    solve_completeness_constraint,
    solve_separability_constraint,
)
from .WeightFit import WeightFit
