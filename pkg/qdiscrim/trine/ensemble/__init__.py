from .Ensemble import Ensemble, read_ensemble, write_ensemble
from .utils import double_trine, make_ensemble, trine_ensemble, trine_states
