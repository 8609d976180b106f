import logging
from pathlib import Path

import numpy as np

from .adaptive import (
    LocalInstrument,
    ProtocolNode,
    alternating_protocol,
    product_protocol,
    read_protocol,
    run_protocol,
)
from .adaptive.Protocol import Child
from .ensemble import Ensemble, double_trine, read_ensemble, trine_ensemble
from .linalg import identity
from .measurement import (
    Povm,
    entangled_basis_povm,
    nine_outcome_product_povm,
    read_povm,
    single_qubit_trine_povm,
    six_outcome_unentangled_povm,
)
from .statistics import JointDistribution, mutual_information, outcome_probabilities

logger = logging.getLogger(__name__)
logging.basicConfig(level=logging.INFO, format="[%(levelname)s] %(message)s")

ENSEMBLES = ["double-trine", "trine"]
MEASUREMENTS = ["entangled", "six", "nine", "trine-local"]
PROTOCOLS = ["trine-both", "alternating", "trivial", "identity"]
# weak rounds of the builtin "alternating" protocol, before the two full trine rounds
ALTERNATING_STRENGTHS = [0.5, 0.5]


def builtin_ensemble(name: str) -> Ensemble:
    if name == "double-trine":
        return double_trine()
    if name == "trine":
        return trine_ensemble()
    raise ValueError(f'Ensemble named "{name}" is not implemented. Try one of {ENSEMBLES}.')


def builtin_measurement(name: str, theta: float = np.pi / 4, alpha: float = 2 / 3) -> Povm:
    """Builtin POVM by name; ``theta`` and ``alpha`` only apply to ``"six"``."""
    if name == "entangled":
        return entangled_basis_povm()
    if name == "six":
        return six_outcome_unentangled_povm(theta, alpha)
    if name == "nine":
        return nine_outcome_product_povm()
    if name == "trine-local":
        return single_qubit_trine_povm()
    raise ValueError(
        f'Measurement named "{name}" is not implemented. Try one of {MEASUREMENTS}.'
    )


def builtin_protocol(name: str) -> Child:
    """
    Builtin local protocols on two qubits.

    ``"trine-both"`` measures the trine POVM on qubit 0 and then on qubit 1;
    ``"trivial"`` measures nothing (a bare leaf); ``"identity"`` is one round whose
    single Kraus operator is the identity; ``"alternating"`` is
    :func:`~qdiscrim.trine.adaptive.alternating_protocol` with two half-strength rounds.
    """
    if name == "trine-both":
        trine = single_qubit_trine_povm()
        return product_protocol(trine, trine)
    if name == "alternating":
        return alternating_protocol(ALTERNATING_STRENGTHS)
    if name == "trivial":
        return "none"
    if name == "identity":
        return ProtocolNode(LocalInstrument(0, [identity(2)]), ["none"])
    raise ValueError(f'Protocol named "{name}" is not implemented. Try one of {PROTOCOLS}.')


def load_ensemble(name: str | None = "double-trine", path: Path | str | None = None) -> Ensemble:
    """The ensemble stored at ``path`` if given, else the builtin called ``name``."""
    if path is not None:
        logger.debug(f"Reading ensemble from {path}")
        return read_ensemble(path)
    return builtin_ensemble(name)


def load_measurement(
    name: str | None = "entangled",
    path: Path | str | None = None,
    theta: float = np.pi / 4,
    alpha: float = 2 / 3,
) -> Povm:
    """The POVM stored at ``path`` if given, else the builtin called ``name``."""
    if path is not None:
        logger.debug(f"Reading POVM from {path}")
        return read_povm(path)
    return builtin_measurement(name, theta, alpha)


def load_protocol(name: str | None = "trine-both", path: Path | str | None = None) -> Child:
    if path is not None:
        logger.debug(f"Reading protocol from {path}")
        return read_protocol(path)
    return builtin_protocol(name)


def discriminate(
    ensemble: Ensemble | str = "double-trine",
    measurement: Povm | str = "entangled",
) -> tuple[float, JointDistribution]:
    """Mutual information between the states of an ensemble and the outcomes of a POVM.

    Args:
        ensemble (Ensemble | str, optional): An ensemble or the name of a builtin one,
            one of ``["double-trine", "trine"]``. Defaults to "double-trine".
        measurement (Povm | str, optional): A POVM or the name of a builtin one, one of
            ``["entangled", "six", "nine", "trine-local"]``. Defaults to "entangled".

    Returns:
        tuple[float, JointDistribution]: The mutual information in bits and the joint
        distribution of states and outcomes.

    Raises:
        ValueError: If a builtin name is unknown.
        DimensionMismatchError: If the POVM does not act on the ensemble's space.

    Examples:
        >>> info, _ = discriminate("double-trine", "nine")
        >>> round(info, 9)
        1.084962501
    """
    if isinstance(ensemble, str):
        ensemble = builtin_ensemble(ensemble)
    if isinstance(measurement, str):
        measurement = builtin_measurement(measurement)
    jd = outcome_probabilities(ensemble, measurement)
    return mutual_information(jd), jd


def discriminate_protocol(
    protocol: Child | str = "trine-both",
    ensemble: Ensemble | str = "double-trine",
    max_depth: int | None = None,
) -> tuple[float, JointDistribution]:
    """Mutual information achieved by a local protocol, evaluated exactly.

    ``protocol`` is a protocol tree or the name of a builtin one (``"trine-both"``,
    ``"trivial"``, ``"identity"``).
    """
    if isinstance(ensemble, str):
        ensemble = builtin_ensemble(ensemble)
    if isinstance(protocol, str) and protocol in PROTOCOLS:
        protocol = builtin_protocol(protocol)
    kwargs = {} if max_depth is None else {"max_depth": max_depth}
    jd = run_protocol(ensemble, protocol, **kwargs)
    return mutual_information(jd), jd
