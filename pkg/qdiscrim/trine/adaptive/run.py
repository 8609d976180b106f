import logging

import numpy as np

from ..config import DEFAULT_MAX_DEPTH
from ..ensemble import Ensemble
from ..errors import DimensionMismatchError, ProtocolDepthError
from ..linalg import product_factors
from ..statistics import JointDistribution
from ..types import ComplexArray
from .Protocol import Child, leaf_labels, protocol_depth

logger = logging.getLogger(__name__)


def _branch(
    node: Child,
    factors: tuple[ComplexArray, ComplexArray],
    prob: float,
    columns: dict[str, int],
    row: np.ndarray,
) -> None:
    if isinstance(node, str):
        row[columns[node]] += prob
        return
    qubit = node.instrument.qubit
    phi = factors[qubit]
    for kraus, child in zip(node.instrument.kraus_ops, node.children):
        updated = kraus.matrix @ phi
        weight = float(np.vdot(updated, updated).real)
        if weight == 0:
            continue
        updated = updated / np.sqrt(weight)
        next_factors = (updated, factors[1]) if qubit == 0 else (factors[0], updated)
        _branch(child, next_factors, prob * weight, columns, row)


def run_protocol(
    ensemble: Ensemble, root: Child, max_depth: int = DEFAULT_MAX_DEPTH
) -> JointDistribution:
    """
    Exact joint distribution of ensemble states and protocol outputs.

    Every branch of the tree is enumerated. Local operations keep product states in
    product form, so the two single-qubit factors of each state are tracked
    separately: a Kraus operator acts on the addressed factor, the branch probability
    is multiplied by ``||K phi||^2`` and the factor is renormalized.

    Args:
        ensemble (Ensemble): Two-qubit ensemble of product states.
        root (ProtocolNode | str): The protocol; a bare leaf label measures nothing.
        max_depth (int, optional): Largest accepted number of rounds. Defaults to 6.

    Returns:
        JointDistribution: Columns are the distinct leaf labels in depth-first order.

    Raises:
        DimensionMismatchError: If the ensemble is not two-qubit.
        EntangledStateError: If an ensemble state is entangled.
        ProtocolDepthError: If the tree is deeper than ``max_depth``.
    """
    if ensemble.dim != 4:
        raise DimensionMismatchError(
            f"Local protocols act on two-qubit ensembles, got dimension {ensemble.dim}"
        )
    depth = protocol_depth(root)
    if depth > max_depth:
        raise ProtocolDepthError(f"Protocol has {depth} rounds, more than the limit of {max_depth}")

    labels = leaf_labels(root)
    columns = {label: i for i, label in enumerate(labels)}
    p = np.zeros((ensemble.size, len(labels)))
    for j, state in enumerate(ensemble.states):
        first, second = product_factors(state)
        _branch(root, (first.amplitudes, second.amplitudes), 1.0, columns, p[j])
        logger.debug(f"State {ensemble.labels[j]}: leaf probabilities sum to {p[j].sum():.15f}")
    p *= ensemble.priors[:, None]
    return JointDistribution(p, ensemble.priors, ensemble.labels, labels)
