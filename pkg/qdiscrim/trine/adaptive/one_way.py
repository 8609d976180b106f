from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import minimize

from ..ensemble import Ensemble
from ..errors import DimensionMismatchError
from ..linalg import Operator
from ..measurement import Povm, single_qubit_trine_povm
from ..optimizer.parameterization import encode_global, global_block, global_elements
from ..statistics import information_from_joint, mutual_information
from ..types import RealArray
from .Protocol import ProtocolNode, one_way_protocol
from .run import run_protocol

logger = logging.getLogger(__name__)

QUBIT_BLOCK = global_block(2)


@dataclass
class OneWayResult:
    """Best one-way protocol found, its exact mutual information and one record per restart."""

    protocol: ProtocolNode
    information_bits: float
    trace: list[dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "best_I_bits": self.information_bits,
            "protocol": self.protocol.to_json(),
            "trace": self.trace,
        }


def _split(raw: RealArray, outcomes_first: int, outcomes_second: int) -> tuple[np.ndarray, list[np.ndarray]]:
    cut = outcomes_first * QUBIT_BLOCK
    first = global_elements(raw[:cut], 2)
    step = outcomes_second * QUBIT_BLOCK
    seconds = [
        global_elements(raw[cut + a * step : cut + (a + 1) * step], 2)
        for a in range(outcomes_first)
    ]
    return first, seconds


def _one_way_information(
    raw: RealArray,
    x: np.ndarray,
    y: np.ndarray,
    priors: RealArray,
    outcomes_first: int,
    outcomes_second: int,
) -> float:
    first, seconds = _split(raw, outcomes_first, outcomes_second)
    p_first = np.einsum("ja,kab,jb->jk", x.conj(), first, x).real
    p_second = np.stack(
        [np.einsum("ja,kab,jb->jk", y.conj(), s, y).real for s in seconds], axis=1
    )
    # the first-round update of qubit 0 leaves qubit 1 untouched
    cond = p_first[:, :, None] * p_second
    p = np.clip(priors[:, None] * cond.reshape(len(priors), -1), 0, None)
    return information_from_joint(p)


def _build_protocol(raw: RealArray, outcomes_first: int, outcomes_second: int) -> ProtocolNode:
    first, seconds = _split(raw, outcomes_first, outcomes_second)
    return one_way_protocol(
        Povm([Operator(el) for el in first]),
        [Povm([Operator(el) for el in s]) for s in seconds],
    )


def optimize_one_way(
    ensemble: Ensemble,
    outcomes_first: int = 3,
    outcomes_second: int = 3,
    budget: int = 200,
    seed: int | None = None,
    restarts: int = 4,
) -> OneWayResult:
    """
    Search one-way local protocols for the largest mutual information.

    Qubit 0 is measured first with an ``outcomes_first``-outcome POVM; depending on
    its outcome, qubit 1 is measured with one of ``outcomes_first`` POVMs of
    ``outcomes_second`` outcomes. All POVMs are parameterized by square-root
    normalization of 2x2 complex seeds and searched by Nelder-Mead. With 3x3 outcomes
    the first restart starts from the trine measurement on both qubits.

    Args:
        ensemble (Ensemble): Two-qubit ensemble of product states.
        outcomes_first (int, optional): Outcomes of the first round. Defaults to 3.
        outcomes_second (int, optional): Outcomes of each second round. Defaults to 3.
        budget (int, optional): Nelder-Mead iterations per restart. Defaults to 200.
        seed (int | None, optional): Seed of the random starting points.
        restarts (int, optional): Independent starts. Defaults to 4.

    Returns:
        OneWayResult: The best protocol and its mutual information, evaluated exactly
        by :func:`run_protocol`.
    """
    if budget < 1 or restarts < 1:
        raise ValueError(f"budget and restarts must be at least 1, got {budget} and {restarts}")
    if outcomes_first < 1 or outcomes_second < 1:
        raise ValueError("Every round needs at least one outcome")
    if ensemble.dim != 4:
        raise DimensionMismatchError("One-way protocols act on two-qubit ensembles")

    x = ensemble.marginal(0).amplitudes()
    y = ensemble.marginal(1).amplitudes()
    priors = np.asarray(ensemble.priors)
    size = (outcomes_first + outcomes_first * outcomes_second) * QUBIT_BLOCK

    rng = np.random.default_rng(seed)
    logger.info(f"One-way search with seed {seed}: {restarts} restarts x {budget} iterations")
    starts = []
    if outcomes_first == 3 and outcomes_second == 3:
        trine = encode_global(single_qubit_trine_povm())
        starts.append(("warm", np.concatenate([trine] * 4)))
    while len(starts) < restarts:
        starts.append(("random", rng.normal(size=size)))
    starts = starts[:restarts]

    def objective(raw):
        return -_one_way_information(raw, x, y, priors, outcomes_first, outcomes_second)

    best_value, best_raw = -np.inf, None
    trace = []
    for r, (kind, x0) in enumerate(starts):
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxiter": budget, "xatol": 1e-10, "fatol": 1e-13, "adaptive": True},
        )
        value = -float(res.fun)
        if value > best_value or (
            value == best_value and tuple(res.x) < tuple(best_raw)
        ):
            best_value, best_raw = value, np.array(res.x)
        logger.debug(f"Restart {r} ({kind}): I = {value:.9f}, best so far {best_value:.9f}")
        trace.append(
            {"restart": r, "start": kind, "information_bits": value, "best_so_far": best_value}
        )

    protocol = _build_protocol(best_raw, outcomes_first, outcomes_second)
    information = mutual_information(run_protocol(ensemble, protocol))
    return OneWayResult(protocol, information, trace)
