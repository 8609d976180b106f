from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import minimize

from ..config import MAX_SLACK_TRACE, PENALTY_WEIGHT, PRODUCT_FEASIBILITY_TOL
from ..ensemble import Ensemble
from ..errors import DimensionMismatchError
from ..measurement import Povm, PovmClass, classify_povm
from ..statistics import information_from_joint, joint_array, mutual_information, outcome_probabilities
from ..types import RealArray
from .parameterization import (
    PovmParameterization,
    decode_global,
    decode_product,
    global_elements,
    global_from_kets,
    product_candidates,
    product_from_angles,
    repair_with_slack,
    warm_starts,
)

logger = logging.getLogger(__name__)

SEARCH_METHODS = ["powell", "nelder-mead"]


@dataclass
class OptimizationResult:
    """
    Best POVM found by :func:`maximize_mi`.

    ``povm`` is None and ``feasible`` False when no restart of a product-mode search
    reached a feasible point; ``information_bits`` is then None as well.
    """

    mode: str
    M: int
    povm: Povm | None
    information_bits: float | None
    classification: PovmClass | None
    feasible: bool
    defect: float
    raw: RealArray | None = None
    trace: list[dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "M": self.M,
            "best_I_bits": self.information_bits,
            "povm": None if self.povm is None else self.povm.to_json(),
            "classification": None if self.classification is None else self.classification.value,
            "feasible": self.feasible,
            "defect": self.defect,
            "trace": self.trace,
        }


def _global_objective(raw, amplitudes, priors, dim):
    p = np.clip(joint_array(amplitudes, priors, global_elements(raw, dim)), 0, None)
    return -information_from_joint(p)


def _product_objective(raw, amplitudes, priors):
    candidates = product_candidates(raw)
    elements, defect, _ = repair_with_slack(candidates)
    if defect <= PRODUCT_FEASIBILITY_TOL:
        p = np.clip(joint_array(amplitudes, priors, elements), 0, None)
        return -information_from_joint(p / p.sum())
    # information of the renormalized candidate statistics, minus the penalty
    cond = np.clip(joint_array(amplitudes, np.ones_like(priors), candidates), 0, None)
    totals = cond.sum(axis=1, keepdims=True)
    cond = np.where(totals > 0, cond / np.where(totals > 0, totals, 1), 1 / cond.shape[1])
    return -(information_from_joint(priors[:, None] * cond) - PENALTY_WEIGHT * defect)


def _reduced_product_objective(angles, amplitudes, priors):
    candidates = product_candidates(product_from_angles(angles))
    slack = np.eye(4) - candidates.sum(axis=0)
    elements = np.concatenate([candidates, ((slack + slack.conj().T) / 2)[None]], axis=0)
    p = np.clip(joint_array(amplitudes, priors, elements), 0, None)
    excess = max(0.0, float(np.trace(slack).real) - MAX_SLACK_TRACE)
    return -(information_from_joint(p / p.sum()) - PENALTY_WEIGHT * excess)


def _random_start(rng: np.random.Generator, param: PovmParameterization) -> RealArray:
    """Random point in reduced coordinates: kets (global) or Bloch angles (product)."""
    if param.mode == "global":
        return rng.normal(size=param.M * 2 * param.dim)
    angles = np.column_stack(
        [
            rng.uniform(0, np.pi, size=param.M),
            rng.uniform(0, 2 * np.pi, size=param.M),
            rng.uniform(0, np.pi, size=param.M),
            rng.uniform(0, 2 * np.pi, size=param.M),
        ]
    )
    return angles.ravel()


def _lift(reduced: RealArray, param: PovmParameterization) -> RealArray:
    if param.mode == "global":
        return global_from_kets(reduced, param.dim)
    return product_from_angles(reduced)


def _local_search(objective, x0: RealArray, method: str, iters: int) -> RealArray:
    if method == "powell":
        options = {"maxiter": iters, "xtol": 1e-6, "ftol": 1e-10}
        res = minimize(objective, x0, method="Powell", options=options)
    else:
        options = {"maxiter": iters, "xatol": 1e-10, "fatol": 1e-13, "adaptive": True}
        res = minimize(objective, x0, method="Nelder-Mead", options=options)
    return np.array(res.x)


def maximize_mi(
    ensemble: Ensemble,
    param: PovmParameterization,
    restarts: int = 20,
    iters: int = 2000,
    seed: int | None = None,
    warm_start: bool = True,
    method: str = "powell",
) -> OptimizationResult:
    """
    Derivative-free search for the POVM with the largest mutual information.

    Starting points are, in order: ``param.raw`` if given, the known constructions
    with ``param.M`` outcomes (if ``warm_start``), then points drawn from
    ``numpy.random.default_rng(seed)``. Random points live in reduced coordinates:
    M kets in global mode (rank-one elements) and M pairs of Bloch directions in
    product mode (weights fitted to the identity). They are first optimized there,
    then lifted to the raw parameters and polished. Given and warm starts are
    polished directly.

    Product-mode points that are not POVMs score their renormalized information
    minus ``10 * defect``. Each restart keeps the best decoded point among its start,
    its lifted reduced optimum and its polished optimum; restarts reduce by maximal
    information, ties going to the lexicographically smaller raw vector.

    Args:
        ensemble (Ensemble): The states to discriminate.
        param (PovmParameterization): Mode and number of outcomes of the search.
        restarts (int, optional): Number of starting points. Defaults to 20.
        iters (int, optional): Iterations of each local search. Defaults to 2000.
        seed (int | None, optional): Seed of the random starting points.
        warm_start (bool, optional): Seed restarts with known constructions. Defaults to True.
        method (str, optional): ``"powell"`` or ``"nelder-mead"``. Defaults to ``"powell"``.

    Returns:
        OptimizationResult: The best feasible POVM, its mutual information,
        classification, and one trace record per restart whose ``best_so_far`` never
        decreases.
    """
    if restarts < 1 or iters < 1:
        raise ValueError(f"restarts and iters must be at least 1, got {restarts} and {iters}")
    if method not in SEARCH_METHODS:
        raise ValueError(
            f'Search method "{method}" is not implemented. Try one of {SEARCH_METHODS}.'
        )
    if ensemble.dim != param.dim:
        raise DimensionMismatchError(
            f"Ensemble of dimension {ensemble.dim} cannot be measured by a {param.dim}-dimensional POVM"
        )

    amplitudes = ensemble.amplitudes()
    priors = np.asarray(ensemble.priors)

    def objective(raw):
        if param.mode == "global":
            return _global_objective(raw, amplitudes, priors, param.dim)
        return _product_objective(raw, amplitudes, priors)

    def reduced_objective(reduced):
        if param.mode == "global":
            return _global_objective(global_from_kets(reduced, param.dim), amplitudes, priors, param.dim)
        return _reduced_product_objective(reduced, amplitudes, priors)

    def evaluate(x):
        if param.mode == "global":
            povm, defect = decode_global(x, param.dim), 0.0
        else:
            decoded = decode_product(x)
            povm, defect = decoded.povm, decoded.defect
        value = None if povm is None else mutual_information(outcome_probabilities(ensemble, povm))
        return povm, defect, value

    rng = np.random.default_rng(seed)
    logger.info(
        f"{param.mode} search over {param.M}-outcome POVMs with seed {seed}: "
        f"{restarts} restarts x {iters} {method} iterations"
    )
    starts = []
    if param.raw is not None:
        starts.append(("given", np.asarray(param.raw, dtype=np.float64)))
    if warm_start:
        starts += [("warm", raw) for raw in warm_starts(param.mode, param.M, param.dim)]
    while len(starts) < restarts:
        starts.append(("random", _random_start(rng, param)))
    starts = starts[:restarts]

    best = None
    best_value, best_raw = None, None
    least_defect = np.inf
    trace = []
    for r, (kind, x0) in enumerate(starts):
        if kind == "random":
            reduced = _local_search(reduced_objective, x0, method, iters)
            points = [_lift(x0, param), _lift(reduced, param)]
        else:
            points = [x0]
        points.append(_local_search(objective, points[-1], method, iters))

        restart_best, restart_defect = None, np.inf
        for x in points:
            povm, defect, value = evaluate(x)
            restart_defect = min(restart_defect, defect)
            if value is None:
                continue
            if (
                restart_best is None
                or value > restart_best[2]
                or (value == restart_best[2] and tuple(x) < tuple(restart_best[3]))
            ):
                restart_best = (povm, defect, value, x)
        least_defect = min(least_defect, restart_defect)

        value = None
        if restart_best is not None:
            povm, defect, value, x = restart_best
            if (
                best_value is None
                or value > best_value
                or (value == best_value and tuple(x) < tuple(best_raw))
            ):
                best, best_value, best_raw = (povm, defect), value, x
        else:
            defect = restart_defect
        logger.debug(
            f"Restart {r} ({kind}): I = {value}, defect = {defect:.3e}, best so far {best_value}"
        )
        trace.append(
            {
                "restart": r,
                "start": kind,
                "information_bits": value,
                "feasible": restart_best is not None,
                "defect": defect,
                "best_so_far": best_value,
            }
        )

    if best is None:
        logger.warning(f"No feasible POVM found in {restarts} restarts (least defect {least_defect:.3e})")
        return OptimizationResult(
            param.mode, param.M, None, None, None, False, float(least_defect), None, trace
        )
    povm, defect = best
    classification = classify_povm(povm) if povm.dim == 4 else None
    return OptimizationResult(
        param.mode, param.M, povm, best_value, classification, True, defect, best_raw, trace
    )
