from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from ..config import COMPLETENESS_TOL, DEFAULT_MAX_DEPTH
from ..errors import DimensionMismatchError, KrausCompletenessError, ProtocolDepthError, TrineError
from ..linalg import Operator, identity, operator_sqrt
from ..measurement import Povm, single_qubit_trine_povm

QUBITS = [0, 1]


def kraus_from_povm(povm: Povm) -> list[Operator]:
    """Kraus operators ``K_k = sqrt(Pi_k)`` of a single-qubit POVM."""
    if povm.dim != 2:
        raise DimensionMismatchError(
            f"Local instruments act on one qubit, got a POVM of dimension {povm.dim}"
        )
    return [operator_sqrt(el) for el in povm.elements]


class LocalInstrument:
    """
    A measurement on one qubit of a two-qubit system, given by Kraus operators.

    Outcome i occurs with probability ``||K_i phi||^2`` and leaves the measured qubit
    in ``K_i phi / ||K_i phi||``.
    """

    def __init__(self, qubit: int, kraus_ops: list[Operator]):
        if qubit not in QUBITS:
            raise ValueError(f"Qubit index must be one of {QUBITS}, got {qubit}")
        kraus_ops = list(kraus_ops)
        if len(kraus_ops) == 0:
            raise KrausCompletenessError("A local instrument needs at least one Kraus operator")
        if any(k.dim != 2 for k in kraus_ops):
            raise DimensionMismatchError("Kraus operators of a local instrument must be 2x2")
        total = sum(k.matrix.conj().T @ k.matrix for k in kraus_ops)
        defect = float(np.linalg.norm(total - np.eye(2)))
        if defect > COMPLETENESS_TOL:
            raise KrausCompletenessError(
                f"Kraus operators on qubit {qubit} violate sum K^dagger K = I (defect {defect:.3e})"
            )
        self.__qubit = qubit
        self.__kraus = kraus_ops

    @classmethod
    def from_povm(cls, qubit: int, povm: Povm) -> LocalInstrument:
        return cls(qubit, kraus_from_povm(povm))

    @property
    def qubit(self) -> int:
        return self.__qubit

    @property
    def kraus_ops(self) -> list[Operator]:
        return list(self.__kraus)

    @property
    def n_outcomes(self) -> int:
        return len(self.__kraus)

    def __repr__(self):
        return f"LocalInstrument(qubit={self.__qubit}, outcomes={self.n_outcomes})"


Child = Union["ProtocolNode", str]


class ProtocolNode:
    """
    One round of an adaptive local protocol.

    ``children[i]`` is what happens after outcome i of the instrument: either the
    next round or a leaf label, the protocol's classical output.
    """

    def __init__(self, instrument: LocalInstrument, children: list[Child]):
        children = list(children)
        if len(children) != instrument.n_outcomes:
            raise DimensionMismatchError(
                f"Instrument has {instrument.n_outcomes} outcomes but the node has {len(children)} children"
            )
        for child in children:
            if not isinstance(child, (ProtocolNode, str)):
                raise TrineError(f"Protocol children must be nodes or leaf labels, got {child!r}")
        self.__instrument = instrument
        self.__children = children

    @property
    def instrument(self) -> LocalInstrument:
        return self.__instrument

    @property
    def children(self) -> list[Child]:
        return list(self.__children)

    def to_json(self) -> dict[str, Any]:
        return {
            "qubit": self.__instrument.qubit,
            "kraus": [k.to_json() for k in self.__instrument.kraus_ops],
            "children": [
                c if isinstance(c, str) else c.to_json() for c in self.__children
            ],
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> ProtocolNode:
        try:
            instrument = LocalInstrument(
                int(obj["qubit"]), [Operator.from_json(k) for k in obj["kraus"]]
            )
            children = [c if isinstance(c, str) else cls.from_json(c) for c in obj["children"]]
        except (KeyError, TypeError, AttributeError) as e:
            raise TrineError(f"Malformed protocol document: missing or bad {e}") from e
        return cls(instrument, children)

    def __repr__(self):
        return f"ProtocolNode(qubit={self.__instrument.qubit}, children={len(self.__children)})"


def protocol_from_json(obj: dict[str, Any] | str) -> Child:
    """A protocol document is a node object, or a bare string for the no-measurement protocol."""
    if isinstance(obj, str):
        return obj
    if not isinstance(obj, dict):
        raise TrineError(f"Malformed protocol document: expected an object, got {type(obj).__name__}")
    return ProtocolNode.from_json(obj)


def protocol_to_json(root: Child) -> dict[str, Any] | str:
    return root if isinstance(root, str) else root.to_json()


def read_protocol(path: Path | str) -> Child:
    with Path(path).open(encoding="utf-8") as f:
        return protocol_from_json(json.load(f))


def write_protocol(root: Child, path: Path | str) -> None:
    with Path(path).open("w", encoding="utf-8") as f:
        json.dump(protocol_to_json(root), f, indent=2)
        f.write("\n")


def protocol_depth(root: Child) -> int:
    """Number of rounds on the longest path; a bare leaf has depth 0."""
    if isinstance(root, str):
        return 0
    return 1 + max(protocol_depth(c) for c in root.children)


def leaf_labels(root: Child) -> list[str]:
    """Distinct leaf labels in depth-first order."""
    if isinstance(root, str):
        return [root]
    labels = []
    for child in root.children:
        for label in leaf_labels(child):
            if label not in labels:
                labels.append(label)
    return labels


def product_protocol(first: Povm, second: Povm, first_qubit: int = 0) -> ProtocolNode:
    """Non-adaptive protocol: ``first`` on ``first_qubit``, then ``second`` on the other qubit.

    Leaves are ``"k0,k1"``, the outcome index on qubit 0 first, whichever qubit is
    measured first.
    """
    return one_way_protocol(first, [second] * first.M, first_qubit)


def one_way_protocol(first: Povm, seconds: list[Povm], first_qubit: int = 0) -> ProtocolNode:
    """
    One-way protocol: measure ``first_qubit`` with ``first``; after outcome a, measure
    the other qubit with ``seconds[a]``. Leaves are labelled as in :func:`product_protocol`.
    """
    if len(seconds) != first.M:
        raise DimensionMismatchError(
            f"Need one second-round POVM per first outcome ({first.M}), got {len(seconds)}"
        )
    other = 1 - first_qubit
    children = []
    for a, second in enumerate(seconds):
        leaves = [f"{a},{b}" if first_qubit == 0 else f"{b},{a}" for b in range(second.M)]
        children.append(ProtocolNode(LocalInstrument.from_povm(other, second), leaves))
    return ProtocolNode(LocalInstrument.from_povm(first_qubit, first), children)


def weak_trine_instrument(qubit: int, strength: float) -> LocalInstrument:
    """
    Trine instrument of the given strength: ``K_k = sqrt((1 - s) I / 3 + s Pi_k)``.

    ``s = 1`` is the trine POVM itself; ``s = 0`` learns nothing and leaves the qubit
    untouched.
    """
    if not 0 <= strength <= 1:
        raise ValueError(f"Measurement strength must lie in [0, 1], got {strength}")
    blur = identity(2) * ((1 - strength) / 3)
    return LocalInstrument(
        qubit, [operator_sqrt(blur + el * strength) for el in single_qubit_trine_povm().elements]
    )


def alternating_protocol(
    strengths: list[float], first_qubit: int = 0, max_depth: int = DEFAULT_MAX_DEPTH
) -> ProtocolNode:
    """
    Local protocol that alternates weak trine rounds between the qubits.

    Round i measures qubit ``(first_qubit + i) % 2`` with :func:`weak_trine_instrument`
    of strength ``strengths[i]``. Two closing rounds, still alternating, measure each
    qubit with the full trine POVM, so no strengths gives the trine POVM on both
    qubits. Leaves are the outcome sequences in measurement order, e.g. ``"2,0,1,1"``.

    Args:
        strengths (list[float]): Strength of each weak round, in [0, 1].
        first_qubit (int, optional): Qubit of the first round. Defaults to 0.
        max_depth (int, optional): Largest accepted number of rounds. Defaults to 6.

    Raises:
        ProtocolDepthError: If the weak rounds plus the two closing rounds exceed ``max_depth``.

    Returns:
        ProtocolNode: Root of the protocol tree.
    """
    if first_qubit not in QUBITS:
        raise ValueError(f"Qubit index must be one of {QUBITS}, got {first_qubit}")
    rounds = [
        weak_trine_instrument((first_qubit + i) % 2, s) for i, s in enumerate(strengths)
    ]
    last = rounds[-1].qubit if rounds else 1 - first_qubit
    rounds += [weak_trine_instrument(1 - last, 1.0), weak_trine_instrument(last, 1.0)]
    if len(rounds) > max_depth:
        raise ProtocolDepthError(
            f"Protocol has {len(rounds)} rounds, more than the limit of {max_depth}"
        )

    def build(depth: int, outcomes: list[int]) -> Child:
        if depth == len(rounds):
            return ",".join(str(k) for k in outcomes)
        instrument = rounds[depth]
        return ProtocolNode(
            instrument, [build(depth + 1, outcomes + [k]) for k in range(instrument.n_outcomes)]
        )

    return build(0, [])
