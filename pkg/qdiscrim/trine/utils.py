import logging
from decimal import ROUND_HALF_EVEN, Decimal

import numpy as np
import pandas as pd

from .config import PRINT_DIGITS
from .measurement import PovmReport
from .statistics import JointDistribution

logger = logging.getLogger(__name__)

# mutual information of the entangled-basis measurement on the double-trine ensemble
ENTANGLED_OPTIMUM_BITS = (
    np.log2(3)
    + (0.5 + np.sqrt(2) / 3) * np.log2(0.5 + np.sqrt(2) / 3)
    + 2 * (0.25 - 1 / (3 * np.sqrt(2))) * np.log2(0.25 - 1 / (3 * np.sqrt(2)))
)


def format_bits(value: float, digits: int = PRINT_DIGITS) -> str:
    """
    Fixed-point rendering with ``digits`` decimals, rounding half to even.

    Examples:
        >>> format_bits(1.0849625007211563)
        '1.084962501'
        >>> format_bits(0.0000000005)
        '0.000000000'
    """
    quantum = Decimal(1).scaleb(-digits)
    rounded = Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_EVEN)
    if rounded.is_zero():
        rounded = abs(rounded)
    return f"{rounded:f}"


def format_frame(frame: pd.DataFrame, digits: int = PRINT_DIGITS) -> str:
    return frame.map(lambda v: format_bits(v, digits)).to_string()


def comparison_line(value: float, reference: float = ENTANGLED_OPTIMUM_BITS) -> str:
    """One line comparing ``value`` with the entangled-basis optimum."""
    if value < reference:
        relation = "<"
    elif value > reference:
        relation = ">"
    else:
        relation = "="
    return (
        f"I = {format_bits(value)} bits {relation} {format_bits(reference)} bits "
        f"(entangled-basis optimum), gap {format_bits(reference - value)}"
    )


def report_information(label: str, jd: JointDistribution, information: float) -> None:
    """
    Print the conditional outcome probabilities and the mutual information.

    Args:
        label: a name for the run (e.g. "entangled on double-trine").
        jd: the joint distribution of states and outcomes.
        information: mutual information in bits.
    """
    print(f"{label}")
    print("p(outcome | state):")
    print(format_frame(jd.to_frame(conditional=True)))
    print(f"I = {format_bits(information)} bits")


def report_povm(report: PovmReport, labels: list[str] | None = None) -> None:
    """Print positivity and completeness diagnostics of a candidate POVM."""
    if report.n_elements == 0:
        print("elements: none")
    if labels is None:
        labels = [f"P{k}" for k in range(report.n_elements)]
    for label, h, ev in zip(labels, report.hermitian, report.min_eigenvalues):
        status = f"min eigenvalue {ev: .3e}" if h else "not Hermitian"
        print(f"  {label}: {status}")
    if report.n_elements > 0:
        print(f"completeness defect ||sum - I||_F = {report.defect_norm:.3e}")
    for problem in report.problems():
        print(f"violated: {problem}")
    print(f"valid POVM: {'yes' if report.valid else 'no'}")
