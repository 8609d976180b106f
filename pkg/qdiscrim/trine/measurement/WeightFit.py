import logging

import numpy as np
import pyomo.environ as pyo

from ..errors import DimensionMismatchError, InfeasibleOptimizationError
from ..linalg import Operator

logger = logging.getLogger(__name__)


class WeightFit:
    """Linear-programming fit of nonnegative operator weights to a target.

    Finds weights ``w_k >= 0`` such that ``sum_k w_k G_k`` matches the target operator
    (the identity by default) as closely as possible in the entrywise L1 sense. With
    the identity as target, a zero residual certifies that ``{w_k G_k}`` is complete.
    The LP solution is polished by least squares on its support, which recovers
    closed-form weights to machine precision when the fit is exact.
    """

    def __init__(self) -> None:
        # Stores the Pyomo model after solving
        self.model: pyo.ConcreteModel | None = None

    def _make_model(self, columns: np.ndarray, target: np.ndarray) -> pyo.ConcreteModel:
        """
        Build the LP ``min sum(over + under)`` s.t. ``columns @ w + under - over = target``.

        Args:
            columns (np.ndarray): Real matrix of shape (n_entries, n_weights); column k
                holds the real and imaginary parts of operator k, flattened.
            target (np.ndarray): Real vector of shape (n_entries,).

        Returns:
            pyo.ConcreteModel: The LP instance.
        """
        n, d = columns.shape
        model = pyo.ConcreteModel()
        model.entry_i = pyo.Set(initialize=range(n))
        model.op_i = pyo.Set(initialize=range(d))

        model.w = pyo.Var(model.op_i, domain=pyo.NonNegativeReals)
        # entrywise residual split into its positive and negative parts
        model.over = pyo.Var(model.entry_i, domain=pyo.NonNegativeReals)
        model.under = pyo.Var(model.entry_i, domain=pyo.NonNegativeReals)

        model.match = pyo.Constraint(
            model.entry_i,
            rule=lambda m, e: (
                sum(float(columns[e, k]) * m.w[k] for k in m.op_i if columns[e, k] != 0)
                + m.under[e]
                - m.over[e]
                == float(target[e])
            ),
        )
        model.obj = pyo.Objective(
            expr=sum(model.over[e] + model.under[e] for e in model.entry_i),
            sense=pyo.minimize,
        )
        return model

    def find_weights(
        self,
        operators: list[Operator],
        target: Operator | None = None,
        verbose: bool = False,
        time_limit: int = 60,
        solver_name: str = "appsi_highs",
        support_tol: float = 1e-9,
    ) -> tuple[np.ndarray, float]:
        """
        Fit nonnegative weights of ``operators`` to ``target``.

        Args:
            operators (list[Operator]): Operators ``G_k`` of one dimension.
            target (Operator | None, optional): Defaults to the identity.
            verbose (bool, optional): Print the solver log. Defaults to False.
            time_limit (int, optional): Solver time budget in seconds; only honoured
                by HiGHS, Gurobi, CPLEX, GLPK and Xpress. Defaults to 60.
            solver_name (str, optional): Any Pyomo LP solver. Defaults to "appsi_highs".
            support_tol (float, optional): Weights at or below this are treated as zero
                when polishing. Defaults to 1e-9.

        Returns:
            tuple[np.ndarray, float]: The weights and the Frobenius norm of the residual
            ``sum_k w_k G_k - target``.

        Raises:
            DimensionMismatchError: If the operators do not share the target's dimension.
            ValueError: If the solver ends with an unexpected termination condition.
            InfeasibleOptimizationError: If the solver stops without any solution.
        """
        if len(operators) == 0:
            raise DimensionMismatchError("Need at least one operator to fit")
        dim = operators[0].dim
        if target is None:
            target = Operator.identity(dim)
        if any(op.dim != dim for op in operators) or target.dim != dim:
            raise DimensionMismatchError("All operators must share the target's dimension")

        columns = np.stack(
            [np.concatenate([op.matrix.real.ravel(), op.matrix.imag.ravel()]) for op in operators],
            axis=1,
        )
        rhs = np.concatenate([target.matrix.real.ravel(), target.matrix.imag.ravel()])

        lp_model = self._make_model(columns, rhs)

        if solver_name == "gurobi":
            solver = pyo.SolverFactory(solver_name, solver_io="python")
        else:
            solver = pyo.SolverFactory(solver_name)

        if "cplex" in solver_name:
            solver.options["timelimit"] = time_limit
        elif "glpk" in solver_name:
            solver.options["tmlim"] = time_limit
        elif "xpress" in solver_name:
            solver.options["soltimelimit"] = time_limit
        elif "highs" in solver_name:
            solver.options["time_limit"] = time_limit
        elif "gurobi" in solver_name:
            solver.options["TimeLimit"] = time_limit
        else:
            logger.warning(
                f'Time limit not set! Not implemented for the selected solver "{solver_name}".'
            )

        result = solver.solve(lp_model, load_solutions=False, tee=verbose)
        if result.solver.termination_condition != pyo.TerminationCondition.optimal:
            logger.info("Solver did not prove optimality of the weight fit.")
            if result.solver.termination_condition not in [
                pyo.TerminationCondition.maxTimeLimit,
                pyo.TerminationCondition.feasible,
            ]:
                raise ValueError(
                    f"Unexpected termination condition: {result.solver.termination_condition}."
                )
        try:
            lp_model.solutions.load_from(result)
        except ValueError as e:
            logger.info("No solution found. Try increasing `time_limit`.")
            raise InfeasibleOptimizationError(
                "No solution found. Try increasing `time_limit`."
            ) from e
        self.model = lp_model

        weights = np.array(
            [lp_model.w[k].value or 0.0 for k in lp_model.op_i], dtype=np.float64
        )
        weights = np.clip(weights, 0, None)

        support = weights > support_tol
        if np.any(support):
            polished, *_ = np.linalg.lstsq(columns[:, support], rhs, rcond=None)
            if np.all(polished >= 0):
                weights = np.zeros_like(weights)
                weights[support] = polished
            else:
                logger.debug("Least-squares polish left the nonnegative cone; keeping LP weights")

        residual = float(np.linalg.norm(columns @ weights - rhs))
        return weights, residual
