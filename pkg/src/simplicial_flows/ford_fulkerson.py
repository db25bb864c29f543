"""Ford-Fulkerson on simplicial flow networks.

Each round looks for a non-negative chain with boundary ``gamma`` in the
residual complex, pushes flow along it until something saturates, and then
repairs the flow so that the simplices strictly between 0 and capacity
carry no top-dimensional cycle.  A flow with that property is a vertex of
the flow polytope, so no value repeats and the loop halts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .chains import apply_boundary, kernel_basis
from .flows import FlowNetwork, FlowResult, NetworkError, verify_flow
from .lp import EQ, Constraint, feasible_point

__all__ = [
    "FordFulkersonError",
    "ResidualComplex",
    "AugmentingChain",
    "FFStep",
    "residual",
    "find_augmenting_chain",
    "augment",
    "half_saturated",
    "saturated",
    "is_acyclic",
    "repair",
    "max_flow_ff",
    "trace_records",
    "zero_flow",
]

FORWARD, BACKWARD = 1, -1


class FordFulkersonError(RuntimeError):
    pass


@dataclass(frozen=True)
class ResidualComplex:
    network: FlowNetwork
    flow: FlowResult
    forward: tuple[Fraction, ...]
    backward: tuple[Fraction, ...]

    @property
    def sigma_forward(self):
        return None  # unbounded

    @property
    def sigma_backward(self) -> Fraction:
        return self.flow.value

    def capacity(self, j: int, direction: int) -> Fraction:
        return self.forward[j] if direction == FORWARD else self.backward[j]


@dataclass(frozen=True)
class AugmentingChain:
    """``coefficients[(j, +1)]`` runs along simplex ``j``, ``(j, -1)`` against it."""

    coefficients: dict
    step: Fraction

    def net(self, n: int) -> list[Fraction]:
        out = [Fraction(0)] * n
        for (j, direction), a in self.coefficients.items():
            out[j] += direction * a
        return out


@dataclass(frozen=True)
class FFStep:
    iteration: int
    chain: AugmentingChain
    augmented: FlowResult
    repaired: FlowResult


def zero_flow(net: FlowNetwork) -> FlowResult:
    return FlowResult(net.complex.chain(net.d), Fraction(0))


def residual(net: FlowNetwork, f: FlowResult) -> ResidualComplex:
    if not verify_flow(net, f.flow, f.value):
        raise NetworkError("residual complex of an infeasible flow")
    forward = tuple(c - x for c, x in zip(net.capacities, f.flow))
    backward = tuple(f.flow)
    return ResidualComplex(net, f, forward, backward)


def _step(rc: ResidualComplex, direction_net: list[Fraction]) -> Fraction:
    ratios = []
    for j, a in enumerate(direction_net):
        if a > 0:
            ratios.append(rc.forward[j] / a)
        elif a < 0:
            ratios.append(rc.backward[j] / -a)
    return min(ratios)


def find_augmenting_chain(rc: ResidualComplex) -> AugmentingChain | None:
    net = rc.network
    cols = net.boundary.columns()
    variables = [(j, FORWARD) for j in range(net.n_top) if rc.forward[j] > 0]
    variables += [(j, BACKWARD) for j in range(net.n_top) if rc.backward[j] > 0]
    if not variables:
        return None
    rows = [[Fraction(0)] * len(variables) for _ in range(net.n_faces)]
    for k, (j, direction) in enumerate(variables):
        for i, v in cols[j].items():
            rows[i][k] = direction * v
    cons = [Constraint(tuple(r), EQ, g) for r, g in zip(rows, net.gamma) if any(r) or g]
    x = feasible_point(cons, None, len(variables))
    if x is None:
        return None
    coeffs = {var: a for var, a in zip(variables, x) if a}
    chain = AugmentingChain(coeffs, Fraction(0))
    direction_net = chain.net(net.n_top)
    return AugmentingChain(coeffs, _step(rc, direction_net))


def augment(net: FlowNetwork, f: FlowResult, chain: AugmentingChain) -> FlowResult:
    if chain.step <= 0:
        raise FordFulkersonError("augmenting chain has step size 0")
    direction = chain.net(net.n_top)
    new = [x + chain.step * a for x, a in zip(f.flow, direction)]
    return FlowResult(net.complex.chain(net.d, new), f.value + chain.step)


def half_saturated(net: FlowNetwork, f: FlowResult) -> frozenset[int]:
    return frozenset(j for j, (x, c) in enumerate(zip(f.flow, net.capacities)) if 0 < x < c)


def saturated(net: FlowNetwork, f: FlowResult) -> frozenset[int]:
    return frozenset(j for j, (x, c) in enumerate(zip(f.flow, net.capacities)) if c > 0 and x == c)


def _restricted_kernel(net: FlowNetwork, H: Iterable[int]) -> tuple[list[int], list[list[Fraction]]]:
    cols = sorted(H)
    if not cols:
        return cols, []
    return cols, kernel_basis(net.boundary.select(None, cols))


def is_acyclic(net: FlowNetwork, H: Iterable[int]) -> bool:
    return not _restricted_kernel(net, H)[1]


def repair(net: FlowNetwork, f: FlowResult) -> FlowResult:
    flow = list(f.flow)
    for _ in range(net.n_top + 1):
        current = FlowResult(net.complex.chain(net.d, flow), f.value)
        cols, kernel = _restricted_kernel(net, half_saturated(net, current))
        if not kernel:
            return current
        v = kernel[0]
        step = min(
            (net.capacities[j] - flow[j]) / a if a > 0 else flow[j] / -a
            for j, a in zip(cols, v)
            if a
        )
        for j, a in zip(cols, v):
            flow[j] += step * a
    raise FordFulkersonError("repair did not terminate")  # each pass saturates a simplex


def default_iteration_cap(net: FlowNetwork) -> int:
    return 10 * (net.n_top + 1) ** 2


def max_flow_ff(
    net: FlowNetwork,
    max_iterations: int | None = None,
    trace: list | None = None,
) -> tuple[FlowResult, int]:
    """Run from the zero flow until no augmenting chain remains.

    If ``trace`` is a list, one :class:`FFStep` is appended per round.
    """
    cap = default_iteration_cap(net) if max_iterations is None else max_iterations
    f = zero_flow(net)
    iterations = 0
    while True:
        chain = find_augmenting_chain(residual(net, f))
        if chain is None:
            return f, iterations
        if iterations >= cap:
            raise FordFulkersonError(
                f"iteration cap {cap} reached at value {f.value} with "
                f"{len(half_saturated(net, f))} half-saturated simplices"
            )
        iterations += 1
        augmented = augment(net, f, chain)
        f = repair(net, augmented)
        if trace is not None:
            trace.append(FFStep(iterations, chain, augmented, f))


def trace_records(net: FlowNetwork, steps: Iterable[FFStep]) -> list[dict]:
    out = []
    for s in steps:
        out.append({
            "iter": s.iteration,
            "value": s.repaired.value,
            "support": len(s.repaired.flow.support()),
            "half_saturated": sorted(half_saturated(net, s.repaired)),
            "saturated": sorted(saturated(net, s.repaired)),
        })
    return out


def boundary_of(net: FlowNetwork, f: FlowResult) -> list[Fraction]:
    return list(apply_boundary(net.complex, f.flow))
