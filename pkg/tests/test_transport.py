import itertools
import random
from fractions import Fraction

import pytest

from tropfw.errors import ValidationError
from tropfw.fw import solve_fw
from tropfw.points import DataSet, WeightVector, normalize
from tropfw.transport import (CentralCell, TransportationInstance,
                              central_cayley_cell, solve_transport)

from .gen import random_dataset, random_weights

RUNNING = DataSet.from_rows([[0, 0, 0], [1, -1, 0]])


def _basic_solutions(inst):
    """Oracle: enumerate all basic feasible solutions of the transportation
    polytope by solving the marginal equations on column subsets."""
    from tropfw.linalg import rank

    m, n = inst.m, inst.n
    cells = [(i, j) for i in range(m) for j in range(n)]
    nbasis = m + n - 1
    rows = []
    for i in range(m):
        rows.append([Fraction(1) if a == i else Fraction(0) for (a, b) in cells])
    for j in range(n):
        rows.append([Fraction(1) if b == j else Fraction(0) for (a, b) in cells])
    rhs = list(inst.supplies) + list(inst.demands)
    best = None
    for basis in itertools.combinations(range(len(cells)), nbasis):
        sub = [[row[k] for k in basis] for row in rows]
        if rank(sub) < nbasis:
            continue
        # solve the square-ish system by elimination on the basis columns
        aug = [r[:] + [b] for r, b in zip(sub, rhs)]
        from tropfw.linalg import _eliminate

        pivots = _eliminate(aug)
        if any(row[-1] != 0 for row in aug[len(pivots):]):
            continue
        x = [Fraction(0)] * nbasis
        ok = True
        for r, c in enumerate(pivots):
            if c == nbasis:
                ok = False
                break
            x[c] = aug[r][-1]
        if not ok or any(v < 0 for v in x):
            continue
        val = sum(
            inst.payoff[cells[k][0]][cells[k][1]] * x[idx]
            for idx, k in enumerate(basis)
        )
        if best is None or val > best:
            best = val
    return best


def test_running_example_plan_and_value():
    w = WeightVector((Fraction(1, 3), Fraction(2, 3)))
    inst = TransportationInstance.from_fw(RUNNING, w)
    plan, value = solve_transport(inst)
    assert value == Fraction(1, 3)
    assert plan == (
        (Fraction(1, 3), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1, 3), Fraction(1, 3)),
    )
    assert _basic_solutions(inst) == Fraction(1, 3)


def test_marginals_respected():
    rng = random.Random(101)
    for _ in range(10):
        V = random_dataset(rng, rng.randint(2, 4), rng.randint(3, 4))
        w = random_weights(rng, V.m)
        inst = TransportationInstance.from_fw(V, w)
        plan, value = solve_transport(inst)
        for i in range(inst.m):
            assert sum(plan[i]) == inst.supplies[i]
        for j in range(inst.n):
            assert sum(plan[i][j] for i in range(inst.m)) == inst.demands[j]
        assert all(x >= 0 for row in plan for x in row)
        if inst.m * inst.n <= 9:  # keep the brute-force oracle affordable
            assert _basic_solutions(inst) == value


def test_m_equals_one():
    V = DataSet.from_rows([[2, -1, -1]])
    w = WeightVector.uniform(1)
    inst = TransportationInstance.from_fw(V, w)
    plan, _ = solve_transport(inst)
    assert plan == ((Fraction(1, 3),) * 3,)
    cc = central_cayley_cell(V, w)
    assert cc.support.edges == frozenset({(0, 0), (0, 1), (0, 2)})


def test_zero_payoff():
    inst = TransportationInstance(
        (Fraction(1, 2), Fraction(1, 2)),
        (Fraction(1, 3),) * 3,
        ((Fraction(0),) * 3, (Fraction(0),) * 3),
    )
    _, value = solve_transport(inst)
    assert value == 0


def test_unbalanced_rejected():
    with pytest.raises(ValidationError):
        TransportationInstance(
            (Fraction(1, 2),), (Fraction(1, 3),) * 3, ((Fraction(0),) * 3,)
        )


def test_support_examples():
    w = WeightVector((Fraction(1, 3), Fraction(2, 3)))
    cc = central_cayley_cell(RUNNING, w)
    assert cc.support.edges == frozenset({(0, 0), (1, 1), (1, 2)})
    w2 = WeightVector((Fraction(1, 2), Fraction(1, 2)))
    cc2 = central_cayley_cell(RUNNING, w2)
    assert cc2.support.edges == frozenset({(0, 0), (0, 2), (1, 1), (1, 2)})


def test_cross_solver_agreement():
    # Independent routes to the same object: LP cell graph == transport
    # support, and the optimal values coincide.
    rng = random.Random(103)
    for _ in range(25):
        V = random_dataset(rng, rng.randint(2, 5), rng.randint(3, 4))
        w = random_weights(rng, V.m)
        res = solve_fw(V, w)
        cc = central_cayley_cell(V, w)
        assert cc.support == res.cell.graph
        assert cc.optimal_value == res.optimal_value


def test_weight_cell_selection_is_convex():
    # Midpoint of two weight vectors selecting the same cell selects it too.
    rng = random.Random(107)
    V = random_dataset(rng, 3, 3)
    picks = {}
    weights = [random_weights(rng, 3) for _ in range(8)]
    for w in weights:
        picks.setdefault(central_cayley_cell(V, w).support, []).append(w)
    for g, ws in picks.items():
        if len(ws) >= 2:
            mid = WeightVector(
                tuple((a + b) / 2 for a, b in zip(ws[0], ws[1]))
            )
            assert central_cayley_cell(V, mid).support == g
