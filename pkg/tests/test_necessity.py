import random
from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import linprog

from prefswaps.covector import Covector, IndexSet, covector_of
from prefswaps.model import dominates, make_instance
from prefswaps.necessity import (
    ConeSystem,
    Reasoner,
    cone_membership,
    ilp_oracle,
    is_necessary,
    necessity,
    sampling_falsifier,
    solve_nonnegative,
)
from prefswaps.rounding import Query, UnboundedQueryError

from helpers import random_instance


def office_system(office, target):
    index = IndexSet.from_scales(office.scales)
    return ConeSystem.for_instance(office, Covector(index, tuple(target)))


def test_swap_cost_commute_certificate(office):
    # p2 + p3 = (0,-1,-1,1) + (-1,1,1,0); the decomposition is unique
    cert = cone_membership(office_system(office, (-1, 0, 0, 1)))
    assert cert.lam == (0, 1, 1)
    assert cert.mu == (0, 0, 0, 0)


def test_single_generator_target(office):
    system = office_system(office, (1, -1, 1, -1))
    cert = cone_membership(system)
    assert cert.verify(system)
    assert cert.lam == (1, 0, 0) and cert.mu == (0, 0, 0, 0)


def test_reverse_statement_not_in_cone(office):
    system = office_system(office, (-1, 1, -1, 1))
    assert cone_membership(system) is None
    assert ilp_oracle(system.target, system, 10) is None


def test_office_query_necessary(office):
    result = necessity(Query(office.alternatives["x"], office.alternatives["y"]), office)
    assert result.necessary
    assert result.certificate.verify(result.system)


def test_abcd_certificate(office):
    a = office.alternatives
    result = necessity(Query(a["ABCd"], a["abcD"]), office)
    integer = result.certificate.integer_form()
    assert (integer.r, integer.ell, integer.m) == (1, (1, 0, 0), (0, 2, 0, 0))
    assert integer.verify(result.system)


def test_reverse_of_statement_not_necessary(office):
    a = office.alternatives
    assert not is_necessary(Query(a["e2"], a["e1"]), office)


def test_pareto_is_necessary_with_mu_only(office):
    a = office.alternatives
    result = necessity(Query(a["e2"], a["e3"]), office)
    assert result.necessary
    assert all(v == 0 for v in result.certificate.lam)
    empty = make_instance(["a", "b"], [])
    assert is_necessary(Query((F(2), F(1)), (F(1), F(1))), empty)


def test_unbounded_not_necessary(office):
    q = Query(office.resolve([-60, "no gym", 450, -5000]), office.alternatives["y"])
    result = necessity(q, office)
    assert not result.bounded and not result.necessary


def test_ilp_oracle_examples(office):
    system = office_system(office, (0, -1, 1, 0))  # Size >= Gym
    found = ilp_oracle(system.target, system, 6)
    assert (found.r, found.ell, found.m) == (1, (1, 1, 1), (0, 0, 0, 0))
    index = system.target.index
    elementary = Covector.elementary(index, 2, 0)
    found = ilp_oracle(elementary, office_system(office, elementary.coeffs), 6)
    assert (found.r, found.ell, found.m) == (1, (0, 0, 0), (0, 0, 1, 0))
    abcd = office_system(office, (1, 1, 1, -1))
    assert ilp_oracle(abcd.target, abcd, 1) is None
    found = ilp_oracle(abcd.target, abcd, 2)
    assert found is not None and found.verify(abcd)


def test_ilp_oracle_limits(office):
    system = office_system(office, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        ilp_oracle(system.target, system, 0)


def test_falsifier(office):
    a = office.alternatives
    w = sampling_falsifier(Query(a["e2"], a["e1"]), office, 10_000, seed=1)
    assert w is not None
    sigma = covector_of(a["e2"], a["e1"], office.scales)
    assert sigma.dot(w) < 0
    assert all(covector_of(s.better, s.worse, office.scales).dot(w) >= 0 for s in office.statements)
    assert sampling_falsifier(Query(a["x"], a["x"]), office, 2000) is None
    assert sampling_falsifier(Query(a["e2"], a["e3"]), office, 2000) is None
    assert sampling_falsifier(Query(a["e2"], a["e1"]), office, 500, seed=4) == \
        sampling_falsifier(Query(a["e2"], a["e1"]), office, 500, seed=4)


def test_falsifier_rejects_unbounded(office):
    q = Query(office.resolve([-60, "no gym", 450, -5000]), office.alternatives["y"])
    with pytest.raises(UnboundedQueryError):
        sampling_falsifier(q, office)


def test_solver_against_scipy():
    """Feasibility of A z = b, z >= 0 agrees with HiGHS on random {-1,0,1} systems."""
    rng = np.random.default_rng(0)
    for _ in range(300):
        m, g = rng.integers(1, 6), rng.integers(1, 8)
        A = rng.integers(-1, 2, size=(m, g))
        b = rng.integers(-2, 3, size=m)
        z = solve_nonnegative(A.T.tolist(), b.tolist())
        res = linprog(np.zeros(g), A_eq=A, b_eq=b, bounds=[(0, None)] * g, method="highs")
        assert (z is not None) == (res.status == 0)
        if z is not None:
            assert all(v >= 0 for v in z)
            assert [sum(F(int(A[r, j])) * z[j] for j in range(g)) for r in range(m)] == b.tolist()


def test_solver_degenerate_system():
    # many redundant and zero rows: degenerate bases throughout
    cols = [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 0], [-1, -1, 1, 0], [0, 0, 1, 0]]
    assert solve_nonnegative(cols, [0, 0, 0, 0]) == [0] * 5
    z = solve_nonnegative(cols, [1, 1, 1, 0])
    assert z is not None
    assert solve_nonnegative(cols, [1, 0, 0, 0]) is None


def test_memo_keyed_on_covector(office):
    reasoner = Reasoner(office)
    x, y = office.alternatives["x"], office.alternatives["y"]
    reasoner.is_necessary(x, y)
    size = reasoner.cache_size
    # same rounding, different raw values
    reasoner.is_necessary(office.resolve([-40, "no gym", 420, -4000]), office.resolve([-20, "gym", 190, -12100]))
    assert reasoner.cache_size == size


def _random_cases(seed, count, values=range(-1, 5)):
    rng = random.Random(seed)
    for _ in range(count):
        inst = random_instance(rng, rng.randint(2, 4), 3, rng.randint(1, 4))
        yield rng, inst


def test_monotonicity_and_transitivity():
    checked = 0
    for rng, inst in _random_cases(21, 60):
        reasoner = Reasoner(inst)
        pts = [tuple(F(rng.randint(-1, 3)) for _ in range(inst.n)) for _ in range(8)]
        nec = {(a, b): reasoner.is_necessary(pts[a], pts[b]) for a in range(8) for b in range(8)}
        for a in range(8):
            for b in range(8):
                if not nec[(a, b)]:
                    continue
                for c in range(8):
                    if nec[(b, c)]:
                        assert nec[(a, c)]
                        checked += 1
                    # x' dominating x keeps necessity, as does y dominating y'
                    if dominates(pts[c], pts[a]):
                        assert nec[(c, b)]
                    if dominates(pts[b], pts[c]):
                        assert nec[(a, c)]
    assert checked > 100


def test_certificates_always_verify():
    for rng, inst in _random_cases(8, 40):
        reasoner = Reasoner(inst)
        for _ in range(5):
            x = tuple(F(rng.randint(0, 2)) for _ in range(inst.n))
            y = tuple(F(rng.randint(0, 2)) for _ in range(inst.n))
            result = reasoner.check(x, y)
            if result.necessary:
                assert result.certificate.verify(result.system)
                assert result.certificate.integer_form().verify(result.system)


def test_certificate_text(office):
    result = necessity(Query(office.alternatives["ABCd"], office.alternatives["abcD"]), office)
    text = result.certificate.to_text(result.system, office)
    assert text.splitlines() == ["lambda[e1>=e2] = 1", "mu[Gym:1] = 2"]
