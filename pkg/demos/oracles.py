"""Cross-checking the exact cone test against two independent oracles.

Run with ``python demos/oracles.py``.
"""

# %%
import random
from fractions import Fraction

from prefswaps import datasets
from prefswaps.model import make_instance
from prefswaps.necessity import Reasoner, ilp_oracle, sampling_falsifier
from prefswaps.rounding import Query, is_bounded

office = datasets.office_instance()
a = office.alternatives

# %% A certificate: nonnegative multipliers on the statements and on monotonicity.
result = Reasoner(office).check(a["ABCd"], a["abcD"])
print(result.certificate.to_text(result.system, office))
print("integer search:", ilp_oracle(result.covector, result.system, bound=6))

# %% A counterexample: increments compatible with every statement, yet u(e2) < u(e1).
w = sampling_falsifier(Query(a["e2"], a["e1"]), office, trials=10_000, seed=0)
print("w =", [str(v) for v in w])

# %% Random instances: tally how often each oracle settles the question.
rng = random.Random(0)
tally = {"lp yes / ilp yes": 0, "lp no / sampled no": 0, "undecided by oracles": 0}
for _ in range(60):
    n = rng.randint(2, 4)
    stmts = [([rng.randint(0, 2) for _ in range(n)], [rng.randint(0, 2) for _ in range(n)]) for _ in range(3)]
    inst = make_instance([f"c{i}" for i in range(n)], stmts)
    x = tuple(Fraction(rng.randint(0, 2)) for _ in range(n))
    y = tuple(Fraction(rng.randint(0, 2)) for _ in range(n))
    if not is_bounded(Query(x, y), inst.scales):
        continue
    res = Reasoner(inst).check(x, y)
    if len(res.covector) > 8:
        continue
    found = ilp_oracle(res.covector, res.system, 6)
    w = sampling_falsifier(Query(x, y), inst, 2000, seed=1)
    assert not (found and not res.necessary) and not (w and res.necessary)
    if found:
        tally["lp yes / ilp yes"] += 1
    elif w:
        tally["lp no / sampled no"] += 1
    else:
        tally["undecided by oracles"] += 1
print(tally)
