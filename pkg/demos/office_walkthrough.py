"""Choosing an office: from three stated preferences to a swap-by-swap explanation.

Run with ``python demos/office_walkthrough.py``.
"""

# %%
from prefswaps import datasets
from prefswaps.covector import argument_partition, dump_covector
from prefswaps.explain import delta2_graph, find_explanation, render_sequence
from prefswaps.necessity import Reasoner
from prefswaps.rounding import Query

office = datasets.office_instance()
for s in office.statements:
    print(f"{s.label}: {office.format(s.better)} >= {office.format(s.worse)}")

# %% The reference scales are the values the decision maker actually talked about.
for c, levels in zip(office.criteria, office.scales.levels):
    print(c.name, [c.decode(v) for v in levels])

# %% Is x preferred to y under every compatible additive utility?
x, y = office.alternatives["x"], office.alternatives["y"]
reasoner = Reasoner(office)
result = reasoner.check(x, y)
print("rounded:", office.format(result.rounded.x_low), ">=?", office.format(result.rounded.y_high))
print(dump_covector(result.covector, office))
print("necessary:", result.necessary)
print(result.certificate.to_text(result.system, office))

# %% Which criteria argue for x and which against it?
pos, neg, _ = argument_partition(result.covector)
print("for x:", [office.criteria[i].name for i in sorted(pos)])
print("against x:", [office.criteria[i].name for i in sorted(neg)])

# %% Order-2 swaps the stated preferences already imply, as a relation between criteria.
rel = delta2_graph(office, reasoner)
for a, b in rel.named_edges():
    print(f"  improving {a} compensates worsening {b}")

# %% Each negative argument gets a stronger positive one.
phi = find_explanation(Query(x, y), office, reasoner)
for j, i in sorted(phi.items()):
    print(f"  {office.criteria[i].name} pays for {office.criteria[j].name}")

# %% Two ways to tell the story.
for policy in ("shortest", "reference"):
    print(f"[{policy}]")
    print(render_sequence(Query(x, y), office, phi, policy).render(office))

# %% Some necessary statements have no such explanation.
q = Query(office.alternatives["ABCd"], office.alternatives["abcD"])
print("necessary:", reasoner.is_necessary(q.x, q.y), " matching:", find_explanation(q, office, reasoner))
