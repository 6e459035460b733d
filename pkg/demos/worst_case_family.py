"""Shortest explanations can be arbitrarily long, even on three criteria.

Run with ``python demos/worst_case_family.py``.
"""

# %%
import time

from prefswaps.explain import shortest_explanation_search, worst_case_instance
from prefswaps.rounding import Query

# %% The family: 2p statements, each trading one step on X1 against one on X2 or X3.
inst, x, y = worst_case_instance(2)
for s in inst.statements:
    print(f"{s.label}: {inst.format(s.better)} >= {inst.format(s.worse)}")

# %% Breadth-first search over the augmented grid finds the minimum.
for p in range(1, 5):
    inst, x, y = worst_case_instance(p)
    t0 = time.perf_counter()
    expl = shortest_explanation_search(Query(x, y), inst, max_order=2)
    dt = time.perf_counter() - t0
    print(f"p={p}: {expl.swap_count} swaps  ({dt:.2f}s)")

# %% The path for p = 2 alternates between the two kinds of statement.
inst, x, y = worst_case_instance(2)
print(shortest_explanation_search(Query(x, y), inst).render(inst))
