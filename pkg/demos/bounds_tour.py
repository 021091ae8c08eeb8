"""What the length and statistical bounds say about small parameters."""

from __future__ import annotations

from minimalcodes.bounds import bhatia_davis_window, delsarte_min_length, exclusion_class, feasibility, m_table

print("is there a minimal [16,4]_4 code?")
rep = feasibility(4, 4, n=16)
for v in rep.verdicts:
    if v.satisfied is not None:
        print(f"  {'ok  ' if v.satisfied else 'FAIL'} {v.name}: {v.value}  {v.note}")
print("  ->", rep.overall)

print("\na minimal [17,4]_4 code would have d in", feasibility(4, 4, n=17).d_range())

print("\nbinary codes of dimension 8 with weights 16..24:")
print("  length window from mean and variance:", bhatia_davis_window(2, 8, 16, 24).as_tuple())
print("  three-weight Delsarte bound: n >=", delsarte_min_length(2, 8, 2))

print("\nwhich test excludes which parameters:")
for q, n, k in [(2, 8, 4), (2, 17, 7), (4, 16, 4), (7, 26, 4), (4, 99, 21)]:
    print(f"  [{n},{k}]_{q}: {exclusion_class(q, n, k)}")

for q in (2, 4, 9):
    print(f"\nm(k,{q}):")
    for e in m_table(q, 7):
        exact = f"  = {e.exact}" if e.exact is not None else ""
        print(f"  k={e.k}: [{e.lower:4d}, {e.upper:4d}]  {e.lower_source} / {e.upper_source}{exact}")
