"""A walk through a minimal [14,4]_3 code: weights, the rank criterion,
its support polynomial and the covering witnesses of one codeword."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from minimalcodes.code import LinearCode, is_minimal_code, pless_second_moment_check, weight_profile
from minimalcodes.formats import MatrixFile
from minimalcodes.supportpoly import (
    alon_furedi_bound,
    canonical_form,
    nonzero_set,
    support_cover_witnesses,
    support_poly_of_codeword,
)

DATA = Path(__file__).resolve().parent.parent / "tests" / "data" / "fourteen_four_ternary.txt"

code = LinearCode(MatrixFile.read(DATA).matrix())
print(f"loaded {code}")
print(code.G)

prof = weight_profile(code)
print("\nweight distribution:", prof.distribution)
print(f"d = {prof.d}, w_max = {prof.w_max}, mean = {prof.mean} = {float(prof.mean):.2f}, variance = {prof.variance}")

res = is_minimal_code(code)
print(f"\nminimal: {res.minimal} ({res.checked} codeword classes checked by rank)")

chk = pless_second_moment_check(code)
print(f"sum of squared weights {chk.lhs}, dual expansion {chk.rhs}, projective floor {chk.projective_bound}")

# the first row has support {8, ..., 14}
u = np.array([1, 0, 0, 0])
c = code.encode(u)
print("\nrow 1:", c.tolist())
p = support_poly_of_codeword(code, u)
print("reduced support polynomial:", p)
U = nonzero_set(p)
print(f"nonzeros: {U.tolist()}  (Alon-Furedi lower bound {alon_furedi_bound(p, [3] * 4)})")
print("agrees with the normal form of a maximal codeword:", canonical_form(code, u).agrees)

print("\ncovering witnesses, one per support position:")
for j, w in sorted(support_cover_witnesses(code, u).witnesses.items()):
    print(f"  j = {j + 1:2d}: weight {np.count_nonzero(w.codeword):2d}  {w.codeword.tolist()}  I_j = {[i + 1 for i in w.subset]}")
