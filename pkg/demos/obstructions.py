"""Finite quotients that rule out candidate relations."""
from prorel.errors import HypothesisViolation
from prorel.obstruction import GridSpec, check_thm_1, check_thm_filtration, check_thm_T, sweep

print(check_thm_1(3, 1, 3, 2, 1, "x^9 [y1,y2] [y3,y4]").to_text())
print()
# x -> tau sigma: the root moves by a geometric sum N of valuation exactly l
rep = check_thm_T(3, 1, 3, 2, 1, "y1 [y1,y2]", w=2)
print(rep.to_text())
print("N =", rep.params["N"])
print()
print(check_thm_filtration(5, 1, 2, 3, "[y1,y2]", t="[x,y1]^5").to_text())
print()
try:
    check_thm_1(3, 1, 2, 1, 1, "x^3 [x,y1]")
except HypothesisViolation as exc:
    print("rejected:", exc)

res = sweep(GridSpec())
print("\nfull sweep:", res.counts, "PASS" if res.passed else "FAIL")
