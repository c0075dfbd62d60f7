"""The two-generator subgroup <X, Y> of U_(k+2)(Z/p) and its iterated commutators."""
from prorel import groups as gr
from prorel.unipotent import (NormalForm, WitnessGroupSpec, build_generators, iterated_matrix_commutator,
                              perturbation_congruence_check)

spec = WitnessGroupSpec(5, 3)
U = spec.group()
X, Y = build_generators(spec)
print("X =", X)
print("Y =", Y)
for i in range(spec.k + 2):
    print(f"[X^({i}),Y] =", iterated_matrix_commutator(X, Y, i))

H = gr.closure([X, Y], U)
print("\n|<X,Y>| =", H.order, "and its lower central series:", gr.orders(gr.lower_central_series(H)))

nf = NormalForm(spec)
g = U.mul(U.mul(Y, X), U.mul(Y, X))
print("(YX)^2 has normal-form exponents", nf.decompose(g))

rep = perturbation_congruence_check(3)
print(f"\nperturbing X, Y by H_2 at p=3 ({rep.data['mode']}, {rep.data['pairs']} pairs):",
      "PASS" if rep.passed else "FAIL")
