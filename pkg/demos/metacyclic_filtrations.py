"""Walk through the filtrations of G(a,m) = C_(p^m) x| C_(p^(m-k)) for a few parameters."""
from prorel import groups as gr
from prorel.metacyclic import MetacyclicGroup, MetacyclicParams, verify_metacyclic_structure

for p, k, m in [(3, 1, 2), (3, 1, 3), (5, 1, 2), (3, 2, 3)]:
    G = MetacyclicGroup.of(p, k, m)
    H = G.whole()
    print(f"{G.name}: order {H.order}, exponent {gr.exponent(H)}")
    print("  lower central series   ", gr.orders(gr.lower_central_series(H)))
    print("  p-descending series    ", gr.orders(gr.p_descending_series(H, p)))
    print("  Zassenhaus filtration  ", gr.orders(gr.zassenhaus_filtration(H, p)))
    rep = verify_metacyclic_structure(MetacyclicParams(p, k, m))
    print(f"  {len(rep.checks)} structural checks: {'all pass' if rep.passed else 'FAILURES'}")

# sigma conjugates tau to tau^(1+p^k); the commutator lands in <tau^(p^k)>
G = MetacyclicGroup.of(3, 1, 2)
print("\n[sigma, tau] =", G.commutator(G.sigma, G.tau))
print("(tau sigma)^3 =", G.power(G.mul(G.tau, G.sigma), 3))
