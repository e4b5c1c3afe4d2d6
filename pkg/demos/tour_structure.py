import numpy as np

from sdpower import catalog
from sdpower.classify import classify
from sdpower.structure import analysis_report, archimedean, nilpotency_class

# A quick look at the bundled catalog
for name in catalog.names():
    S = catalog.get(name)
    print(f"{name:8s} order={S.order}  commutative={S.is_commutative()}")

# Cayley tables are plain integer arrays underneath
S = catalog.get("GN3")
table = np.array(S.rows)
print(table)
print("idempotents:", [S.elements[i] for i in range(S.order) if table[i, i] == i])

# archimedean components of a commutative semigroup
dec = archimedean(catalog.get("SL2N"))
print("components:", dec.components)

# nilpotency class of the monogenic nilpotent semigroups
for n in range(2, 7):
    print(n, nilpotency_class(catalog.families("monogenic-nilpotent", n)))

print(analysis_report(catalog.get("B2")))

# classification with the decision route
for name in ("Z3", "N2", "L2", "NIL3", "GN3"):
    rep = classify(catalog.get(name))
    print(name, rep.verdict, rep.rule)
    for step in rep.route:
        print("   ", step["condition"], "->", step["outcome"])
