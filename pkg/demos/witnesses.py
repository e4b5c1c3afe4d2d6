from sdpower import catalog
from sdpower.certify import distinguish, divisor_spectrum, root_spectrum
from sdpower.constructions import between, build_chain, t_m, w_m
from sdpower.sequences import parse_epseq

# Sequences strictly between two others in the pointwise order
L2 = catalog.get("L2")
lo, hi = parse_epseq(L2, "|0"), parse_epseq(L2, "|0,1")
print(lo, "<", between(lo, hi), "<", hi)
for c in build_chain(5):
    print("  ", c)

# Nilpotent case: one family per admissible set M, separated by divisor counts
NIL3 = catalog.get("NIL3")
fams = [t_m(NIL3, M, 1, 7) for M in ("3k", "[6;+3]")]
for f in fams:
    print(len(f.truncation), divisor_spectrum(f.truncation))
cert = distinguish(fams[0].truncation, fams[1].truncation)
print(cert.verdict, cert.kind)

# Group-by-nilpotent case: counting cube roots
GN3 = catalog.get("GN3")
W = w_m(GN3, "[4,5]", 2, 8).truncation
counts = root_spectrum(W, 3)
print("elements with more than 3 cube roots:", sorted(c for c in counts.values() if c > 3))
