import time

from sdpower import catalog
from sdpower.census import enumerate_subdirect

# Subdirect subsemigroups of small powers, counted and up to isomorphism
for name, n in [("L2", 2), ("L2", 3), ("Z2", 2), ("N2", 2), ("NIL3", 2), ("SL3", 2)]:
    t0 = time.perf_counter()
    res = enumerate_subdirect(catalog.get(name), n)
    dt = time.perf_counter() - t0
    print(f"{name}^{n}: {res.total} subdirect, {res.classes} classes  ({dt:.2f}s)")
    print("   class sizes:", res.class_sizes)
