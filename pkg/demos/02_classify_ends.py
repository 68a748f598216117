"""End classification: catenoid-type, planar, or higher-order.

At an end of metric order -2 the form expands as
phi = (a_-2 / t^2 + a_-1 / t + ...) dt with <a_-2, a_-2> = 0 and a_-1 real
and orthogonal to the plane spanned by Re a_-2, Im a_-2.  The end is then
asymptotic to a catenoid piece (b = |a_-1| > 0) or a flat plane (b = 0)
inside a 3-dimensional subspace, and is embedded.  Order -3 or lower admits
no such model.
"""

import numpy as np

import minsurf as ms

for entry in ms.catalog.entries(jm_range=(2,)):
    w = entry.data
    print("=" * 64)
    print(f"{entry.name}  (R^{w.n}, {len(w.punctures)} end(s))")
    print("=" * 64)
    for p in w.punctures:
        e = ms.analyze_end(w, p)
        print(f"end {p!r}:")
        print(f"  metric order mu = {e.mu}  (k = {e.k})")
        print(f"  classification: {e.classification.value}")
        if e.mu == -2:
            print(f"  a = {e.a:.6g}, b = {e.b:.6g}")
            print(f"  a_-2 = {np.round(e.a_minus2, 6)}")
            print(f"  frame e1 = {np.round(e.frame[0], 6)}")
            print(f"        e2 = {np.round(e.frame[1], 6)}")
            print(f"        e3 = {np.round(e.frame[2], 6)}")
        print(f"  rotation index |k-1| = {e.rotation_index}, embedded: {e.embedded}")
    print()

print("The asymptotic model is checkable: |f - f0| / |t| stays bounded")
print("as the local radius shrinks exactly when the model is right.")
print()
cat = ms.catenoid().data
e0 = ms.analyze_end(cat, 0j)
chk = ms.verify_asymptotic(cat, e0, [1e-1, 1e-2, 1e-3, 1e-4])
print(f"catenoid end at 0 against its own model: ratios = "
      f"{[f'{r:.3f}' for r in chk.ratios]}  bounded: {chk.bounded}")

ce = ms.holomorphic_counterexample().data
e2 = ms.analyze_end(ce, 0j)
bad = ms.asymptotic_model(e2, force_planar=True)
neg = ms.verify_asymptotic(ce, e2, [1e-1, 1e-2, 1e-3, 1e-4], model=bad)
print(f"order -3 end against a (wrong) planar model: ratios = "
      f"{[f'{r:.3g}' for r in neg.ratios]}  bounded: {neg.bounded}")
