"""One-shot calibration: match closed-form minors to ascending-row determinants."""
import numpy as np

from ncsphere.moduli import phi_point
from ncsphere.variety import (
    MINOR_PAIRS,
    SklyaninParams,
    _sklyanin_items,
    minors15,
    minors15_closed,
    proj_point,
    relation_matrix,
)
import ncsphere.variety as V

rng = np.random.default_rng(7)
phi = phi_point(0.31, 0.73, 1.12)

# phi-matrix: determine per-pair sign of the closed forms
V._APPENDIX_SIGNS = {}
x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
det_vals = minors15(relation_matrix(phi, proj_point(x, "x")))
closed_vals = minors15_closed(phi, x)
signs = {}
for idx, pair in enumerate(MINOR_PAIRS):
    r = det_vals[idx] / closed_vals[idx]
    signs[pair] = r
print("appendix ratios:")
for pair, r in signs.items():
    print(f"  {pair}: {r:.6f}")

# verify the inferred signs at 10 fresh draws
inferred = {p: int(round(r.real)) for p, r in signs.items()}
V._APPENDIX_SIGNS = inferred
worst = 0.0
for _ in range(10):
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    d = minors15(relation_matrix(phi, proj_point(x, "x")))
    c = minors15_closed(phi, x)
    worst = max(worst, float(np.max(np.abs(d - c)) / np.max(np.abs(d))))
print("appendix signs:", inferred)
print("appendix worst rel err over 10 draws:", worst)

# Sklyanin matrix: match printed items (index, sign) to each pair
sp = SklyaninParams.from_phi(phi)
z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
det_vals = minors15(relation_matrix(sp, proj_point(z, "z")))
items = _sklyanin_items(sp, z)
mapping = {}
for idx, pair in enumerate(MINOR_PAIRS):
    best = None
    for j, item in enumerate(items):
        if abs(item) < 1e-12:
            continue
        r = det_vals[idx] / item
        for s in (1, -1):
            if abs(r - s) < 1e-6:
                best = (j, s)
    mapping[pair] = best
print("sklyanin mapping (pair -> (item, sign)):")
for pair, val in mapping.items():
    print(f"  {pair}: {val}")

# verify at 10 fresh draws and a second phi
V._SKLYANIN_ITEM_FOR_PAIR = {p: v for p, v in mapping.items()}
from ncsphere.variety import sklyanin_minors_closed
worst = 0.0
for trial_phi in (phi, phi_point(0.45, 0.9, 1.3)):
    sp2 = SklyaninParams.from_phi(trial_phi)
    for _ in range(10):
        z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        d = minors15(relation_matrix(sp2, proj_point(z, "z")))
        c = sklyanin_minors_closed(sp2, z)
        worst = max(worst, float(np.max(np.abs(d - c)) / np.max(np.abs(d))))
print("sklyanin worst rel err over 20 draws:", worst)
