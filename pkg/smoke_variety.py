import cmath
import math

import numpy as np

from ncsphere.errors import DegenerateError, NumericError, UsageError
from ncsphere.moduli import classify, phi_point, trig_invariants
from ncsphere.variety import (
    SklyaninParams,
    centrality_residual,
    change_basis,
    fiber_matrix,
    form_vanishes_at,
    involution,
    is_on_variety,
    loci_samples,
    minors15,
    minors15_closed,
    proj_point,
    projective_equal,
    q_m,
    q_p,
    q_pprime,
    q_prime,
    q_sphere,
    q_two,
    q_x,
    quadratic_form_eval,
    relation_matrix,
    rho_squared,
    second_slot_matrix,
    sigma_correspondence,
    sigma_cubic,
    sklyanin_minors_closed,
)

rng = np.random.default_rng(3)
phi = phi_point(0.31, 0.73, 1.12)
sp = SklyaninParams.from_phi(phi)
print("constraint residual:", sp.constraint_residual())
assert sp.constraint_residual() < 1e-12

# 1. closed-form minors via frozen constants
x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
d = minors15(relation_matrix(phi, proj_point(x, "x")))
c = minors15_closed(phi, x)
print("appendix rel err:", np.max(np.abs(d - c)) / np.max(np.abs(d)))
z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
d2 = minors15(relation_matrix(sp, proj_point(z, "z")))
c2 = sklyanin_minors_closed(sp, z)
print("sklyanin rel err:", np.max(np.abs(d2 - c2)) / np.max(np.abs(d2)))

# 2. rank behaviors
m_e0 = relation_matrix(sp, proj_point([1, 0, 0, 0], "z"))
print("rank at e0:", np.linalg.matrix_rank(m_e0))
assert np.linalg.matrix_rank(m_e0) == 3
try:
    proj_point([0, 0, 0, 0], "z")
    raise SystemExit("zero point accepted")
except UsageError:
    pass
try:
    relation_matrix(phi, proj_point([1, 0, 0, 0], "z"))
    raise SystemExit("role mismatch accepted")
except UsageError:
    pass
assert not is_on_variety(sp, proj_point(z, "z"))

# 3. loci membership for all 11 cases
cases = {
    "Generic": phi,
    "EvenFace": phi_point(0.6, 0.6, 1.1),
    "OddFace": phi_point(math.pi / 2, 0.7, 0.4),
    "LineL": phi_point(math.pi / 2, 0.8, 0.8),
    "LineLprime": phi_point(math.pi / 2, math.pi / 2, 0.9),
    "LineLsecond": phi_point(0.8, 0.8, 0.8),
    "Cplus": phi_point(0.7, 0.7, 0.0),
    "Cminus": phi_point(math.pi / 2 + 0.5, math.pi / 2, 0.5),
    "VertexP": phi_point(math.pi / 2, math.pi / 2, math.pi / 2),
    "VertexPprime": phi_point(math.pi / 2, math.pi / 2, 0.0),
    "VertexO": phi_point(0.0, 0.0, 0.0),
}
for name, ph in cases.items():
    label = classify(ph)
    assert label.case_id.value == name, (name, label.case_id)
    src_z = SklyaninParams.from_phi(ph) if name in ("Generic", "EvenFace", "OddFace") else None
    samples = loci_samples(ph, name, rng, n=8)
    for comp, pts in samples.items():
        for p in pts:
            src = src_z if p.role == "z" else ph
            ok = is_on_variety(src, p)
            assert ok, (name, comp, p)
    print(f"loci ok: {name} ({', '.join(samples)})")

# 4. sigma_cubic on fiber samples
inv = trig_invariants(phi)
abc = inv.s
def fiber_sample():
    w = complex(rng.standard_normal(), rng.standard_normal())
    Z0 = 1.0 + 0j
    return proj_point(
        [Z0, cmath.sqrt(Z0**2 - abc[0] * w), cmath.sqrt(Z0**2 - abc[1] * w),
         cmath.sqrt(Z0**2 - abc[2] * w)], "Z")

worst = 0.0
for _ in range(20):
    Z = fiber_sample()
    img = sigma_cubic(Z).normalized()
    res = np.max(np.abs(fiber_matrix(abc, Z.normalized()) @ img.array()))
    worst = max(worst, float(res))
print("N(Z) sigma(Z) worst:", worst)
assert worst < 1e-10

e0 = proj_point([1, 0, 0, 0], "Z")
assert projective_equal(sigma_cubic(e0), e0)

# sigma^-1 = I0 sigma I0: check sigma(sigma_inv(Z)) = Z on fiber
worst = 0.0
for _ in range(10):
    Z = fiber_sample()
    si = involution("I0", sigma_cubic(involution("I0", Z)))
    back = sigma_cubic(si)
    a, b = back.normalized().array(), Z.normalized().array()
    idx = int(np.argmax(np.abs(a)))
    worst = max(worst, float(np.max(np.abs(a / a[idx] - b / b[idx]))))
print("sigma o sigma_inv worst:", worst)
assert worst < 1e-9

# 5. correspondence behaviors per case
# OddFace line: sigma(z0,z1,0,0) = (z0,-z1,0,0)
ph3 = cases["OddFace"]
sp3 = SklyaninParams.from_phi(ph3)
print("oddface params:", sp3)
p = proj_point([0.3 + 0.2j, 1.1 - 0.4j, 0, 0], "z")
img = sigma_correspondence(sp3, p)
expect = proj_point([p.coords[0], -p.coords[1], 0, 0], "z")
assert projective_equal(img, expect, 1e-9), img.coords
print("oddface line sigma ok")

# OddFace conic exchange
s3 = loci_samples(ph3, "OddFace", rng, n=6)
for pt in s3["conic_plus"]:
    img = sigma_correspondence(sp3, pt)
    z0, z1, z2, z3v = img.coords
    # on which conic: z2 = +-sqrt(beta) z3
    ratio = z2 / (cmath.sqrt(sp3.beta) * z3v)
    assert abs(abs(ratio) - 1) < 1e-8
    assert ratio.real < 0, ratio  # exchanged to the other sheet
print("oddface conic exchange ok")

# Cplus lines: l1, l2 fixed; l3..l6 preserved with multiplier exp(+-2 i phi)
ph7 = cases["Cplus"]
s7 = loci_samples(ph7, "Cplus", rng, n=4)
for nm in ("l1", "l2"):
    for pt in s7[nm]:
        img = sigma_correspondence(ph7, pt)
        assert projective_equal(img, pt, 1e-8), (nm, img.coords, pt.coords)
for nm in ("l3", "l4", "l5", "l6"):
    pt = s7[nm][0]
    img = sigma_correspondence(ph7, pt)
    x0, x1 = pt.coords[0], pt.coords[1]
    y0, y1 = img.coords[0], img.coords[1]
    mult = (y1 / y0) / (x1 / x0)
    print(f"  {nm}: multiplier {mult:.6f} (|.|={abs(mult):.6f}), "
          f"exp(2i phi)={cmath.exp(2j * 0.7):.6f}")
print("cplus line behavior shown")

# Cminus: sigma negates the affine parameter on l1 and l2; l3<->l4 swap
ph8 = cases["Cminus"]
s8 = loci_samples(ph8, "Cminus", rng, n=4)
for pt in s8["l1"]:
    img = sigma_correspondence(ph8, pt)
    expect = proj_point([0, pt.coords[1], 0, -pt.coords[3]], "x")
    assert projective_equal(img, expect, 1e-8), (img.coords, pt.coords)
for pt in s8["l2"]:
    img = sigma_correspondence(ph8, pt)
    expect = proj_point([pt.coords[0], 0, -pt.coords[2], 0], "x")
    assert projective_equal(img, expect, 1e-8), (img.coords, pt.coords)
def on_line_cminus(img, nm):
    x0, x1, x2, x3v = img.coords
    checks = {
        "l3": abs(x2 - x0) + abs(x3v - x1),
        "l4": abs(x2 + x0) + abs(x3v + x1),
        "l5": abs(x2 - x0) + abs(x3v + x1),
        "l6": abs(x2 + x0) + abs(x3v - x1),
    }
    scale = max(abs(v) for v in img.coords)
    return {k: v / scale for k, v in checks.items() if v / scale < 1e-8}
for nm in ("l3", "l4", "l5", "l6"):
    img = sigma_correspondence(ph8, s8[nm][0])
    print(f"  cminus {nm} ->", list(on_line_cminus(img, nm)))

# LineL: l1 pointwise fixed, l2 parameter negated, l3..l6 cyclic
ph4 = cases["LineL"]
s4 = loci_samples(ph4, "LineL", rng, n=4)
for pt in s4["l1"]:
    img = sigma_correspondence(ph4, pt)
    assert projective_equal(img, pt, 1e-8), (img.coords, pt.coords)
for pt in s4["l2"]:
    img = sigma_correspondence(ph4, pt)
    expect = proj_point([pt.coords[0], -pt.coords[1], 0, 0], "x")
    assert projective_equal(img, expect, 1e-8), (img.coords, pt.coords)
def which_line_l(img):
    x0, x1, x2, x3v = img.coords
    scale = max(abs(v) for v in img.coords)
    out = []
    if abs(x0) / scale < 1e-8 and abs(x1) / scale < 1e-8:
        out.append("l1")
    if abs(x2) / scale < 1e-8 and abs(x3v) / scale < 1e-8:
        out.append("l2")
    for nm, (e1, e3) in (("l3", (1, -1j)), ("l4", (1, 1j)),
                         ("l5", (-1, 1j)), ("l6", (-1, -1j))):
        if abs(x1 - e1 * x0) / scale < 1e-8 and abs(x3v - e3 * x2) / scale < 1e-8:
            out.append(nm)
    return out
for nm in ("l3", "l4", "l5", "l6"):
    try:
        img = sigma_correspondence(ph4, s4[nm][0])
        print(f"  lineL {nm} ->", which_line_l(img))
    except DegenerateError as e:
        print(f"  lineL {nm} -> coarse ({e})")

# LineLprime plane: sigma(x0,x1,x2,0) = (-x0,x1,x2,0)
ph5 = cases["LineLprime"]
for pt in loci_samples(ph5, "LineLprime", rng, n=4)["plane"]:
    img = sigma_correspondence(ph5, pt)
    expect = proj_point([-pt.coords[0], pt.coords[1], pt.coords[2], 0], "x")
    assert projective_equal(img, expect, 1e-8), (img.coords, pt.coords)
print("lineLprime plane sigma ok")

# LineLsecond: sigma = id on the hyperplane
ph6 = cases["LineLsecond"]
for pt in loci_samples(ph6, "LineLsecond", rng, n=4)["plane"]:
    img = sigma_correspondence(ph6, pt)
    assert projective_equal(img, pt, 1e-8)
print("lineLsecond sigma = id ok")

# VertexP: sigma = (-x0, x1, x2, x3)
ph9 = cases["VertexP"]
for pt in loci_samples(ph9, "VertexP", rng, n=4)["space"]:
    img = sigma_correspondence(ph9, pt)
    expect = proj_point([-pt.coords[0], *pt.coords[1:]], "x")
    assert projective_equal(img, expect, 1e-8)
print("vertexP sigma ok")

# VertexPprime: rows force sigma = (-x0, x1, x2, -x3)
ph10 = cases["VertexPprime"]
for pt in loci_samples(ph10, "VertexPprime", rng, n=4)["space"]:
    img = sigma_correspondence(ph10, pt)
    expect = proj_point(
        [-pt.coords[0], pt.coords[1], pt.coords[2], -pt.coords[3]], "x")
    assert projective_equal(img, expect, 1e-8)
    m = relation_matrix(ph10, pt)
    assert np.max(np.abs(m @ expect.array())) < 1e-10 * np.max(np.abs(m))
print("vertexPprime kernel sigma ok")

# VertexO: sigma = id
ph11 = cases["VertexO"]
for pt in loci_samples(ph11, "VertexO", rng, n=4)["space"]:
    img = sigma_correspondence(ph11, pt)
    assert projective_equal(img, pt, 1e-8)
print("vertexO sigma = id ok")

# 6. involutions
p = proj_point(rng.standard_normal(4) + 1j * rng.standard_normal(4), "u")
assert projective_equal(involution("I", involution("I", p)), p, 1e-9)
pm = involution("Mhalf", p)
assert pm.role == "Z"
assert projective_equal(involution("Mhalf", pm), p, 1e-12)
try:
    involution("I", proj_point([1, 1, 0, 0], "u"))
    raise SystemExit("singular inversion accepted")
except DegenerateError:
    pass
print("involutions ok")

# 7. quadratic forms
xr = rng.standard_normal(4)
xr /= np.linalg.norm(xr)
px = proj_point(xr, "x")
val = quadratic_form_eval(q_sphere(), px, px)
assert abs(val - 1) < 1e-12
# Qm at (Z, sigma Z) = 0 on the fiber
worst = 0.0
for _ in range(10):
    Z = fiber_sample()
    sZ = sigma_cubic(Z)
    Zn, sn = Z.normalized(), sZ.normalized()
    for k in (1, 2, 3):
        worst = max(worst, abs(quadratic_form_eval(q_m(k, phi), Zn, sn)))
print("Qm(Z, sigmaZ) worst:", worst)
assert worst < 1e-10
stack = np.stack([np.diag(q_m(k, phi).matrix) for k in (1, 2, 3)]).real
print("stacked Qm rank:", np.linalg.matrix_rank(stack))
assert np.linalg.matrix_rank(stack) == 2
# q_x = (prod cos^2) sum t_k s_k Qm(k)
tt, ss = inv.t, inv.s
pc2 = math.prod(math.cos(v) ** 2 for v in phi.phi)
combo = pc2 * sum(tt[k] * ss[k] * q_m(k + 1, phi).matrix for k in range(3))
print("q_x vs combo:", np.max(np.abs(q_x(phi).matrix - combo)))
assert np.max(np.abs(q_x(phi).matrix - combo)) < 1e-12
# P' and Q' diag forms finite
print("Pprime diag:", np.diag(q_pprime(phi).matrix).real)
print("Qprime diag:", np.diag(q_prime(phi).matrix).real)
print("P diag:", np.diag(q_p(phi).matrix).real)

# 8. centrality
worst = 0.0
for _ in range(10):
    Z, Zp = fiber_sample(), fiber_sample()
    worst = max(worst, centrality_residual(q_x(phi), inv.s, Z, Zp))
print("centrality q_x on fiber worst:", worst)
assert worst < 1e-10
# case 7: Q1 not central on l1 x l3
r = centrality_residual(q_sphere(), ph7, s7["l1"][0], s7["l3"][0])
print("case7 Q1 centrality on l1 x l3:", r)
assert r > 1e-3
# Q2 vanishes identically on l2
assert form_vanishes_at(q_two(ph7), s7["l2"][0])
assert not form_vanishes_at(q_two(ph7), s7["l1"][0])
print("Q2 vanishing flags ok")

# 9. change_basis
# uychar -> charZ via y_to_Y
u = np.array([1.0 + 0j, *(cmath.exp(2j * t) for t in phi.phi)])
from ncsphere.moduli import resolvent, u_of_phi
triple, Jres = resolvent(u_of_phi(phi))
a_, b_, c_ = triple.a, triple.b, triple.c
worst = 0.0
for _ in range(10):
    y2 = complex(rng.standard_normal(), rng.standard_normal())
    rhs = np.array([-1 - y2**2, -u[3] ** 2 - u[2] ** 2 * y2**2])
    Mm = np.array([[1, 1], [u[0] ** 2, u[1] ** 2]], dtype=complex)
    y0sq, y1sq = np.linalg.solve(Mm, rhs)
    y = proj_point([cmath.sqrt(y0sq), cmath.sqrt(y1sq), y2, 1.0], "y")
    Y = change_basis("y_to_Y", y, phi)
    Yv = Y.normalized().array()
    r1 = (Yv[0] ** 2 - Yv[1] ** 2) / a_ - (Yv[0] ** 2 - Yv[2] ** 2) / b_
    r2 = (Yv[0] ** 2 - Yv[2] ** 2) / b_ - (Yv[0] ** 2 - Yv[3] ** 2) / c_
    worst = max(worst, abs(r1), abs(r2))
print("y_to_Y charZ residual worst:", worst)
assert worst < 1e-10
# x_to_Y then q_x equals sphere form value
xc = rng.standard_normal(4) + 1j * rng.standard_normal(4)
Y = change_basis("x_to_Y", proj_point(xc, "x"), phi)
lhs = xc @ xc
rhs = complex(Y.array() @ q_x(phi).matrix @ Y.array())
print("sphere form transport:", abs(lhs - rhs))
assert abs(lhs - rhs) < 1e-12
print("ALL VARIETY SMOKE OK")
