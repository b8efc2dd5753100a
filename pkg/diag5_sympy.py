"""Exact derivation of the bilinear-ratio identities, all in tangent
variables where every ingredient is rational."""

import sympy as sp

t1, t2, t3, x = sp.symbols("t1 t2 t3 x")

s1 = 1 + t2 * t3
s2 = 1 + t1 * t3
s3 = 1 + t1 * t2

Zs = [x, x - s1, x - s2, x - s3]
b = t2 * t3 / s1

# rat2 forms, divided by the common cos^2 product:
# p_k = t_k (t_l - t_m)(1 - t_l t_m + t_k t_l + t_k t_m)
# q_0 = -(t1-t2)(t1-t3)(t2-t3), q_k = -(1 + t_k^2)(t_l - t_m)
Pd = [sp.Integer(0),
      t1 * (t2 - t3) * (1 - t2 * t3 + t1 * t2 + t1 * t3),
      t2 * (t3 - t1) * (1 - t3 * t1 + t2 * t3 + t2 * t1),
      t3 * (t1 - t2) * (1 - t1 * t2 + t3 * t1 + t3 * t2)]
Qd = [-(t1 - t2) * (t1 - t3) * (t2 - t3),
      -(1 + t1 ** 2) * (t2 - t3),
      -(1 + t2 ** 2) * (t3 - t1),
      -(1 + t3 ** 2) * (t1 - t2)]

sg2 = [-1, 1, -1, 1]  # I2 o I0
num2 = sp.expand(sum(sg * d * Z for sg, d, Z in zip(sg2, Pd, Zs)))
den2 = sp.expand(sum(sg * d * Z for sg, d, Z in zip(sg2, Qd, Zs)))

U = sp.factor(b * num2.coeff(x, 1))
V = sp.factor(b * num2.coeff(x, 0))
C = sp.factor(den2.coeff(x, 1))
D = sp.factor(den2.coeff(x, 0))
print("rat2 lhs = (U x + V)/(C x + D):")
print("  U =", U)
print("  V =", V)
print("  C =", C)
print("  D =", D)

# match denominator to (1+c) x - (s3 + c s2):  c = (-C s3 - D)/(D + C s2)
c_sol = sp.factor(sp.cancel((-C * s3 - D) / (D + C * s2)))
print("  c =", c_sol)
# candidate tan(p2) cot(p2 - p1) = t2 (1 + t1 t2)/(t2 - t1)
print("  c - t2(1+t1t2)/(t2-t1) =",
      sp.simplify(c_sol - t2 * (1 + t1 * t2) / (t2 - t1)))

rho = sp.cancel((1 + c_sol) / C)
uv_plus = sp.factor(sp.cancel(rho * U))
mix = sp.cancel(-rho * V)
v_sol = sp.factor(sp.cancel((mix - uv_plus * s3) / (c_sol * s2)))
u_sol = sp.factor(sp.cancel(uv_plus - v_sol))
print("  u =", u_sol)
print("  v =", v_sol)

subs = {t1: sp.tan(0.4), t2: sp.tan(0.8), t3: sp.tan(1.1)}
print("  numeric (0.4,0.8,1.1):", float(u_sol.subs(subs)),
      float(c_sol.subs(subs)), float(v_sol.subs(subs)))
print("  fit expected:          +0.28943934 +2.43532420 +0.28293404")
subs_d = {t1: sp.tan(1.1), t2: sp.tan(0.8), t3: sp.tan(0.4)}
print("  numeric (1.1,0.8,0.4):", float(u_sol.subs(subs_d)),
      float(c_sol.subs(subs_d)), float(v_sol.subs(subs_d)))
print("  fit expected:          -0.33648942 -3.32854154 +0.59589842")

print()
print("rat1 with primed forms, j = I3 o I0:")
J23 = -t1 * (t2 - t3) / (1 + t2 * t3)
J31 = -t2 * (t3 - t1) / (1 + t3 * t1)
J12 = -t3 * (t1 - t2) / (1 + t1 * t2)


def qm_diag(m):
    k, l = {3: (1, 2), 1: (2, 3), 2: (3, 1)}[m]
    Jkl = {(1, 2): J12, (2, 3): J23, (3, 1): J31}[(k, l)]
    d = [Jkl, sp.Integer(0), sp.Integer(0), sp.Integer(0)]
    d[m] = Jkl
    d[k] = sp.Integer(1)
    d[l] = sp.Integer(-1)
    return d


Q1_ = qm_diag(1)
Q2_ = qm_diag(2)
Q3_ = qm_diag(3)
Ppr = [a + c0 for a, c0 in zip(Q1_, Q3_)]
Qpr = [a + c0 + s2 * bq for a, c0, bq in zip(Q1_, Q3_, Q2_)]

sg3 = [-1, 1, 1, -1]  # I3 o I0
num1 = sp.together(sum(sg * d * Z for sg, d, Z in zip(sg3, Ppr, Zs)))
den1 = sp.together(sum(sg * d * Z for sg, d, Z in zip(sg3, Qpr, Zs)))
a_const = ((1 + t1 * t2) / (t1 - t2)) * ((1 + t1 * t3) / (t1 - t3))
lhs1 = b * num1 / den1
rhs1 = Zs[0] / (Zs[0] + a_const * Zs[1]) - 1 / s1
diff1 = sp.cancel(sp.together(lhs1 - rhs1))
print("  lhs1 - rhs1 =", sp.factor(sp.simplify(diff1)))

# note: primed forms carry 1/s overall; it cancels in the ratio, so the
# diag entries above omit the 1/s factor on both.
