"""Independent high-precision reference values for the C++ tests.

Each configuration is re-solved from the planar force balance
    sum_k m_k (q_k - q_j) / r_jk^3 + (q_j - c) = 0
with mpmath Gauss-Newton, seeded from a solutions document. Nothing from the
tetrahedron/sphere machinery is used to converge. From the converged
configuration the script derives:
  - the sigma = 1 length unit,
  - lambda from r_jk^-3 - 1 = lambda A_j A_k with A_j = kappa S_j / m_j and
    kappa fixed by sum m_j A_j^2 = m - m1,
  - the direction n = E diag(m) A / (C mu),
and prints a C++ header with the frozen values.

usage: python central_configurations.py NAME:solutions.json [...] > oracle_values.hpp
"""

import json
import sys

import mpmath as mp

mp.mp.dps = 40

PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def embed(r):
    d = lambda i, j: r[PAIRS.index((min(i, j), max(i, j)))]
    q = [mp.matrix([0, 0]), mp.matrix([d(0, 1), 0])]
    for k in (2, 3):
        x = (d(0, k) ** 2 - d(1, k) ** 2 + d(0, 1) ** 2) / (2 * d(0, 1))
        y = mp.sqrt(max(d(0, k) ** 2 - x**2, mp.mpf(0)))
        q.append(mp.matrix([x, y]))
    lo = mp.matrix([q[3][0], -q[3][1]])
    if abs(mp.norm(lo - q[2]) - d(2, 3)) < abs(mp.norm(q[3] - q[2]) - d(2, 3)):
        q[3] = lo
    return q


def forces(q, m):
    total = sum(m)
    c = sum((m[j] * q[j] for j in range(4)), mp.matrix([0, 0])) / total
    out = []
    for j in range(4):
        f = q[j] - c
        for k in range(4):
            if k != j:
                diff = q[k] - q[j]
                f += m[k] * diff / mp.norm(diff) ** 3
        out.extend([f[0], f[1]])
    return out


def balance(q0, m):
    # unknowns: x2, x3, y3, x4, y4 (particle 1 at origin, particle 2 on the x axis)
    x = mp.matrix([q0[1][0], q0[2][0], q0[2][1], q0[3][0], q0[3][1]])

    def unpack(v):
        return [mp.matrix([0, 0]), mp.matrix([v[0], 0]), mp.matrix([v[1], v[2]]), mp.matrix([v[3], v[4]])]

    for _ in range(60):
        F = mp.matrix(forces(unpack(x), m))
        J = mp.matrix(8, 5)
        h = mp.mpf(10) ** (-25)
        for i in range(5):
            xp = x.copy()
            xp[i] += h
            Fp = mp.matrix(forces(unpack(xp), m))
            for k in range(8):
                J[k, i] = (Fp[k] - F[k]) / h
        step = mp.lu_solve(J.T * J, J.T * F)
        x -= step
        if mp.norm(step) < mp.mpf(10) ** (-32):
            break
    q = unpack(x)
    return q, max(abs(v) for v in forces(q, m))


def tetrahedron(m):
    m1, m2, m3, m4 = m
    M = sum(m)
    mu = mp.cbrt(m1 * m2 * m3 * m4 / M)
    low = -mp.sqrt(mu * m1 / ((M - m1) * M))
    side = -mp.sqrt(mu * m2 / ((m3 + m4) * (M - m1)))
    E = mp.matrix(
        [
            [0, 0, mp.sqrt(mu * m4 / (m3 * (m3 + m4))), -mp.sqrt(mu * m3 / (m4 * (m3 + m4)))],
            [0, mp.sqrt(mu * (m3 + m4) / (m2 * (M - m1))), side, side],
            [mp.sqrt(mu * (M - m1) / (m1 * M)), low, low, low],
        ]
    )
    return E, mu


def derive(q, m):
    r = [mp.norm(q[i] - q[j]) for i, j in PAIRS]
    num = sum(m[i] * m[j] / rij for (i, j), rij in zip(PAIRS, r))
    den = sum(m[i] * m[j] * rij**2 for (i, j), rij in zip(PAIRS, r))
    s = mp.cbrt(num / den)
    r = [rij * s for rij in r]
    q = [p * s for p in q]

    def det3(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])

    S = [det3(q[1], q[2], q[3]), det3(q[0], q[3], q[2]), det3(q[0], q[1], q[3]), det3(q[0], q[2], q[1])]
    M = sum(m)
    kappa = mp.sqrt((M - m[0]) / sum(S[j] ** 2 / m[j] for j in range(4)))
    A = [kappa * S[j] / m[j] for j in range(4)]
    lams = [(rij ** (-3) - 1) / (A[i] * A[j]) for (i, j), rij in zip(PAIRS, r)]
    lam = lams[0]
    spread = max(abs(v - lam) for v in lams)

    E, mu = tetrahedron(m)
    C = mp.sqrt((M - m[0]) / mu)
    n = E * mp.matrix([m[j] * A[j] for j in range(4)]) / (C * mu)
    if n[2] < 0:
        n = -n
        A = [-a for a in A]
    theta = mp.atan2(mp.sqrt(n[0] ** 2 + n[1] ** 2), n[2])
    phi = mp.atan2(n[1], n[0])
    if phi < 0:
        phi += 2 * mp.pi
    return dict(lam=lam, spread=spread, theta=theta, phi=phi, r=r, norm=mp.norm(n), S=S)


def kind_of(S):
    pos = [j for j in range(4) if S[j] > 0]
    neg = [j for j in range(4) if S[j] < 0]
    if len(pos) == 1 or len(neg) == 1:
        return "concave_%d" % ((pos if len(pos) == 1 else neg)[0] + 1)
    same = pos if 0 in pos else neg
    p = [k for k in same if k != 0][0]
    rest = sorted(set(range(4)) - {0, p})
    return "convex_1%d_%d%d" % (p + 1, rest[0] + 1, rest[1] + 1)


def main():
    print("#pragma once")
    print("// Generated by tests/oracles/central_configurations.py; do not edit.")
    print()
    print("#include <array>")
    print("#include <string_view>")
    print()
    print("namespace ccfour::oracle {")
    print()
    print("struct Solution {")
    print("  std::string_view kind;")
    print("  double lambda;")
    print("  double theta;")
    print("  double phi;")
    print("  std::array<double, 6> r;")
    print("};")
    for arg in sys.argv[1:]:
        name, path = arg.split(":", 1)
        doc = json.load(open(path))
        m = [mp.mpf(x) for x in doc["masses"]]
        rows = []
        for rec in doc["solutions"]:
            seed = [mp.mpf(rec["distances"][k]) for k in ("r12", "r13", "r14", "r23", "r24", "r34")]
            q, residual = balance(embed(seed), m)
            d = derive(q, m)
            assert residual < mp.mpf(10) ** (-30), residual
            assert d["spread"] < mp.mpf(10) ** (-30), d["spread"]
            assert abs(d["norm"] - 1) < mp.mpf(10) ** (-30), d["norm"]
            rows.append((kind_of(d["S"]), d))
        rows.sort(key=lambda t: (float(t[1]["lam"]), t[0]))
        print()
        print("// masses %s; force balance residual < 1e-30 for every entry" % ",".join(str(x) for x in doc["masses"]))
        print("inline constexpr std::array<Solution, %d> %s{{" % (len(rows), name))
        for kind, d in rows:
            r = ", ".join(mp.nstr(v, 17) for v in d["r"])
            print(
                '    {"%s", %s, %s, %s, {%s}},'
                % (kind, mp.nstr(d["lam"], 17), mp.nstr(d["theta"], 17), mp.nstr(d["phi"], 17), r)
            )
        print("}};")
    print()
    print("}  // namespace ccfour::oracle")


if __name__ == "__main__":
    main()
