"""High-precision derivation of the constants frozen into the C++ tests.

Independent of the C++ pipeline: roots come from mpmath.polyroots on the
expanded trigonometric polynomial, the D(mu) Gram matrix from the closed-form
entries, and S(z, u) from the raw (non-deflated) expansion
    S = q(z)q(u)* - p(z)p(u)* [1 + (1 - z u*) sum_ij conj(B_ji)/(O'_j conj(O'_i)(z - zeta_j)(u* - conj(zeta_i)))]
evaluated away from the atoms.

Run: python3 tests/oracles/derive_constants.py
"""
import mpmath as mp

mp.mp.dps = 40


def trig_coeffs(points, weights):
    # Laurent coefficients t_m, m = -k..k, of prod|z-zeta|^2 + sum_j c_j prod_{i!=j}|z-zeta_i|^2
    def factor(zeta):
        # |z - zeta|^2 = -conj(zeta) z^{-1}... as dict m -> coeff : 2 - conj(zeta) z - zeta z^{-1}
        return {0: mp.mpf(2), 1: -mp.conj(zeta), -1: -zeta}

    def mul(a, b):
        out = {}
        for i, x in a.items():
            for j, y in b.items():
                out[i + j] = out.get(i + j, 0) + x * y
        return out

    def add(a, b, s=1):
        out = dict(a)
        for j, y in b.items():
            out[j] = out.get(j, 0) + s * y
        return out

    total = {0: mp.mpf(1)}
    for z in points:
        total = mul(total, factor(z))
    for j, c in enumerate(weights):
        term = {0: mp.mpf(c)}
        for i, z in enumerate(points):
            if i != j:
                term = mul(term, factor(z))
        total = add(total, term)
    return total


def pipeline(points, weights):
    k = len(points)
    t = trig_coeffs(points, weights)
    # z^k t(z), descending coefficients for polyroots
    desc = [t.get(m, 0) for m in range(k, -k - 1, -1)]
    roots = mp.polyroots(desc, maxsteps=200, extraprec=200)
    alphas = sorted([r for r in roots if abs(r) > 1], key=lambda r: (float(mp.arg(r)), float(abs(r))))
    z0 = mp.expj(mp.mpf('0.7'))
    tz0 = sum(c * z0 ** m for m, c in t.items())
    prod = 1
    for a in alphas:
        prod *= abs(z0 - a) ** 2
    d = mp.re(tz0) / prod

    def q(z):
        r = 1
        for a in alphas:
            r *= (z - a)
        return r

    def praw(z):
        r = 1
        for s in points:
            r *= (z - s)
        return r

    # theta: p(0)/q(0) > 0
    ratio = praw(0) / q(0)
    phase = mp.conj(ratio) / abs(ratio)
    scale = phase / mp.sqrt(d)

    def p(z):
        return scale * praw(z)

    def defl(j, z):
        r = scale
        for i, s in enumerate(points):
            if i != j:
                r *= (z - s)
        return r

    Op = [defl(j, points[j]) / q(points[j]) for j in range(k)]

    def f(j, z):
        return defl(j, z) / (Op[j] * q(z))

    D = mp.matrix(k, k)
    for i in range(k):
        for j in range(k):
            if i == j:
                D[i, i] = weights[i] * points[i] * mp.diff(lambda zz: f(i, zz), points[i])
            else:
                D[i, j] = 1 / (Op[i] * mp.conj(Op[j]) * (1 - points[i] * mp.conj(points[j])))
    B = D ** -1

    def S(z, u):
        acc = 0
        for i in range(k):
            for j in range(k):
                acc += mp.conj(B[j, i]) / (Op[j] * mp.conj(Op[i])) / ((z - points[j]) * (mp.conj(u) - mp.conj(points[i])))
        return q(z) * mp.conj(q(u)) - p(z) * mp.conj(p(u)) * (1 + (1 - z * mp.conj(u)) * acc)

    return dict(t=t, alphas=alphas, d=d, Op=Op, D=D, B=B, S=S, p=p, q=q, f=f)


def turns(ts):
    return [mp.expj(2 * mp.pi * mp.mpf(a) / mp.mpf(b)) for a, b in ts]


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


if __name__ == "__main__":
    w = mp.expj(2 * mp.pi / 3)
    b = (11 + 3 * mp.sqrt(13)) / 2
    alpha = mp.cbrt(b)
    x = -(2 + b) / (1 - b)
    s = 1 / (w - 1)
    print("# equi-spaced three-point measure, unit weights")
    show("alpha", alpha); show("b", b); show("d", 1 / b); show("x", x)
    show("x_closed (sqrt13-1)/2", (mp.sqrt(13) - 1) / 2)
    show("x(x+1)", x * (x + 1)); show("x(x-1)", x * (x - 1)); show("4-sqrt13", 4 - mp.sqrt(13))
    c3 = (1 - b) + 3 * b / (x + 1); c2 = 3 * b / (x * (x + 1)); c1 = 3 * b / (x * (x - 1))
    show("c3", c3); show("c2", c2); show("c1", c1)
    show("detD closed", x * (x * x - 1))
    Y = alpha ** 2 * mp.conj(w)
    S_closed = Y * (c3 * Y ** 2 + c2 * Y + c1)
    show("|S(alpha, alpha w)| closed", abs(S_closed))
    show("S(alpha,alpha) closed", alpha ** 2 * (c3 * alpha ** 4 + c2 * alpha ** 2 + c1))
    P = pipeline(turns([(0, 1), (1, 3), (2, 3)]), [1, 1, 1])
    print("alphas", [mp.nstr(a, 15) for a in P["alphas"]]); show("d", P["d"])
    show("det D pipeline", mp.det(P["D"]))
    a1 = P["alphas"]
    # alpha real positive is at arg 0
    ar = [a for a in a1 if abs(mp.arg(a)) < 1e-20][0]
    show("|S(alpha,alpha w)| raw", abs(P["S"](ar, ar * w)))
    show("S(alpha,alpha w) re", mp.re(P["S"](ar, ar * w))); show("S(alpha,alpha w) im", mp.im(P["S"](ar, ar * w)))
    show("S(alpha,alpha)", mp.re(P["S"](ar, ar)))
    for name, pts, wts in [("delta_1", [(0, 1)], [1]), ("antipodal", [(0, 1), (1, 2)], [1, 1]),
                           ("{1,i}", [(0, 1), (1, 4)], [1, 1])]:
        print("#", name)
        Q = pipeline(turns(pts), wts)
        print(" t", {m: mp.nstr(c, 12) for m, c in sorted(Q["t"].items()) if abs(c) > 1e-30})
        print(" alphas", [mp.nstr(a, 15) for a in Q["alphas"]]); show(" d", Q["d"])
        print(" D", [[mp.nstr(Q["D"][i, j], 12) for j in range(len(pts))] for i in range(len(pts))])
        al = Q["alphas"]
        for r in range(len(al)):
            for tt in range(len(al)):
                v = Q["S"](al[r], al[tt])
                print(f"  S(a{r},a{tt}) = {mp.nstr(v, 16)}  |.|={mp.nstr(abs(v), 16)}")
