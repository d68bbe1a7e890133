"""Independent high-precision reference values frozen into the C++ tests.

Run with: python3 tests/oracles/compute_oracles.py
Uses mpmath only; shares no code with the library.
"""
import mpmath as mp

mp.mp.dps = 50

KAPPA, THETA, SIGMA, RHO = mp.mpf("1.15"), mp.mpf("0.348"), mp.mpf("0.39"), mp.mpf("-0.64")
R, S0, V0 = mp.mpf("0.05"), mp.mpf(100), mp.mpf("0.09")


def ml(a, b, z, terms=400):
    a, b, z = mp.mpf(a), mp.mpf(b), mp.mpf(z)
    return mp.fsum(z**n / mp.gamma(a * n + b) for n in range(terms))


def ml_exact(a, b, z):
    """Series at a working precision high enough to absorb the cancellation,
    summed until the terms are past their peak and negligible."""
    a, b, z = mp.mpf(a), mp.mpf(b), mp.mpf(z)
    peak = abs(z) ** (1 / a)
    with mp.workdps(int(40 + peak / 2.3)):
        total, n = mp.mpf(0), 0
        while True:
            term = z**n / mp.gamma(a * n + b)
            total += term
            if n > 2 * peak / a + 10 and abs(term) < mp.mpf(10) ** (-mp.mp.dps):
                return +total
            n += 1


def show(name, v):
    print(f"{name:48s} {mp.nstr(v, 20)}")


# Mittag-Leffler values; the alternating series needs hundreds of digits for large |z|.
for (a_, b_, z_) in [("0.75", "0.75", -1), ("0.6", 1, -5), ("0.6", "0.6", -12), ("0.75", 1, -30),
                     ("0.6", 1, -50), ("0.9", "0.9", -20), ("0.6", "0.6", "-0.5")]:
    show(f"ML({a_},{b_},{z_})", ml_exact(a_, b_, z_))

# Kernel / resolvent / forward variance.
a = mp.mpf("0.75")
show("kernel(0.75, t=1)", 1 / mp.gamma(a))
show("R_kappa classical t=1", KAPPA * mp.exp(-KAPPA))
t = mp.mpf("0.5")
show("R_kappa frac a=.75 t=.5", KAPPA * t ** (a - 1) * ml(a, a, -KAPPA * t**a))
show("xi0 classical tau=1", THETA + (V0 - THETA) * mp.exp(-KAPPA))
int_r = mp.quad(lambda y: KAPPA * y ** (a - 1) * ml(a, a, -KAPPA * y**a), [0, 1])
show("int_0^1 R frac a=.75 (quad)", int_r)
show("xi0 frac a=.75 tau=1", V0 + (THETA - V0) * int_r)
show("xi0 frac a=.75 tau=1 (ML form)", V0 + (THETA - V0) * (1 - ml(a, 1, -KAPPA)))

# Q-form arithmetic.
f1, f2 = mp.mpf("0.5"), mp.mpf("-0.2")
show("q_form(0.5,-0.2)", (f1 * f1 - f1) / 2 + SIGMA * RHO * f1 * f2 + SIGMA**2 * f2**2 / 2)


# Classical joint transform via the time-inverted ODE, Taylor integrator.
def classical_psi(s, w, T):
    s, w, T = mp.mpc(s), mp.mpc(w), mp.mpf(T)
    z0 = s * (mp.log(S0) + R * T / 2 - KAPPA * THETA * RHO * T / (2 * SIGMA) - RHO / SIGMA * V0) + \
        w * (mp.log(S0) + R * T - KAPPA * THETA * RHO * T / SIGMA - RHO / SIGMA * V0)
    z1 = s * s * (1 - RHO**2) / (2 * T * T)
    z2 = s * (2 * RHO * KAPPA - SIGMA) / (2 * SIGMA * T) + s * w * (1 - RHO**2) / T
    z3 = s * RHO / (SIGMA * T) + w * (2 * RHO * KAPPA - SIGMA) / (2 * SIGMA) + w * w * (1 - RHO**2) / 2
    z4 = RHO * w / SIGMA
    f = lambda y, st: [z1 * y * y + z2 * y + z3 - KAPPA * st[0] + SIGMA**2 / 2 * st[0] ** 2,
                       KAPPA * THETA * st[0]]
    sol = mp.odefun(f, 0, [z4, mp.mpc(0)])
    c, d = sol(T)
    return mp.exp(z0 + V0 * c + d), c


for (s, w, T) in [(1, 0, "0.5"), (1, 0, 1), ("0.5", "0.5", 1), ("0.25", "0.5", 3), (0, 1, 1)]:
    v, c = classical_psi(s, w, T)
    show(f"psiCH({s},{w},T={T})", v)
    show(f"  phi2(T)=C(T)-rho/sigma*(s+w)", c - RHO / SIGMA * (mp.mpf(s) + mp.mpf(w)))
v, _ = classical_psi(mp.mpc(0, 1), 0, 1)
show("psiCH(i,0,T=1) re", v.real)
show("psiCH(i,0,T=1) im", v.imag)


# Classical Heston log-spot CF (Albrecher form) and Gil-Pelaez call price.
def heston_cf(u, T):
    iu = 1j * u
    b = KAPPA - RHO * SIGMA * iu
    d = mp.sqrt(b * b + SIGMA**2 * (iu + u * u))
    g = (b - d) / (b + d)
    e = mp.exp(-d * T)
    C = iu * (mp.log(S0) + R * T) + KAPPA * THETA / SIGMA**2 * ((b - d) * T - 2 * mp.log((1 - g * e) / (1 - g)))
    D = (b - d) / SIGMA**2 * (1 - e) / (1 - g * e)
    return mp.exp(C + D * V0)


def heston_call(K, T):
    K, T = mp.mpf(K), mp.mpf(T)
    lk = mp.log(K)
    norm = heston_cf(-1j, T)
    p1 = mp.mpf(1) / 2 + mp.quad(lambda u: (mp.exp(-1j * u * lk) * heston_cf(u - 1j, T) / (1j * u * norm)).real, [0, 10, 50, 200]) / mp.pi
    p2 = mp.mpf(1) / 2 + mp.quad(lambda u: (mp.exp(-1j * u * lk) * heston_cf(u, T) / (1j * u)).real, [0, 10, 50, 200]) / mp.pi
    return S0 * p1 - mp.exp(-R * T) * K * p2


mp.mp.dps = 30
for T in ["0.5", "1"]:
    for K in [90, 100, 110]:
        show(f"heston call T={T} K={K}", heston_call(K, T))
cf = heston_cf(1, mp.mpf("0.5"))
show("heston cf u=1 T=0.5 re", cf.real)
show("heston cf u=1 T=0.5 im", cf.imag)

# Black-Scholes with deterministic integrated variance (sigma -> 0).
T, K = mp.mpf(1), mp.mpf(100)
iv = THETA * T + (V0 - THETA) * (1 - mp.exp(-KAPPA * T)) / KAPPA
d1 = (mp.log(S0 / K) + R * T + iv / 2) / mp.sqrt(iv)
d2 = d1 - mp.sqrt(iv)
show("BS call integrated var T=1 K=100", S0 * mp.ncdf(d1) - K * mp.exp(-R * T) * mp.ncdf(d2))
