"""Jacobi theta, unary theta g_{a,b}, and the eta-theta catalogue.

The catalogue covers the thirteen even weight-1/2 functions, the six odd
weight-3/2 functions, their partial-theta cousins on the lower half
plane, and the bridging identities that express theta specializations as
even catalogue members and the odd members as combinations of g_{a,b}.
"""

import math
from fractions import Fraction

from mpmath import mp, mpc

from .precision import series_eps
from .qseries import (
    FormalQSeries,
    e2pi,
    eta,
    eta_multiplier,
    eta_quotient_qexp,
    kronecker,
)

Fr = Fraction


def jacobi_theta(v, tau, representation="product"):
    """Jacobi theta of characteristic (1/2, 1/2) at (v, tau).

    The triple product is the default evaluator (stabler near the zeros);
    representation="sum" runs the defining series instead.
    """
    v = mpc(v)
    tau = mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must have positive imaginary part")
    if representation == "sum":
        return _theta_sum(v, tau)
    q = e2pi(tau)
    zeta = e2pi(v)
    eps = series_eps()
    prod = mpc(1) - zeta  # n = 1 factor (1 - zeta q^{n-1})
    qn = q
    quiet = 0
    big = max(abs(zeta), abs(1 / zeta), mp.one)
    for _ in range(10 ** 6):
        prod *= (1 - qn) * (1 - zeta * qn) * (1 - qn / zeta)
        scale = abs(qn) * big
        qn *= q
        if scale < eps:
            quiet += 1
            if quiet >= 5:
                break
        else:
            quiet = 0
    else:
        raise RuntimeError("theta product failed to converge")
    return -1j * e2pi(tau / 8) * mp.exp(-1j * mp.pi * v) * prod


def _theta_sum(v, tau):
    # q^{nu^2/2} = q8^{(2n+1)^2} for nu = n + 1/2, with q8 = e(tau/8)
    q8 = e2pi(tau / 8)
    eps = series_eps()
    y = tau.imag
    center = int(mp.nint(-v.imag / y - 0.5))
    total = mpc(0)
    for direction in (0, 1):
        quiet = 0
        n = center + direction
        while True:
            nu = n + mp.mpf(0.5)
            term = e2pi(nu * (v + 0.5)) * q8 ** ((2 * n + 1) ** 2)
            total += term
            if abs(term) < eps:
                quiet += 1
                if quiet >= 5:
                    break
            else:
                quiet = 0
            n = n + 1 if direction else n - 1
            if abs(n - center) > 10 ** 5:
                raise RuntimeError("theta sum failed to converge")
    return total


def theta_prime_zero(tau):
    """d/dv of jacobi_theta at v = 0, via the eta-cube identity."""
    return -2 * mp.pi * eta(tau) ** 3


def jacobi_theta_transform(v, tau, lam, mu, gamma):
    """Predicted theta value at ((v+lam*tau+mu)/(c*tau+d), gamma*tau).

    Built from jacobi_theta(v, tau) with the elliptic shift law and the
    modular law with multiplier psi(gamma)^3; for comparison against
    direct evaluation at the transformed point.
    """
    v = mpc(v)
    tau = mpc(tau)
    base = jacobi_theta(v, tau)
    w = v + lam * tau + mu
    pred = (-1) ** (lam + mu) * e2pi(-tau * lam ** 2 / 2) * mp.exp(-2j * mp.pi * lam * v) * base
    cd = gamma.c * tau + gamma.d
    psi3 = eta_multiplier(gamma).value() ** 3
    return psi3 * mp.sqrt(cd) * mp.exp(1j * mp.pi * gamma.c * w ** 2 / cd) * pred


def _g_direct(a, b, tau):
    af = mp.mpf(a.numerator) / a.denominator if isinstance(a, Fraction) else mp.mpf(a)
    bf = mp.mpf(b.numerator) / b.denominator if isinstance(b, Fraction) else mp.mpf(b)
    y = tau.imag
    eps = series_eps()
    center = int(mp.nint(-af))
    total = mpc(0)
    for direction in (0, 1):
        quiet = 0
        n = center + direction
        while True:
            na = n + af
            term = na * e2pi(bf * na) * e2pi(tau * na ** 2 / 2)
            total += term
            if abs(term) < eps and abs(na) * mp.exp(-mp.pi * y * na ** 2) < eps:
                quiet += 1
                if quiet >= 5:
                    break
            else:
                quiet = 0
            n = n + 1 if direction else n - 1
            if abs(n - center) > 10 ** 5:
                raise RuntimeError("unary theta sum failed to converge")
    return total


def g_ab(spec, tau):
    """Unary theta g_{a,b}(tau) for spec = (a, b).

    Reduces tau to the fundamental domain with the translation and
    inversion laws first, so the sum converges fast even for Im(tau)
    close to zero (needed by the period integrals).
    """
    a, b = spec
    exact = isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction))
    if exact:
        a, b = Fr(a), Fr(b)
    else:
        a, b = mp.mpf(a), mp.mpf(b)
    tau = mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must have positive imaginary part")
    factor = mpc(1)
    for _ in range(10 ** 4):
        n = int(mp.nint(tau.real))
        if n != 0:
            # g_{a,b}(sigma + n) = e^{-pi i n a(a+1)} g_{a, b + n(a+1/2)}(sigma)
            tau = tau - n
            factor *= e2pi(Fr(-n) * a * (a + 1) / 2) if exact else e2pi(-n * a * (a + 1) / 2)
            b = b + n * (a + Fr(1, 2) if exact else a + 0.5)
        if abs(tau) >= 1 - mp.mpf(10) ** (-mp.dps):
            break
        # g_{a,b}(-1/t) = i e^{2 pi i a b} (-i t)^{3/2} g_{b,-a}(t)
        t = -1 / tau
        factor *= 1j * e2pi(a * b) * (-1j * t) ** mp.mpf("1.5")
        a, b = b, -a
        tau = t
    else:
        raise RuntimeError("unary theta reduction failed to terminate")
    # normalize a mod 1 (free) and b mod 1 (costs the phase e(a*floor(b)))
    ka = math.floor(a)
    a = a - ka
    kb = math.floor(b)
    if kb:
        factor *= e2pi(a * kb)
        b = b - kb
    return factor * _g_direct(a, b, tau)


# even catalogue: eta-quotient factors, summation domain, character
_EVEN = {
    1: ([(1, 2), (2, -1)], "Z", lambda n: Fr((-1) ** n)),
    2: ([(2, 5), (1, -2), (4, -2)], "Z", lambda n: Fr(1)),
    3: ([(24, 1)], "N", lambda n: Fr(kronecker(12, n))),
    4: ([(48, 1), (72, 2), (24, -1), (144, -1)], "N", lambda n: Fr(kronecker(n, 6) ** 2)),
    5: ([(8, 1), (32, 1), (16, -1)], "N", lambda n: Fr(kronecker(2, n))),
    6: ([(16, 2), (8, -1)], "N", lambda n: Fr(kronecker(n, 2) ** 2)),
    7: ([(3, 1), (18, 2), (6, -1), (9, -1)], "N",
        lambda n: Fr(2 * kronecker(n, 6) ** 2 - kronecker(n, 3) ** 2)),
    8: ([(6, 2), (9, 1), (36, 1), (3, -1), (12, -1), (18, -1)], "N",
        lambda n: Fr(kronecker(n, 3) ** 2)),
    9: ([(48, 3), (24, -1), (96, -1)], "N", lambda n: Fr(kronecker(24, n))),
    10: ([(24, 1), (96, 1), (144, 5), (48, -2), (72, -2), (288, -2)], "N",
         lambda n: Fr(kronecker(18, n))),
    11: ([(1, 1), (4, 1), (6, 2), (2, -1), (3, -1), (12, -1)], "Z",
         lambda n: 1 - Fr(3, 2) * kronecker(n, 3) ** 2),
    12: ([(2, 2), (3, 1), (1, -1), (6, -1)], "Z",
         lambda n: 1 - 2 * Fr(kronecker(n, 2) ** 2) - Fr(3, 2) * kronecker(n, 3) ** 2
         + 3 * Fr(kronecker(n, 6) ** 2)),
    13: ([(8, 2), (48, 1), (16, -1), (24, -1)], "N",
         lambda n: Fr(3 * kronecker(n, 6) ** 2 - 2 * kronecker(n, 2) ** 2)),
}

# odd catalogue: eta-quotient factors, character (without the weight-n factor)
_ODD = {
    1: ([(8, 3)], lambda n: Fr(kronecker(-4, n))),
    2: ([(16, 9), (8, -3), (32, -3)], lambda n: Fr(kronecker(-2, n))),
    3: ([(3, 2), (12, 2), (6, -1)], lambda n: Fr(kronecker(n, 3))),
    4: ([(48, 13), (24, -5), (96, -5)], lambda n: Fr(kronecker(-6, n))),
    5: ([(24, 5), (48, -2)], lambda n: Fr(kronecker(n, 12))),
    6: ([(6, 5), (3, -2)], lambda n: Fr(2 * kronecker(n, 12) - kronecker(n, 3))),
}


def _parse_label(label):
    """Accept 'e7', 'E3', or ('even', 7) style labels."""
    if isinstance(label, tuple):
        kind, index = label
    else:
        s = str(label).replace("_", "")
        kind = "odd" if s[0] == "E" else "even"
        index = int(s[1:])
    if kind == "even" and index in _EVEN:
        return kind, index
    if kind == "odd" and index in _ODD:
        return kind, index
    raise ValueError("unknown eta-theta label {!r}".format(label))


def eta_theta_eval(label, tau, representation="eta-quotient"):
    """Evaluate a catalogue member at tau via either representation."""
    kind, index = _parse_label(label)
    tau = mpc(tau)
    if representation == "eta-quotient":
        factors = _EVEN[index][0] if kind == "even" else _ODD[index][0]
        out = mpc(1)
        for scale, power in factors:
            out *= eta(scale * tau) ** power
        return out
    if representation != "character-sum":
        raise ValueError("unknown representation {!r}".format(representation))
    q = e2pi(tau)
    eps = series_eps()
    if kind == "even":
        _, domain, chi = _EVEN[index]
        weight = 0
    else:
        _, chi = _ODD[index]
        domain, weight = "N", 1
    total = mpc(0) if kind == "odd" or domain == "N" else mpc(1)  # n = 0 term
    if kind == "even" and domain == "Z":
        total = mpc(chi(0).numerator) / chi(0).denominator
    quiet = 0
    n = 1
    while n < 10 ** 5:
        c = chi(n) + (chi(-n) if domain == "Z" else 0)
        qn = q ** (n * n)
        if c:
            total += (mpc(c.numerator) / c.denominator) * (n ** weight) * qn
        if abs(qn) * max(n, 1) < eps:
            quiet += 1
            if quiet >= 5:
                return total
        else:
            quiet = 0
        n += 1
    raise RuntimeError("character sum failed to converge")


def eta_theta_qexp(label, order, representation="eta-quotient"):
    """Exact q-expansion of a catalogue member, truncated at `order`."""
    kind, index = _parse_label(label)
    order = Fraction(order)
    if representation == "eta-quotient":
        factors = _EVEN[index][0] if kind == "even" else _ODD[index][0]
        return eta_quotient_qexp(factors, order)
    if representation != "character-sum":
        raise ValueError("unknown representation {!r}".format(representation))
    bound = math.isqrt(math.ceil(order * 24)) + 2
    pairs = []
    if kind == "even":
        _, domain, chi = _EVEN[index]
        rng = range(-bound, bound + 1) if domain == "Z" else range(1, bound + 1)
        pairs = [(n * n, chi(n)) for n in rng]
    else:
        _, chi = _ODD[index]
        pairs = [(n * n, chi(n) * n) for n in range(1, bound + 1)]
    return FormalQSeries.from_terms(pairs, order)


# Lemma-style theta specializations: each even label e_n for n <= 8 equals
# prefactor * q^power * e_n(scale * tau) with theta argument coef*tau + shift.
_THETA_ROWS = {
    1: (Fr(1, 2), Fr(0), -1j, Fr(-1, 8), Fr(1, 2)),
    2: (Fr(1, 2), Fr(-1, 2), 1, Fr(-1, 8), Fr(1, 2)),
    3: (Fr(1, 3), Fr(0), -1j, Fr(-1, 18), Fr(1, 72)),
    4: (Fr(1, 3), Fr(-1, 2), 1, Fr(-1, 18), Fr(1, 72)),
    5: (Fr(1, 4), Fr(0), -1j, Fr(-1, 32), Fr(1, 32)),
    6: (Fr(1, 4), Fr(-1, 2), 1, Fr(-1, 32), Fr(1, 32)),
    7: (Fr(1, 6), Fr(0), -1j, Fr(-1, 72), Fr(1, 18)),
    8: (Fr(1, 6), Fr(-1, 2), 1, Fr(-1, 72), Fr(1, 18)),
}


def theta_specialization_point(n, tau):
    """The theta argument (v, tau) matching even catalogue member n <= 8."""
    coef, shift, _, _, _ = _THETA_ROWS[n]
    tau = mpc(tau)
    return tau * coef.numerator / coef.denominator + mpc(shift.numerator) / shift.denominator, tau


def e_from_theta(n, tau):
    """Right-hand side prefactor * q^power * e_n(scale*tau) for n <= 8.

    Matches jacobi_theta at the specialization point returned by
    theta_specialization_point.
    """
    if n not in _THETA_ROWS:
        raise ValueError("only the first eight even members specialize")
    _, _, pref, qpow, scale = _THETA_ROWS[n]
    tau = mpc(tau)
    return pref * e2pi(tau * qpow) * eta_theta_eval(("even", n), tau * scale.numerator / scale.denominator)


# odd members as phase-weighted g_{a,b} combinations: (coeff, phase, (a,b), scale)
_G_ROWS = {
    1: [(4, Fr(0), (Fr(1, 4), Fr(0)), 32)],
    2: [(4, Fr(-1, 8), (Fr(1, 4), Fr(1, 2)), 32)],
    3: [(3, Fr(0), (Fr(1, 3), Fr(0)), 18)],
    4: [(12, Fr(-1, 24), (Fr(1, 12), Fr(1, 2)), 288),
        (12, Fr(-5, 24), (Fr(5, 12), Fr(1, 2)), 288)],
    5: [(6, Fr(0), (Fr(1, 6), Fr(0)), 72)],
    6: [(3, Fr(-1, 6), (Fr(1, 3), Fr(1, 2)), 18)],
}


def E_from_g(m, tau):
    """Odd catalogue member m as its g_{a,b} combination."""
    tau = mpc(tau)
    total = mpc(0)
    for coeff, phase, spec, scale in _G_ROWS[m]:
        total += coeff * e2pi(phase) * g_ab(spec, scale * tau)
    return total


def unary_theta_combination(m):
    """The (coeff*e(phase), (a,b), scale) table behind E_from_g."""
    return [(c * e2pi(ph), spec, scale) for c, ph, spec, scale in _G_ROWS[m]]


def partial_theta(m, z):
    """Partial theta sum(chi_m(n) e^{-2 pi i z n^2}) on the lower half plane."""
    z = mpc(z)
    if z.imag >= 0:
        raise ValueError("partial theta needs Im(z) < 0")
    _, chi = _ODD[m]
    eps = series_eps()
    total = mpc(0)
    quiet = 0
    n = 1
    while n < 10 ** 5:
        c = chi(n)
        w = mp.exp(-2j * mp.pi * z * n * n)
        if c:
            total += (mpc(c.numerator) / c.denominator) * w
        if abs(w) < eps:
            quiet += 1
            if quiet >= 5:
                return total
        else:
            quiet = 0
        n += 1
    raise RuntimeError("partial theta failed to converge")
