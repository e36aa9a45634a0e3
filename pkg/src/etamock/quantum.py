"""Rational-point arithmetic for the catalogue: quantum sets, finite
q-hypergeometric sums at roots of unity, and exact evaluation at rationals.

Everything here is driven by reduced fractions h/k and exact roots of
unity; floating point enters only when a finite sum is actually evaluated
at the working precision.
"""

from __future__ import annotations

from fractions import Fraction as Fr

from mpmath import mp, mpc, mpf

from .qseries import RootOfUnity, SL2Matrix, e2pi, qpoch
from .vmn import base_label, is_admissible, normalize_label, vmn_eval_mu


def _mpq(fr):
    fr = Fr(fr)
    return mpf(fr.numerator) / fr.denominator

# per-family constants: Moebius flavor, root orders, translation step
ELL = {"1": 2, "2": 1, "3": 2, "4": 1, "5": 2, "6": 1}
ROOT_A = {"1": 8, "2": 8, "3": 3, "4": 24, "5": 12, "6": 3}
ROOT_C = {"1": 8, "2": 8, "3": 6, "4": 24, "5": 12, "6": 6}
SHIFT_B = {"1": 4, "2": 4, "3": 6, "4": 12, "5": 6, "6": 6}
D_COEF = {"1": 3, "2": 3, "3": 1, "5": 5, "6": 1}

# data of the z-arguments in the finite-sum evaluation:
#   z1 = a e(h / (2 b k)),  z2 = a^-1 e((b-1) h / (2 b k))
# with a = i for odd families and a = 1 for even ones
ARG_B = {"1": Fr(4), "2": Fr(4), "3": Fr(3), "4p": Fr(12),
         "4pp": Fr(12, 5), "5": Fr(6), "6": Fr(3)}
_ODD_FAMILY = {"1", "3", "5"}


def ell_mn(m, n):
    return ELL[base_label(normalize_label(m))] if n == 1 else 2


_KAPPA_SPECIAL = {
    "1": {3: 3, 4: 3, 7: 3, 8: 3},
    "2": {3: 3, 4: 3, 7: 3, 8: 3},
    "3": {5: 2, 6: 2},
    "5": {5: 2, 6: 2},
    "6": {5: 2, 6: 2},
}


def kappa(m, n):
    base = base_label(normalize_label(m))
    if n == 1 or base == "4":
        return 1
    return _KAPPA_SPECIAL.get(base, {}).get(n, 1)


# ---------------------------------------------------------------------------
# quantum sets


def as_fraction(x):
    if isinstance(x, float):
        raise TypeError("rational points must be exact; got float %r" % (x,))
    return Fr(x)


def in_S(x):
    """Reduced h/k with h odd."""
    x = as_fraction(x)
    return x.numerator % 2 != 0


def in_S_even(x):
    x = as_fraction(x)
    return in_S(x) and x.denominator % 2 == 0


def in_S_odd(x):
    x = as_fraction(x)
    return in_S(x) and x.denominator % 2 == 1


def in_S_prime(x):
    """Reduced h/k with h = +-1 mod 6 (a subset of in_S)."""
    x = as_fraction(x)
    return x.numerator % 6 in (1, 5)


_SET_PREDICATES = {
    "S": in_S,
    "S_ev": in_S_even,
    "S_od": in_S_odd,
    "S'": in_S_prime,
    "S'&S_ev": lambda x: in_S_prime(x) and in_S_even(x),
    "S'&S_od": lambda x: in_S_prime(x) and in_S_odd(x),
    "S'|S_ev": lambda x: in_S_prime(x) or in_S_even(x),
    "S'|S_od": lambda x: in_S_prime(x) or in_S_odd(x),
}

_QUANTUM_SET = {
    ("1", 1): "S", ("1", 2): "S_ev", ("1", 3): "S'", ("1", 4): "S_od",
    ("1", 5): "S_od", ("1", 7): "S", ("1", 8): "S_ev",
    ("2", 1): "S", ("2", 2): "S_ev", ("2", 3): "S'", ("2", 4): "S_od",
    ("2", 6): "S_od", ("2", 7): "S", ("2", 8): "S_ev",
    ("3", 1): "S'", ("3", 2): "S'&S_ev", ("3", 3): "S'&S_ev",
    ("3", 4): "S'", ("3", 5): "S'", ("3", 6): "S'", ("3", 7): "S'&S_od",
    ("4", 1): "S", ("4", 2): "S_ev", ("4", 3): "S'", ("4", 4): "S'|S_od",
    ("4", 5): "S", ("4", 6): "S'|S_ev", ("4", 7): "S", ("4", 8): "S'|S_ev",
    ("5", 1): "S'|S_ev", ("5", 2): "S_ev", ("5", 3): "S'",
    ("5", 5): "S'|S_ev", ("5", 6): "S'|S_ev", ("5", 7): "S'|S_ev",
    ("5", 8): "S'|S_ev",
    ("6", 1): "S'", ("6", 2): "S'&S_ev", ("6", 3): "S'", ("6", 4): "S'",
    ("6", 5): "S'", ("6", 6): "S'", ("6", 8): "S'&S_od",
}


def quantum_set_label(m, n):
    base = base_label(normalize_label(m))
    try:
        return _QUANTUM_SET[(base, n)]
    except KeyError:
        raise ValueError("no quantum set for row (%s, %d)" % (base, n))


def in_quantum_set(m, n, x):
    return _SET_PREDICATES[quantum_set_label(m, n)](x)


# sets on which the finite-sum evaluation at rationals is defined:
# every factor in the denominators is then provably nonzero
_DEFINED_SET = {"1": "S", "2": "S", "3": "S'|S_od", "4": "S",
                "4p": "S", "4pp": "S", "5": "S'|S_ev", "6": "S'"}


def rational_formula_defined(m, x):
    label = normalize_label(m)
    return _SET_PREDICATES[_DEFINED_SET[label]](x)


# ---------------------------------------------------------------------------
# finite q-hypergeometric sums


def F_hk_terms(x, z1, z2):
    """The k summands (-z;z)_j e(h j(j+1)/(4k)) / ((z1;z)_{j+1} (z2;z)_{j+1})
    with z = e(h/(2k)) for the reduced fraction x = h/k.

    When z1, z2 are RootOfUnity values, every denominator factor is first
    checked exactly; a vanishing factor raises ZeroDivisionError naming it.
    """
    x = as_fraction(x)
    h, k = x.numerator, x.denominator
    exact = isinstance(z1, RootOfUnity) and isinstance(z2, RootOfUnity)
    if exact:
        for name, z in (("z1", z1), ("z2", z2)):
            for j in range(k):
                if (z.exponent + Fr(h * j, 2 * k)) % 1 == 0:
                    raise ZeroDivisionError(
                        "factor (1 - %s zeta^%d) vanishes for h/k = %s"
                        % (name, j, x))
        z1v, z2v = z1.value(), z2.value()
    else:
        z1v, z2v = mpc(z1), mpc(z2)
    zeta = e2pi(Fr(h, 2 * k))
    terms = []
    num_poch = mpc(1)
    d1 = 1 - z1v
    d2 = 1 - z2v
    for j in range(k):
        terms.append(num_poch * e2pi(Fr(h * j * (j + 1), 4 * k)) / (d1 * d2))
        step = zeta ** (j + 1)
        num_poch *= 1 + step
        d1 *= 1 - z1v * step
        d2 *= 1 - z2v * step
    return terms


def F_hk(x, z1, z2):
    """Finite q-hypergeometric sum over the terms of F_hk_terms."""
    return sum(F_hk_terms(x, z1, z2))


def rational_z_args(m, x):
    """The exact root-of-unity arguments fed to F_hk for this family."""
    label = normalize_label(m)
    if label == "4":
        raise ValueError("composite label has two argument pairs; use 4p, 4pp")
    x = as_fraction(x)
    h, k = x.numerator, x.denominator
    a_exp = Fr(1, 4) if label in _ODD_FAMILY else Fr(0)
    b = ARG_B[label]
    z1 = RootOfUnity.from_fraction(a_exp + Fr(h, 1) / (2 * b * k))
    z2 = RootOfUnity.from_fraction(-a_exp + (b - 1) * Fr(h, 1) / (2 * b * k))
    return z1, z2


def rational_prefactor(m, x):
    """i * w * e(x (t + 1/8)) as an exact root of unity."""
    from .vmn import vmn_spec
    label = normalize_label(m)
    if label == "4":
        raise ValueError("composite label has two prefactors; use 4p, 4pp")
    spec = vmn_spec(label, 1)
    x = as_fraction(x)
    return RootOfUnity.from_fraction(
        Fr(1, 4) + spec.w.exponent + (spec.t + Fr(1, 8)) * x)


def vm1_at_rational(m, x):
    """Exact-terminating value of the first-column function at x = h/k."""
    label = normalize_label(m)
    x = as_fraction(x)
    if label == "4":
        return vm1_at_rational("4p", x) + vm1_at_rational("4pp", x)
    if not rational_formula_defined(label, x):
        raise ValueError(
            "the terminating evaluation for family %s is not defined at %s"
            % (label, x))
    z1, z2 = rational_z_args(label, x)
    return rational_prefactor(label, x).value() * F_hk(x, z1, z2)


def vmn_at_rational(m, n, x):
    """Radial value of row (m, n) at x in its quantum set.

    On the quantum set the difference against the first column vanishes
    radially, so every column shares the first column's value.
    """
    label = normalize_label(m)
    x = as_fraction(x)
    if not is_admissible(label, n):
        raise ValueError("row (%s, %d) is not admissible" % (label, n))
    if not in_quantum_set(label, n, x):
        raise ValueError("%s is outside the quantum set of row (%s, %d)"
                         % (x, label, n))
    return vm1_at_rational(label, x)


def vmn_any(m, n, x):
    """Evaluate row (m, n) at a rational (exact) or upper half-plane point."""
    if isinstance(x, (Fr, int)) or (isinstance(x, str) and "/" in x):
        return vmn_at_rational(m, n, as_fraction(x))
    x = mpc(x)
    if x.imag <= 0:
        raise ValueError("points below the real line are not supported")
    return vmn_eval_mu(m, n, x)


def f_m_radial(m, x, t):
    """|f_m| at x + it, the product whose radial vanishing glues the
    rational values onto the series representation."""
    label = normalize_label(m)
    if label == "4":
        raise ValueError("composite label: use the parts 4p, 4pp")
    x = as_fraction(x)
    tau = mpc(mpf(x.numerator) / x.denominator, t)
    q = e2pi(tau)
    qh = e2pi(tau / 2)
    b = ARG_B[label]
    a2 = mpc(-1) if label in _ODD_FAMILY else mpc(1)
    num = qpoch(q, q) * qpoch(-qh, qh) ** 2
    den = qpoch(a2 * e2pi(tau / b), q) * qpoch(e2pi(tau * (b - 1) / b) / a2, q)
    return abs(num / den)


# ---------------------------------------------------------------------------
# Moebius data on rationals


def hk_image(ell, x):
    """Normalized image (H, K) of h/k under x -> x/(ell x + 1), K > 0."""
    x = as_fraction(x)
    h, k = x.numerator, x.denominator
    kk = ell * h + k
    if kk == 0:
        raise ZeroDivisionError("x = -1/%d maps to infinity" % ell)
    if kk < 0:
        return -h, -kk
    return h, kk


def mobius_rational(gamma, x):
    """gamma acting on a rational; None when the image is infinity."""
    x = as_fraction(x)
    den = gamma.c * x + gamma.d
    if den == 0:
        return None
    return (gamma.a * x + gamma.b) / den


_M2 = SL2Matrix(1, 0, 2, 1)
_M1 = SL2Matrix(1, 0, 1, 1)


def _tpow(p):
    return SL2Matrix(1, p, 0, 1)


_FIRST_COLUMN_GENS = {
    "1": (_M2, _tpow(4)), "2": (_M1, _tpow(4)), "3": (_M2, _tpow(6)),
    "4": (_M1, _tpow(12)), "5": (_M2, _tpow(6)), "6": (_M1, _tpow(6)),
}

_T4_ROWS = {("1", 2), ("1", 5), ("2", 2), ("2", 6)}
_T6_ROWS = {("3", 2), ("3", 3), ("3", 4), ("3", 7), ("5", 2), ("5", 3),
            ("5", 7), ("5", 8), ("6", 2), ("6", 3), ("6", 4), ("6", 8)}


def group_generators(m, n):
    """Generators of the quantum-modularity group of row (m, n)."""
    base = base_label(normalize_label(m))
    if not is_admissible(base, n):
        raise ValueError("row (%s, %d) is not admissible" % (base, n))
    if n == 1:
        return _FIRST_COLUMN_GENS[base]
    if (base, n) in _T4_ROWS:
        return (_M2, _tpow(4))
    if (base, n) in _T6_ROWS:
        return (_M2, _tpow(6))
    return (_M2, _tpow(12))


# ---------------------------------------------------------------------------
# closed finite-sum side of the period-integral identities


def integral_identity_rhs(m, x):
    """Finite q-hypergeometric side equal to the weighted period integral
    -(i/c_m) int E_m(2u/c_m^2)/sqrt(-i(u+x)) du from 1/ell_m to i-infinity."""
    base = base_label(normalize_label(m))
    x = as_fraction(x)
    h, k = x.numerator, x.denominator
    if base == "4":
        H, K = hk_image(1, x)
        t1 = RootOfUnity.from_fraction(Fr(1, 2) + Fr(11 * h, 288 * k)).value() \
            * F_hk(x, RootOfUnity.from_fraction(Fr(h, 24 * k)),
                   RootOfUnity.from_fraction(Fr(11 * h, 24 * k)))
        t2 = RootOfUnity.from_fraction(Fr(1, 2) + Fr(35 * h, 288 * k)).value() \
            * F_hk(x, RootOfUnity.from_fraction(Fr(5 * h, 24 * k)),
                   RootOfUnity.from_fraction(Fr(7 * h, 24 * k)))
        y = Fr(H, K)
        t3 = RootOfUnity.from_fraction(Fr(11 * H, 288 * K)).value() \
            * F_hk(y, RootOfUnity.from_fraction(Fr(H, 24 * K)),
                   RootOfUnity.from_fraction(Fr(11 * H, 24 * K)))
        t4 = RootOfUnity.from_fraction(Fr(35 * H, 288 * K)).value() \
            * F_hk(y, RootOfUnity.from_fraction(Fr(5 * H, 24 * K)),
                   RootOfUnity.from_fraction(Fr(7 * H, 24 * K)))
        tail = e2pi(Fr(-1, 8)) / mp.sqrt(mpc(_mpq(x + 1))) * (t3 + t4)
        return t1 + t2 + tail
    ell = ELL[base]
    a, c, d = ROOT_A[base], ROOT_C[base], D_COEF[base]
    H, K = hk_image(ell, x)

    def args(hh, kk):
        z1 = RootOfUnity.from_fraction(Fr(1, 2) + Fr(ell - 3, 4) + Fr(hh, c * kk))
        z2 = RootOfUnity.from_fraction(Fr(1, 2) + Fr(3 - ell, 4) + Fr(d * hh, a * kk))
        return z1, z2

    lead1 = RootOfUnity.from_fraction(Fr(1 + ell, 4) + Fr(2 * d * h, a * c * k))
    term1 = lead1.value() * F_hk(x, *args(h, k))
    lead2 = RootOfUnity.from_fraction(Fr(-5 * ell, 8) + Fr(2 * d * H, a * c * K))
    term2 = lead2.value() * F_hk(Fr(H, K), *args(H, K)) \
        / mp.sqrt(mpc(_mpq(ell * x + 1)))
    return term1 - term2


def companion_terms(m, x):
    """Term lists of the two sign-companion finite sums for one family."""
    base = base_label(normalize_label(m))
    if base == "4":
        raise ValueError("composite family uses companion_sum_composite")
    ell = ELL[base]
    a, c, d = ROOT_A[base], ROOT_C[base], D_COEF[base]
    x = as_fraction(x)
    h, k = x.numerator, x.denominator
    z1m = RootOfUnity.from_fraction(Fr(1, 2) + Fr(ell - 3, 4) + Fr(h, c * k))
    z2m = RootOfUnity.from_fraction(Fr(1, 2) + Fr(3 - ell, 4) + Fr(d * h, a * k))
    z1p = RootOfUnity.from_fraction(Fr(ell - 3, 4) + Fr(h, c * k))
    z2p = RootOfUnity.from_fraction(Fr(3 - ell, 4) + Fr(d * h, a * k))
    return F_hk_terms(x, z1m, z2m), F_hk_terms(x, z1p, z2p)


def companion_sum(m, x):
    """Two-term combination of sign-companion finite sums; vanishes on the
    quantum set for the families 1, 2, 5 (and termwise for 3 and 6)."""
    minus, plus = companion_terms(m, x)
    return sum(minus) + sum(plus)


def companion_sum_composite(x):
    """Four-term combination for the composite family; vanishes on its set."""
    x = as_fraction(x)
    h, k = x.numerator, x.denominator

    def root(num, den):
        return RootOfUnity.from_fraction(Fr(num, den))

    total = mpc(0)
    for flip in (Fr(0), Fr(1, 2)):
        for e1, e2 in ((Fr(h, 24 * k), Fr(11 * h, 24 * k)),
                       (Fr(5 * h, 24 * k), Fr(7 * h, 24 * k))):
            total += F_hk(x, RootOfUnity.from_fraction(e1 + flip),
                          RootOfUnity.from_fraction(e2 + flip))
    return total


def in_set(label, x):
    """Membership in one of the named rational sets by its label."""
    if label not in _SET_PREDICATES:
        raise KeyError("unknown set label %r; known: %s"
                       % (label, sorted(_SET_PREDICATES)))
    return _SET_PREDICATES[label](as_fraction(x))


def HK(m_index, x):
    """Image pair (H, K) of h/k under x -> x/(m x + 1) with K = |mh+k|."""
    return hk_image(m_index, x)


def corollary_check(m, x):
    """Quadrature and finite-sum sides of the period identity at a rational.

    Returns (lhs, rhs, residual): lhs is the weighted ray integral, rhs
    the closed q-hypergeometric expression.
    """
    from .eichler import integral_identity_lhs

    base = base_label(normalize_label(m))
    x = as_fraction(x)
    lhs = integral_identity_lhs(base, x)
    rhs = integral_identity_rhs(base, x)
    return lhs, rhs, abs(lhs - rhs)
