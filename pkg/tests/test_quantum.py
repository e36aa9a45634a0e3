"""Quantum sets, finite sums at roots of unity, and rational evaluation."""

from fractions import Fraction

import pytest
from mpmath import mp, mpc

from etamock.qseries import RootOfUnity
from etamock.quantum import (HK, F_hk, F_hk_terms, as_fraction,
                             companion_sum, companion_sum_composite,
                             group_generators, hk_image, in_quantum_set,
                             in_S, in_S_even, in_S_odd, in_S_prime, in_set,
                             mobius_rational, quantum_set_label,
                             rational_formula_defined, rational_z_args,
                             vm1_at_rational, vmn_any, vmn_at_rational)
from etamock.vmn import all_rows

mp.dps = 20


def test_basic_set_predicates():
    assert in_S(Fraction(1, 3)) and in_S(Fraction(3, 4))
    assert not in_S(Fraction(2, 3)) and not in_S(Fraction(0))
    assert in_S_even(Fraction(1, 2)) and not in_S_even(Fraction(1, 3))
    assert in_S_odd(Fraction(1, 3)) and not in_S_odd(Fraction(1, 2))
    assert in_S_prime(Fraction(5, 4)) and in_S_prime(Fraction(7, 2))
    assert not in_S_prime(Fraction(3, 4))


def test_set_lookup_by_label():
    assert in_set("S", Fraction(1, 3))
    assert in_set("S_ev", Fraction(1, 2))
    assert not in_set("S'", Fraction(3, 5))
    with pytest.raises(KeyError):
        in_set("nonsense", Fraction(1, 2))


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.3333)
    with pytest.raises(TypeError):
        in_S(0.5)


def test_every_row_has_a_quantum_set():
    rows = sorted({("4" if lbl in ("4p", "4pp") else lbl, n)
                   for lbl, n in all_rows()})
    assert len(rows) == 43
    for lbl, n in rows:
        label = quantum_set_label(lbl, n)
        assert label in ("S", "S_ev", "S_od", "S'", "S'&S_ev", "S'&S_od",
                         "S'|S_ev", "S'|S_od")


@pytest.mark.parametrize("ell, x, image", [
    (2, Fraction(1, 3), (1, 5)),
    (1, Fraction(-3), (3, 2)),
    (1, Fraction(1), (1, 2)),
    (2, Fraction(-3, 5), (3, 1)),
])
def test_mobius_image_normalization(ell, x, image):
    assert HK(ell, x) == image
    assert hk_image(ell, x) == image


def test_mobius_rational_action():
    g = group_generators("1", 1)[0]
    x = Fraction(1, 3)
    y = mobius_rational(g, x)
    assert y == Fraction(g.a * 1 + g.b * 3, g.c * 1 + g.d * 3)
    assert mobius_rational(g, Fraction(-g.d, g.c)) is None


def test_generator_orbit_closure_sample():
    for lbl, n in [("1", 1), ("2", 3), ("3", 2), ("5", 5), ("6", 4), ("4", 1)]:
        g1, g2 = group_generators(lbl, n)
        for h in range(-8, 9):
            for k in range(1, 9):
                x = Fraction(h, k)
                if x.denominator != k or not in_quantum_set(lbl, n, x):
                    continue
                for mat in (g1, g2, g1.inv(), g2.inv()):
                    y = mobius_rational(mat, x)
                    if y is not None:
                        assert in_quantum_set(lbl, n, y)


def test_finite_sum_terminates_and_is_exact():
    z1, z2 = rational_z_args("1", Fraction(1, 3))
    terms = F_hk_terms(Fraction(1, 3), z1, z2)
    assert len(terms) <= 3
    total = F_hk(Fraction(1, 3), z1, z2)
    assert abs(total - sum(terms)) < 1e-18


def test_finite_sum_never_divides_by_zero():
    # sweep every family over a window; a zero denominator would raise
    for lbl in ("1", "2", "3", "5", "6", "4p", "4pp"):
        for h in range(-10, 11):
            for k in range(1, 11):
                x = Fraction(h, k)
                if x.denominator != k:
                    continue
                if not rational_formula_defined(lbl, x):
                    continue
                z1, z2 = rational_z_args(lbl, x)
                F_hk(x, z1, z2)


def test_rational_evaluation_requires_membership():
    with pytest.raises(ValueError):
        vmn_at_rational("6", 3, Fraction(2, 3))
    vmn_at_rational("6", 3, Fraction(1, 3))


def _to_mpf(fr):
    from mpmath import mpf
    return mpf(fr.numerator) / fr.denominator


def test_rational_evaluation_matches_radial_limit():
    """Finite sum at h/k against the mu route just above the real line."""
    for lbl, n, x in [("1", 1, Fraction(1, 3)), ("2", 1, Fraction(1, 2)),
                      ("5", 1, Fraction(1, 5))]:
        exact = vmn_at_rational(lbl, n, x)
        heights = [mpc(_to_mpf(x), t) for t in (0.02, 0.01)]
        gaps = [abs(vmn_any(lbl, n, tau) - exact) for tau in heights]
        assert gaps[1] < gaps[0]
        assert gaps[1] < 0.2


def test_first_column_rational_values_agree_with_general_entry():
    for lbl in ("1", "2", "3", "5", "6"):
        x = Fraction(1, 3) if lbl not in ("3",) else Fraction(1, 1)
        got = vm1_at_rational(lbl, x)
        assert abs(got - vmn_at_rational(lbl, 1, x)) < 1e-18


def test_vmn_any_dispatches_on_point_type():
    tau = mpc(0.1, 1.0)
    a = vmn_any("1", 1, tau)
    b = vmn_any("1", 1, Fraction(1, 3))
    from etamock.vmn import vmn_eval_mu
    assert abs(a - vmn_eval_mu("1", 1, tau)) < 1e-18
    assert abs(b - vmn_at_rational("1", 1, Fraction(1, 3))) < 1e-18


@pytest.mark.parametrize("lbl", ["1", "2", "5"])
def test_companion_sums_cancel(lbl):
    for x in (Fraction(1, 3), Fraction(3, 5), Fraction(-1, 7)):
        if not in_quantum_set(lbl, 1, x):
            continue
        assert abs(companion_sum(lbl, x)) < 1e-13


@pytest.mark.parametrize("lbl", ["3", "6"])
def test_companion_sums_cancel_trivial_families(lbl):
    # the two finite sums are individually nonzero yet the signed total is 0
    for x in (Fraction(1, 5), Fraction(5, 7)):
        if not in_quantum_set(lbl, 1, x):
            continue
        assert abs(companion_sum(lbl, x)) < 1e-13


def test_composite_four_term_cancellation():
    for x in (Fraction(1, 3), Fraction(1, 5), Fraction(3, 7)):
        assert abs(companion_sum_composite(x)) < 1e-13


def test_root_arguments_are_exact():
    z1, z2 = rational_z_args("5", Fraction(3, 7))
    assert isinstance(z1, RootOfUnity) and isinstance(z2, RootOfUnity)
    assert z1.exponent.denominator <= 4 * 6 * 7
