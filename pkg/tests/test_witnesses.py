import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from coverlab.errors import BadShift, CharacteristicMismatch, InputError, ZeroInput
from coverlab.groups import FiniteAbelianGroup
from coverlab.lattices import verify_lattice_cover_exact
from coverlab.witnesses import (
    CollisionCertificate,
    FiniteField,
    IntPolynomial,
    RationalFunction,
    SubfieldSpec,
    UncoveredWitness,
    exponent_cover,
    pigeonhole_refutation,
    refute_coset_cover,
    rf_semigroup_membership,
    rf_subfield_member,
    rf_unit_exponents,
    semigroup_membership,
    unit_exponents,
    verify_certificate,
    zx_closure_check,
    zx_membership,
)
from coverlab.witnesses.fpoly import pdivmod, pgcd, pmul
from coverlab.witnesses.zx import WITNESSES, proper_union_witnesses, random_polynomial

P = 5
T = RationalFunction.tau(P)


def rf(num, den=(1,), p=P):
    return RationalFunction(p, tuple(num), tuple(den))


# --- Z[x] -------------------------------------------------------------------

class TestZx:
    def test_examples(self):
        assert zx_membership(IntPolynomial.of(0, 1)) == {"S1"}
        assert zx_membership(IntPolynomial.of(1, 1)) == {"S2"}
        assert zx_membership(IntPolynomial.of(1)) == {"S3"}
        assert zx_membership(IntPolynomial.of(2, 4)) == {"S1", "S2", "S3"}

    def test_witnesses_are_exclusive(self):
        assert proper_union_witnesses() == {p: frozenset({p}) for p in WITNESSES}

    def test_every_polynomial_is_covered(self):
        rng = random.Random(1)
        for _ in range(10_000):
            assert zx_membership(random_polynomial(rng))

    def test_membership_matches_residues(self):
        rng = random.Random(2)
        for _ in range(2_000):
            f = random_polynomial(rng)
            a, b = f(0) % 2, f(1) % 2
            expected = {n for n, ok in (("S1", a == 0), ("S2", b == 0), ("S3", a == b)) if ok}
            assert zx_membership(f) == expected

    @pytest.mark.parametrize("part", ["S1", "S2", "S3"])
    def test_closure(self, part):
        r = zx_closure_check(part, 3_000, seed=7)
        assert r.ok and r.violations == 0 and r.to_json()["first_violation"] is None

    def test_bad_args(self):
        with pytest.raises(InputError):
            zx_closure_check("S4", 10)
        with pytest.raises(InputError):
            zx_closure_check("S1", 0)

    @given(st.lists(st.integers(-20, 20), max_size=6), st.lists(st.integers(-20, 20), max_size=6),
           st.integers(-5, 5))
    def test_ring_ops_match_evaluation(self, a, b, x):
        f, g = IntPolynomial(tuple(a)), IntPolynomial(tuple(b))
        assert (f * g)(x) == f(x) * g(x)
        assert (f - g)(x) == f(x) - g(x)


# --- unit exponents -------------------------------------------------------------

class TestUnits:
    @pytest.mark.parametrize("q, e", [(1, (0, 0)), (12, (2, 1)), ("2/3", (1, -1)), (-7, (0, 0)),
                                      (Fraction(9, 16), (-4, 2))])
    def test_exponents(self, q, e):
        assert unit_exponents(q).as_tuple() == e

    def test_zero(self):
        with pytest.raises(ZeroInput):
            unit_exponents(0)
        with pytest.raises(ZeroInput):
            rf_unit_exponents(rf(()))

    @pytest.mark.parametrize("q, parts", [(2, {"M1"}), (3, {"M2"}), (6, {"M3"}), (1, {"M1", "M2", "M3"}),
                                          ("-2/3", {"M3"}), (4, {"M1", "M2", "M3"})])
    def test_classification(self, q, parts):
        assert semigroup_membership(q) == parts

    def test_exponent_lattices_cover(self):
        assert verify_lattice_cover_exact(exponent_cover()).covered

    @given(st.fractions().filter(bool), st.fractions().filter(bool))
    def test_homomorphism(self, a, b):
        assert unit_exponents(a * b) == unit_exponents(a) + unit_exponents(b)

    def test_exponents_against_factorint(self):
        rng = random.Random(3)
        for _ in range(300):
            q = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
            fn, fd = sympy.factorint(q.numerator), sympy.factorint(q.denominator)
            assert unit_exponents(q).as_tuple() == (fn.get(2, 0) - fd.get(2, 0), fn.get(3, 0) - fd.get(3, 0))

    def test_parts_closed_under_products(self):
        rng = random.Random(4)
        pool = [Fraction(rng.randint(1, 500), rng.randint(1, 500)) for _ in range(200)]
        for a, b in zip(pool, pool[1:]):
            for part in semigroup_membership(a) & semigroup_membership(b):
                assert part in semigroup_membership(a * b)

    def test_function_field_backend(self):
        assert rf_unit_exponents(T).as_tuple() == (1, 0)
        assert rf_unit_exponents(rf((1, 1))).as_tuple() == (0, 1)
        f = rf((0, 0, 1), (1, 2, 1))  # t^2 / (t+1)^2
        assert rf_unit_exponents(f).as_tuple() == (2, -2)
        assert rf_semigroup_membership(T) == {"M1"}
        assert rf_semigroup_membership(T * rf((1, 1))) == {"M3"}
        assert rf_unit_exponents(rf((2,))).as_tuple() == (0, 0)


# --- F_p(t) -----------------------------------------------------------------

rf_strategy = st.builds(
    lambda n, d: rf(n, d if any(x % P for x in d) else (1,)),
    st.lists(st.integers(0, P - 1), max_size=7),
    st.lists(st.integers(0, P - 1), min_size=1, max_size=7),
)


class TestRationalFunctions:
    def test_reduced_form(self):
        assert rf((4, 0, 1), (3, 3)) == rf((4, 1), (3,))
        g = rf((P - 1, 0, 1), (P - 1, 1))  # (t^2 - 1)/(t - 1)
        assert g == rf((1, 1))
        assert rf((2,), (2,)) == rf((1,))

    @given(rf_strategy, rf_strategy, rf_strategy)
    def test_field_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a - a == rf(())
        if not b.is_zero:
            assert (a / b) * b == a

    def test_characteristic_mismatch(self):
        with pytest.raises(CharacteristicMismatch):
            _ = rf((1,), p=3) + rf((1,), p=5)
        with pytest.raises(InputError):
            RationalFunction(4, (1,))

    def test_gcd_division(self):
        a, b = (1, 2, 1), (1, 1)
        assert pgcd(a, b, P) == (1, 1)
        q, r = pdivmod(pmul(a, b, P), b, P)
        assert q == a and r == ()


def invariant_under_root_of_unity(f, h):
    """Independent subfield test: F_p(t^k) is the fixed field of t -> zeta*t, zeta of order k."""
    assert (h.p - 1) % h.k == 0
    t = sympy.symbols("t")
    zeta = next(z for z in range(2, h.p) if sympy.n_order(z, h.p) == h.k)
    num = sympy.Poly(list(reversed(f.num)) or [0], t, modulus=h.p)
    den = sympy.Poly(list(reversed(f.den)), t, modulus=h.p)
    num_z = sympy.Poly(num.as_expr().subs(t, zeta * t), t, modulus=h.p)
    den_z = sympy.Poly(den.as_expr().subs(t, zeta * t), t, modulus=h.p)
    return (num * den_z - num_z * den).is_zero


class TestSubfield:
    H = SubfieldSpec(P, 2)

    def test_examples(self):
        assert rf_subfield_member(rf((0, 0, 1)), self.H)
        assert not rf_subfield_member(rf((0, 0, 0, 1)), self.H)
        assert rf_subfield_member(rf((1, 0, 0, 0, 1), (0, 0, 1)), self.H)

    def test_spec_validation(self):
        with pytest.raises(InputError):
            SubfieldSpec(5, 1)
        with pytest.raises(InputError):
            SubfieldSpec(6, 2)
        with pytest.raises(CharacteristicMismatch):
            rf_subfield_member(rf((1,), p=3), self.H)

    @given(rf_strategy)
    def test_agrees_with_fixed_field(self, f):
        assert rf_subfield_member(f, self.H) == invariant_under_root_of_unity(f, self.H)

    @given(rf_strategy, rf_strategy)
    def test_closed_under_field_ops(self, a, b):
        h = self.H
        # substitute t -> t^2 to land in the subfield
        lift = lambda f: rf(tuple(c for x in f.num for c in (x, 0))[:-1] or (),
                            tuple(c for x in f.den for c in (x, 0))[:-1])
        x, y = lift(a), lift(b)
        assert rf_subfield_member(x, h) and rf_subfield_member(y, h)
        assert rf_subfield_member(x + y, h) and rf_subfield_member(x * y, h)
        if not y.is_zero:
            assert rf_subfield_member(x / y, h)


class TestRefuter:
    H = SubfieldSpec(P, 2)

    @pytest.mark.parametrize("mode", ["additive", "multiplicative"])
    def test_examples(self, mode):
        shifts = [rf((0, 0, 0, 1)), T, rf((1, 1))]
        cert = refute_coset_cover(P, self.H, shifts, mode, 6)
        assert isinstance(cert, UncoveredWitness) and cert.element.degree <= 6
        assert verify_certificate(cert, self.H, shifts, mode)
        assert verify_certificate(cert, self.H, shifts, mode, member=invariant_under_root_of_unity)

    def test_empty_family(self):
        assert isinstance(refute_coset_cover(P, self.H, [], "additive", 2), UncoveredWitness)

    def test_bad_inputs(self):
        with pytest.raises(BadShift):
            refute_coset_cover(P, self.H, [rf(())], "multiplicative", 3)
        with pytest.raises(CharacteristicMismatch):
            refute_coset_cover(P, self.H, [rf((1,), p=3)], "additive", 3)
        with pytest.raises(InputError):
            refute_coset_cover(P, self.H, [T], "sideways", 3)
        with pytest.raises(InputError):
            refute_coset_cover(P, self.H, [T], "additive", 0)

    @pytest.mark.parametrize("mode", ["additive", "multiplicative"])
    def test_pigeonhole_alone(self, mode):
        rng = random.Random(5)
        for _ in range(20):
            shifts = [rf([rng.randrange(P) for _ in range(3)], [rng.randrange(1, P), 1])
                      for _ in range(rng.randint(1, 4))]
            shifts = [s for s in shifts if not s.is_zero] or [T]
            cert = pigeonhole_refutation(self.H, shifts, mode)
            assert isinstance(cert, UncoveredWitness)
            assert verify_certificate(cert, self.H, shifts, mode, member=invariant_under_root_of_unity)

    def test_forged_certificates_rejected(self):
        shifts = [rf(()), T]
        assert not verify_certificate(UncoveredWitness(rf((0, 0, 1))), self.H, shifts, "additive")
        one = rf((1,))
        fake = CollisionCertificate(0, 1, one, one, 0)
        assert not verify_certificate(fake, self.H, shifts, "additive")

    def test_tiny_budget_falls_back_to_pigeonhole(self):
        shifts = [rf(()), T]
        cert = refute_coset_cover(P, self.H, shifts, "additive", 1, candidate_limit=1)
        assert isinstance(cert, UncoveredWitness) and cert.method == "pigeonhole"
        assert verify_certificate(cert, self.H, shifts, "additive")


# --- finite fields ------------------------------------------------------------

def unit_group_by_orders(q):
    """Brute force: U(GF(q)) is cyclic iff some element has order q - 1."""
    f = FiniteField(q)
    return any(all(f.power(x, (q - 1) // ell) != (1,) for ell in sympy.primefactors(q - 1))
               for x in f.units)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49])
def test_finite_field_unit_group_is_cyclic(q):
    g = FiniteField(q).unit_group()
    assert g == FiniteAbelianGroup.from_cyclic_orders([q - 1])
    assert unit_group_by_orders(q)


def test_finite_field_rejects_non_prime_power():
    with pytest.raises(InputError):
        FiniteField(12)
