"""Tests for congruence subgroup machinery.

The free basis tests lean on two independent facts: the rank of a
torsion-free index p+1 subgroup is pinned by the Euler characteristic, and
torsion elements of the projective modular group are exactly the ones whose
matrix lifts have trace in {-1, 0, 1}.  Sampled membership tests compare
the fractional cocycle characterization of Gamma_1(N) against the direct
congruence conditions word by word.
"""

import itertools

import pytest

from modh1.cohomology import CERTIFICATE_FORMAT, Certificate, h1, \
    certify_nonextendable
from modh1.congruence import (
    CosetTable,
    FreeBasis,
    bN,
    certify_membership_sample,
    coset_table,
    find_torsion,
    gamma0_member,
    gamma1_free_reason,
    gamma1_member,
    legendre,
    lift_to_sl2,
    membership_mismatches,
    schreier_free_basis,
    torsion_criterion,
)
from modh1.polyrep import GEN_S, GEN_T, Mat2
from modh1.presentations import evaluate_word


def primes(lo, hi):
    out = []
    for p in range(max(lo, 2), hi + 1):
        if all(p % d for d in range(2, int(p ** 0.5) + 1)):
            out.append(p)
    return out


class TestLegendre:
    def test_known_values(self):
        assert legendre(-1, 11) == -1
        assert legendre(-3, 13) == 1
        assert legendre(0, 7) == 0
        assert legendre(2, 7) == 1
        assert legendre(3, 7) == -1

    def test_multiplicativity(self):
        for p in (5, 13, 29):
            for a in range(1, p):
                for b in range(1, p):
                    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)

    def test_counts_squares(self):
        for p in primes(3, 60):
            squares = {x * x % p for x in range(1, p)}
            for a in range(1, p):
                assert (legendre(a, p) == 1) == (a in squares)

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValueError):
            legendre(1, 2)
        with pytest.raises(ValueError):
            legendre(1, 15)


class TestMembership:
    def test_gamma0(self):
        assert gamma0_member(Mat2(1, 0, 4, 1), 2)
        assert not gamma0_member(Mat2(1, 0, 1, 1), 2)
        assert gamma0_member(Mat2(1, 1, 0, 1), 7)

    def test_gamma1(self):
        assert gamma1_member(Mat2(3, 1, 2, 1), 2)
        assert not gamma1_member(Mat2(1, 0, 1, 1), 2)
        assert gamma1_member(Mat2(1, 5, 0, 1), 3)
        # lower-left divisible but diagonal wrong: gamma0 without gamma1
        assert gamma0_member(Mat2(2, 1, 3, 2), 3)
        assert not gamma1_member(Mat2(2, 1, 3, 2), 3)

    def test_determinant_guard(self):
        with pytest.raises(ValueError):
            gamma0_member(Mat2(1, 0, 0, 2), 3)
        with pytest.raises(ValueError):
            gamma1_member(Mat2(2, 0, 0, 1), 3)
        with pytest.raises(ValueError):
            bN(Mat2(1, 1, 1, 1), 2)

    def test_bN_examples(self):
        from fractions import Fraction

        value, integral = bN(Mat2(1, 0, 1, 1), 2)
        assert value == (Fraction(0), Fraction(1, 2))
        assert not integral
        value, integral = bN(Mat2(3, 1, 2, 1), 2)
        assert value == (Fraction(1), Fraction(1))
        assert integral

    def test_bN_matches_gamma1_on_samples(self):
        # full protocol: 10^4 words of length <= 20 per modulus
        for N in (2, 3, 5, 11):
            assert membership_mismatches(N, seed=0, count=10000,
                                         max_length=20) == 0

    def test_sample_certificate_roundtrip(self):
        cert = certify_membership_sample(3, count=500)
        assert cert.payload["format"] == CERTIFICATE_FORMAT
        checks = Certificate.from_json(cert.to_json()).verify()
        assert checks and all(c["pass"] for c in checks)

    def test_sample_certificate_tamper(self):
        cert = certify_membership_sample(3, count=500)
        bad = dict(cert.payload)
        bad["mismatches"] = 1
        checks = Certificate(bad).verify()
        assert not all(c["pass"] for c in checks)


class TestCosetTable:
    def test_point_count(self):
        assert len(coset_table(2).points) == 3
        assert len(coset_table(11).points) == 12

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            coset_table(12)
        with pytest.raises(ValueError):
            coset_table(1)

    def test_transitive_small_primes(self):
        # BFS reaching every point is exactly transitivity
        for p in primes(2, 100):
            table = coset_table(p)
            assert len(table.points) == p + 1
            assert sorted(table.perm_s) == list(table.points)
            assert sorted(table.perm_t) == list(table.points)

    def test_transversal_words_reach_their_points(self):
        for p in (5, 11, 13):
            table = coset_table(p)
            for x in table.points:
                g = evaluate_word(table.transversal[x], (GEN_S, GEN_T))
                assert table.apply(g, table.base) == x

    def test_base_stabilizer_is_congruence_condition(self):
        table = coset_table(7)
        for g in (Mat2(1, 0, 7, 1), Mat2(2, 1, 7, 4), Mat2(1, 3, 0, 1)):
            assert table.apply(g, table.base) == table.base
        assert table.apply(Mat2(1, 0, 1, 1), table.base) != table.base

    def test_permutations_match_apply(self):
        table = coset_table(13)
        for x in table.points:
            assert table.perm_s[x] == table.apply(GEN_S, x)
            assert table.perm_t[x] == table.apply(GEN_T, x)

    def test_payload(self):
        payload = coset_table(5).to_payload()
        assert payload["prime"] == 5
        assert len(payload["transversal"]) == 6


class TestTorsionCriterion:
    def test_matches_residue_class(self):
        for p in primes(5, 200):
            assert torsion_criterion(p) == (p % 12 == 11)

    def test_witness_when_criterion_fails(self):
        for p in primes(5, 200):
            g = find_torsion(p)
            if torsion_criterion(p):
                assert g is None
            else:
                assert g is not None
                assert g.det() == 1
                assert g.c % p == 0
                tr = g.a + g.d
                assert abs(tr) <= 1  # torsion trace
                eye = Mat2.identity()
                if tr == 0:
                    assert (g * g).proj_eq(eye)
                    assert not g.proj_eq(eye)
                else:
                    assert (g * g * g).proj_eq(eye)
                    assert not g.proj_eq(eye)

    def test_guards(self):
        with pytest.raises(ValueError):
            torsion_criterion(3)
        with pytest.raises(ValueError):
            torsion_criterion(10)
        with pytest.raises(ValueError):
            find_torsion(9)


class TestFreeBasis:
    def test_ranks(self):
        expected = {11: 3, 23: 5, 47: 9, 59: 11}
        for p, rank in expected.items():
            basis = schreier_free_basis(p)
            assert basis.rank == rank
            assert len(basis.words) == rank == len(basis.matrices)

    def test_membership_and_consistency(self):
        basis = schreier_free_basis(23)
        for w, m in zip(basis.words, basis.matrices):
            assert m == evaluate_word(w, (GEN_S, GEN_T))
            assert m.det() == 1
            assert m.c % 23 == 0

    def test_rejects_torsion_prime(self):
        with pytest.raises(ValueError):
            schreier_free_basis(13)

    def test_freeness_evidence_no_short_torsion(self):
        # no nonempty product of up to 4 basis letters is elliptic:
        # a torsion element would lift with trace in {-1, 0, 1}
        basis = schreier_free_basis(11)
        letters = []
        for m in basis.matrices:
            letters.append(m)
            letters.append(m.inv())
        eye = Mat2.identity()
        k = len(basis.matrices)

        def reduced(word):
            # letters interleave as m, m^-1; adjacent same-pair letters cancel
            for a, b in zip(word, word[1:]):
                if a // 2 == b // 2 and a != b:
                    return False
            return True

        for length in range(1, 5):
            for word in itertools.product(range(2 * k), repeat=length):
                if not reduced(word):
                    continue
                g = eye
                for i in word:
                    g = g * letters[i]
                assert not g.proj_eq(eye)
                assert abs(g.a + g.d) >= 2

    def test_payload(self):
        basis = schreier_free_basis(11)
        payload = basis.to_payload()
        assert payload["prime"] == 11
        assert len(payload["words"]) == 3
        assert all(len(row) == 4 for row in payload["matrices"])

    def test_constructor_rejects_outsiders(self):
        with pytest.raises(ValueError):
            FreeBasis(11, [], [Mat2(1, 0, 1, 1)])


class TestLift:
    def test_projective_consistency(self):
        basis = schreier_free_basis(11)
        lift = lift_to_sl2(basis)
        assert lift.rank == 3
        for lifted, proj in zip(lift.assignment.matrices, basis.matrices):
            assert lifted.proj_eq(proj)

    def test_overgroup_descriptors(self):
        lift = lift_to_sl2(schreier_free_basis(11))
        names = [og.name for og in lift.overgroups]
        assert names == ["K x <eps>", "sl2"]
        for og in lift.overgroups:
            og.assignment.check(og.presentation)
            # embedding words evaluate to the subgroup generators
            for w, m in zip(og.embedding.words, lift.assignment.matrices):
                assert evaluate_word(w, og.assignment.matrices) == m

    def test_lifted_h1_rank(self):
        # free group of rank k with no invariant vectors: free rank (k-1)(n+1)
        lift = lift_to_sl2(schreier_free_basis(11))
        k = lift.rank
        for n in (1, 2, 3):
            res = h1(lift.presentation, lift.assignment.rep(n))
            assert res.invariants.free_rank == (k - 1) * (n + 1)

    def test_nonextendable_certificate(self):
        lift = lift_to_sl2(schreier_free_basis(11))
        res = h1(lift.presentation, lift.assignment.rep(1))
        cocycle = res.free_basis[0]
        cert = certify_nonextendable(lift.presentation, lift.assignment, 1,
                                     cocycle, lift.overgroups)
        checks = Certificate.from_json(cert.to_json()).verify()
        assert checks and all(c["pass"] for c in checks)
        refuted = {e["name"] for e in cert.payload["overgroups"]}
        assert refuted == {"K x <eps>", "sl2"}


class TestGamma1Freeness:
    def test_prime_reason(self):
        assert gamma1_free_reason(11) == 11
        assert gamma1_free_reason(22) == 11
        assert gamma1_free_reason(23) == 23
        assert gamma1_free_reason(5) is None
        assert gamma1_free_reason(12) is None
