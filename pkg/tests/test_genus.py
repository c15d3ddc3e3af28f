from fractions import Fraction
from random import Random

import pytest

from locgenus import (
    INFINITY,
    STAR,
    ConnectingHom,
    DomainError,
    EnumerationLimitError,
    FingerprintCapError,
    FiniteComplexDescriptor,
    HeightSequence,
    Neisendorfer,
    PAdicApprox,
    PostnikovGenusDescriptor,
    PostnikovSection,
    RankOneGroup,
    RationalGenusElement,
    TorsionShape,
    TypeClass,
    VerdictKind,
    assemble_global,
    beta,
    build_fake_sphere,
    classify_postnikov_genus,
    classifying_map_class,
    cp_fake_descriptor,
    enumerate_postnikov_genus,
    finite_complex_genus_verdict,
    type_of,
)

from genlib import random_hom


class TestTorsionShape:
    def test_from_finite_default(self):
        shape = TorsionShape.from_heights(HeightSequence(0, {2: INFINITY, 3: 4}))
        assert shape == TorsionShape({2})
        assert shape.contains(2) and not shape.contains(3)
        assert not shape.is_empty

    def test_from_infinite_default(self):
        shape = TorsionShape.from_heights(HeightSequence(INFINITY, {3: 4}))
        assert shape == TorsionShape({3}, complement=True)
        assert shape.contains(2) and not shape.contains(3)
        assert shape.is_cofinite

    def test_empty(self):
        assert TorsionShape.from_heights(HeightSequence(0, {3: 4})).is_empty

    def test_validation(self):
        with pytest.raises(DomainError):
            TorsionShape({6})


class TestRationalGenusElement:
    def test_dimension_must_be_odd(self):
        hom = beta(RankOneGroup.integers())
        with pytest.raises(DomainError):
            RationalGenusElement(4, hom)
        with pytest.raises(DomainError):
            RationalGenusElement(1, hom)

    def test_standard_sphere_data(self):
        element = RationalGenusElement(3, beta(RankOneGroup.integers()))
        pi_n, torsion = element.homotopy_groups()
        assert pi_n == TypeClass(0)
        assert torsion.is_empty
        assert element.is_n_minus_1_connected()

    def test_zero_map_splits(self):
        element = RationalGenusElement(3, ConnectingHom(HeightSequence(INFINITY)))
        pi_n, torsion = element.homotopy_groups()
        assert pi_n == TypeClass(INFINITY)
        assert torsion == TorsionShape((), complement=True)
        assert not element.is_n_minus_1_connected()

    def test_inverted_prime(self):
        element = RationalGenusElement(
            5, beta(RankOneGroup(HeightSequence(0, {2: INFINITY})))
        )
        pi_n, torsion = element.homotopy_groups()
        assert pi_n == TypeClass(0, infinite_primes={2})
        assert torsion == TorsionShape({2})
        assert not element.is_n_minus_1_connected()

    def test_pseudo_integer_heights_are_connected(self):
        element = RationalGenusElement(
            3, beta(RankOneGroup(HeightSequence(0, {3: 2})))
        )
        assert element.is_n_minus_1_connected()
        # Surjectivity witnessed by evaluation probes.
        hom = element.hom
        for r in range(1, 4):
            assert hom.evaluate(Fraction(1, 3 ** (r + 2))).p_component(3).denominator == 3**r

    def test_classify_matches_kernel_type(self):
        rng = Random(61)
        for _ in range(100):
            hom = random_hom(rng)
            element = RationalGenusElement(3, hom)
            assert element.classify() == type_of(hom.kernel().heights)

    def test_exact_sequence_consistency(self):
        rng = Random(67)
        primes = [p for p in range(2, 51) if all(p % d for d in range(2, p))]
        for _ in range(60):
            hom = random_hom(rng)
            _, torsion = RationalGenusElement(3, hom).homotopy_groups()
            kernel_heights = hom.kernel().heights
            for p in primes:
                finite_height = kernel_heights.height_at(p) != INFINITY
                assert finite_height == (not torsion.contains(p))
            # Torsion primes are exactly where evaluation misses the
            # p-primary classes.
            for p in set(kernel_heights.support) | {2, 3}:
                k = kernel_heights.height_at(p)
                if torsion.contains(p):
                    assert all(
                        hom.evaluate(Fraction(1, p**s)).p_component(p) == 0
                        for s in range(1, 4)
                    )
                else:
                    hit = hom.evaluate(Fraction(1, p ** (k + 1))).p_component(p)
                    assert hit != 0


class TestPostnikovDescriptor:
    def test_normalization_and_lookup(self):
        d = PostnikovGenusDescriptor(3, STAR, {2: 3, 5: STAR})
        assert d.exceptions == {2: 3}
        assert d.entry_at(2) == 3
        assert d.entry_at(7) == STAR

    def test_validation(self):
        with pytest.raises(DomainError):
            PostnikovGenusDescriptor(4, 0)
        with pytest.raises(DomainError):
            PostnikovGenusDescriptor(3, -1)
        with pytest.raises(DomainError):
            PostnikovGenusDescriptor(3, 0, {6: 1})
        with pytest.raises(DomainError):
            PostnikovGenusDescriptor(3, 0, {2: INFINITY})

    def test_standard(self):
        assert PostnikovGenusDescriptor(3, 0).is_standard
        assert not PostnikovGenusDescriptor(3, 0, {2: 1}).is_standard


class TestFakeSpheres:
    def test_single_prime_descriptor(self):
        model = build_fake_sphere(5, 2, 3)
        assert model.descriptor == PostnikovGenusDescriptor(5, STAR, {2: 3})

    def test_completed_sphere_at_p(self):
        model = build_fake_sphere(3, 3, 0)
        assert model.descriptor == PostnikovGenusDescriptor(3, STAR, {3: 0})
        assert model.fingerprint(3) == 0

    def test_base_point_is_product_model(self):
        model = build_fake_sphere(3, 3, STAR)
        assert model.descriptor == PostnikovGenusDescriptor(3, STAR)
        assert model.vanishes_identically(3)
        assert model.fingerprint(3) == STAR

    def test_dimension_validation(self):
        with pytest.raises(DomainError):
            build_fake_sphere(4, 2, 1)
        with pytest.raises(DomainError):
            build_fake_sphere(1, 2, 1)

    def test_assemble_global_dimension_mismatch(self):
        with pytest.raises(DomainError):
            assemble_global(5, PostnikovGenusDescriptor(3, 0))

    def test_restriction_matches_single_prime_construction(self):
        descriptor = PostnikovGenusDescriptor(3, 0, {2: 1, 5: 2, 7: STAR})
        model = assemble_global(3, descriptor)
        for p in (2, 3, 5, 7):
            assert model.restrict_to_prime(p) == build_fake_sphere(
                3, p, descriptor.entry_at(p)
            )


class TestFingerprint:
    def test_divisibility_oracle(self):
        model = build_fake_sphere(3, 2, 3)
        assert not model.operation_vanishes(2, 4)
        assert model.operation_vanishes(2, 8)
        assert model.operation_vanishes(2, 24)
        assert not model.operation_vanishes(2, 12)

    def test_examples(self):
        n = 5
        assert build_fake_sphere(n, 2, 0).fingerprint(2) == 0
        assert build_fake_sphere(n, 2, 3).fingerprint(2) == 3
        assert build_fake_sphere(n, 5, 2).fingerprint(5) == 2

    def test_cap_error(self):
        model = assemble_global(3, PostnikovGenusDescriptor(3, 0, {2: 80}))
        with pytest.raises(FingerprintCapError):
            model.fingerprint(2)
        assert model.fingerprint(2, cap=100) == 80

    def test_classification_roundtrip(self):
        for n in (3, 5, 7):
            for p in (2, 3, 5):
                for k in [STAR] + list(range(6)):
                    model = build_fake_sphere(n, p, k)
                    assert classify_postnikov_genus(model) == model.descriptor

    def test_classify_standard_sphere(self):
        model = assemble_global(3, PostnikovGenusDescriptor(3, 0))
        assert model.classify() == PostnikovGenusDescriptor(3, 0)

    def test_classify_product_model(self):
        model = assemble_global(3, PostnikovGenusDescriptor(3, STAR))
        assert model.classify() == PostnikovGenusDescriptor(3, STAR)

    def test_classify_mixed(self):
        descriptor = PostnikovGenusDescriptor(7, 0, {2: 1, 5: 2, 11: STAR})
        assert assemble_global(7, descriptor).classify() == descriptor


class TestClassifyingMapClass:
    def test_valuation_class(self):
        assert classifying_map_class(3, 2, PAdicApprox.from_int(12, 2)) == 2

    def test_zero_is_base_point(self):
        assert classifying_map_class(3, 2, PAdicApprox.zero(2)) == STAR

    def test_negative_one_is_a_unit(self):
        assert classifying_map_class(3, 2, PAdicApprox.from_int(-1, 2)) == 0

    def test_sign_action_is_trivial(self):
        rng = Random(71)
        for _ in range(100):
            p = rng.choice([2, 3, 5, 7, 11])
            z = PAdicApprox.from_int(rng.randint(1, 10**6), p)
            assert classifying_map_class(3, p, z) == classifying_map_class(3, p, -z)

    def test_validation(self):
        with pytest.raises(DomainError):
            classifying_map_class(4, 2, PAdicApprox.from_int(1, 2))
        with pytest.raises(DomainError):
            classifying_map_class(3, 3, PAdicApprox.from_int(1, 2))


class TestCpDescriptors:
    def test_examples(self):
        assert cp_fake_descriptor(1, {3: 1}) == PostnikovGenusDescriptor(3, 0, {3: 1})
        assert cp_fake_descriptor(3, {}) == PostnikovGenusDescriptor(7, 0)
        assert cp_fake_descriptor(2, {3: 2}) == PostnikovGenusDescriptor(5, 0, {3: 4})

    def test_zero_exponents_are_standard(self):
        assert cp_fake_descriptor(2, {2: 0, 3: 0}).is_standard

    def test_pullback_fingerprint_compatibility(self):
        for n in (1, 2, 3, 4):
            for p in (2, 3, 5, 7, 11, 13):
                for k in range(6):
                    descriptor = cp_fake_descriptor(n, {p: k})
                    model = assemble_global(2 * n + 1, descriptor)
                    assert model.fingerprint(p) == n * k

    def test_distinct_exponents_distinct_classes(self):
        classes = {cp_fake_descriptor(2, {3: k}) for k in range(8)}
        assert len(classes) == 8

    def test_validation(self):
        with pytest.raises(DomainError):
            cp_fake_descriptor(0, {2: 1})
        with pytest.raises(DomainError):
            cp_fake_descriptor(2, {4: 1})
        with pytest.raises(DomainError):
            cp_fake_descriptor(2, {2: -1})


class TestEnumerate:
    def test_smallest_case(self):
        descriptors = enumerate_postnikov_genus(3, 2, 0)
        assert descriptors == [
            PostnikovGenusDescriptor(3, 0),
            PostnikovGenusDescriptor(3, 0, {2: STAR}),
        ]

    def test_nine_descriptors(self):
        descriptors = enumerate_postnikov_genus(3, 3, 1)
        assert len(descriptors) == 9
        assert len(set(descriptors)) == 9
        assert descriptors[0].is_standard

    def test_two_hundred_fifty_six(self):
        assert len(enumerate_postnikov_genus(3, 10, 2)) == 256

    def test_count_formula(self):
        for prime_bound, entry_bound, prime_count in [(2, 3, 1), (5, 1, 3), (7, 2, 4)]:
            descriptors = enumerate_postnikov_genus(3, prime_bound, entry_bound)
            assert len(descriptors) == (entry_bound + 2) ** prime_count

    def test_deterministic_order(self):
        assert enumerate_postnikov_genus(3, 5, 1) == enumerate_postnikov_genus(3, 5, 1)

    def test_guard(self):
        with pytest.raises(EnumerationLimitError):
            enumerate_postnikov_genus(3, 100, 9)

    def test_validation(self):
        with pytest.raises(DomainError):
            enumerate_postnikov_genus(3, 1, 2)
        with pytest.raises(DomainError):
            enumerate_postnikov_genus(3, 5, -1)


class TestFiniteComplexCatalogue:
    def test_sphere_metadata(self):
        s3 = FiniteComplexDescriptor.from_tag("S3")
        assert s3.pi2_finite and s3.rational_vanishing_level == 3
        s2 = FiniteComplexDescriptor.from_tag("S2")
        assert not s2.pi2_finite and s2.rational_vanishing_level == 3
        s4 = FiniteComplexDescriptor.from_tag("S4")
        assert s4.pi2_finite and s4.rational_vanishing_level == 7

    def test_projective_metadata(self):
        cp2 = FiniteComplexDescriptor.from_tag("CP2")
        assert not cp2.pi2_finite and cp2.rational_vanishing_level == 5

    def test_products(self):
        assert FiniteComplexDescriptor.from_tag("S2xS5").tag == "S2xS5"
        assert FiniteComplexDescriptor.from_tag("cp2xs3").tag == "CP2xS3"

    def test_unknown_tag(self):
        with pytest.raises(DomainError):
            FiniteComplexDescriptor.from_tag("T4")
        with pytest.raises(DomainError):
            FiniteComplexDescriptor.from_tag("S1")


class TestVerdicts:
    def test_neisendorfer_singleton(self):
        verdict = finite_complex_genus_verdict(
            FiniteComplexDescriptor.from_tag("S3"), Neisendorfer()
        )
        assert verdict.kind == VerdictKind.SINGLETON
        assert verdict.witness is None

    def test_postnikov_singleton_among_finite(self):
        verdict = finite_complex_genus_verdict(
            FiniteComplexDescriptor.from_tag("S3"), PostnikovSection(3)
        )
        assert verdict.kind == VerdictKind.SINGLETON_AMONG_FINITE

    def test_split_counterexample(self):
        verdict = finite_complex_genus_verdict(
            FiniteComplexDescriptor.from_tag("S2xS5"), PostnikovSection(2)
        )
        assert verdict.kind == VerdictKind.HYPOTHESES_NOT_MET
        assert verdict.witness == "CP2xS3"

    def test_split_counterexample_is_symmetric(self):
        verdict = finite_complex_genus_verdict(
            FiniteComplexDescriptor.from_tag("CP2xS3"), PostnikovSection(2)
        )
        assert verdict.kind == VerdictKind.HYPOTHESES_NOT_MET
        assert verdict.witness == "S2xS5"

    def test_low_section_on_sphere_fails_hypotheses(self):
        verdict = finite_complex_genus_verdict(
            FiniteComplexDescriptor.from_tag("S5"), PostnikovSection(2)
        )
        assert verdict.kind == VerdictKind.HYPOTHESES_NOT_MET
        assert verdict.witness is None

    def test_neisendorfer_needs_finite_pi2(self):
        verdict = finite_complex_genus_verdict(
            FiniteComplexDescriptor.from_tag("CP2"), Neisendorfer()
        )
        assert verdict.kind == VerdictKind.HYPOTHESES_NOT_MET

    def test_standard_sphere_is_the_unique_finite_complex(self):
        model = assemble_global(3, PostnikovGenusDescriptor(3, 0))
        assert model.classify().is_standard
        verdict = finite_complex_genus_verdict(
            FiniteComplexDescriptor.from_tag("S3"), PostnikovSection(3)
        )
        assert verdict.kind == VerdictKind.SINGLETON_AMONG_FINITE
