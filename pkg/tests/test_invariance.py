import numpy as np
import pytest

from relcalc import (
    Relation,
    Subspace,
    adjoint_within,
    classify,
    compress,
    embed,
    is_invariant,
    is_reducing,
    orthogonal_relation_sum,
    reduction_certificates,
)

import gen


def test_trivial_subspaces_invariant(rng):
    for _ in range(10):
        t = gen.random_relation(rng, 4)
        assert is_invariant(t, Subspace.full(4)).ok
        assert is_invariant(t, Subspace.zero(4)).ok
        assert is_reducing(t, Subspace.full(4))
        assert is_reducing(t, Subspace.zero(4))


def test_invariant_diagonal():
    t = Relation.from_operator(np.diag([1.0, 2.0]))
    assert is_invariant(t, Subspace.from_basis_indices(2, [0])).ok


def test_invariance_condition_breakdown():
    # nilpotent block: dom of the restricted part is {0}, not dom ^ K
    t = Relation.from_operator(np.array([[0.0, 1.0], [0.0, 0.0]]))
    check = is_invariant(t, Subspace.from_basis_indices(2, [1]))
    assert not check.ok
    assert check.domain_splits and check.multivalued_splits
    assert not check.restriction_domain_matches


def test_reducing_block_diagonal(rng):
    m1 = gen.complex_matrix(rng, 2, 2)
    m2 = gen.complex_matrix(rng, 3, 3)
    blk = np.zeros((5, 5), dtype=complex)
    blk[:2, :2] = m1
    blk[2:, 2:] = m2
    t = Relation.from_operator(blk)
    k = Subspace.from_basis_indices(5, [0, 1])
    assert is_reducing(t, k)
    report = reduction_certificates(t, k)
    assert report.ok


def test_not_reducing_jordan_block():
    t = Relation.from_operator(np.array([[0.0, 1.0], [0.0, 0.0]]))
    k = Subspace.from_basis_indices(2, [0])
    assert not is_reducing(t, k)
    # the complement fails invariance, matching the equivalence
    assert is_invariant(t, k).ok
    assert not is_invariant(t, k.complement()).ok


def test_adjoint_within_examples(rng):
    t = Relation.from_operator(np.diag([1j, 5.0]))
    k = Subspace.from_basis_indices(2, [0])
    restricted = t.restrict(k)
    e1 = np.array([1.0, 0.0])
    expected = Relation.from_pairs([(e1, -1j * e1)])
    assert adjoint_within(restricted, k).gap(expected) < 1e-12

    s = gen.random_relation(rng, 3)
    assert adjoint_within(s, Subspace.full(3)).gap(s.adjoint()) < 1e-10


def test_adjoint_within_precondition(rng):
    t = Relation.identity(2)
    with pytest.raises(ValueError):
        adjoint_within(t, Subspace.from_basis_indices(2, [0]))


def test_adjoint_distributes_over_reduction(rng):
    for _ in range(20):
        t, k = gen.random_reducing_pair(rng, 5)
        part = t.restrict(k)
        assert adjoint_within(part, k).gap(t.adjoint().restrict(k)) < 1e-9


def test_reduction_equivalence_both_directions(rng):
    reducing_seen = nonreducing_seen = 0
    for _ in range(40):
        n = 4
        t, k = gen.random_reducing_pair(rng, n)
        assert is_reducing(t, k)
        assert is_invariant(t, k).ok and is_invariant(t, k.complement()).ok
        reducing_seen += 1

        t2 = gen.random_relation(rng, n)
        k2 = gen.random_subspace(rng, n, int(rng.integers(1, n)))
        if is_reducing(t2, k2):
            continue
        nonreducing_seen += 1
        assert not (is_invariant(t2, k2).ok and is_invariant(t2, k2.complement()).ok)
    assert reducing_seen > 0 and nonreducing_seen > 0


def test_reduction_certificates_conjugated(rng):
    for _ in range(10):
        t, k = gen.random_reducing_pair(rng, 4)
        report = reduction_certificates(t, k)
        assert report.ok, report.residuals
        assert report.adjoint_reduced
        assert report.transform_reduced["+i"] and report.transform_reduced["-i"]


def test_reduction_certificates_adversarial(rng):
    seen = 0
    for _ in range(20):
        t = gen.random_relation(rng, 4)
        k = gen.random_subspace(rng, 4, 2)
        report = reduction_certificates(t, k)
        if report.reducing:
            continue
        seen += 1
        assert not report.ok
    assert seen > 0


def test_multivalued_part_reduces_dissipative(rng):
    for _ in range(20):
        t = gen.random_dissipative(rng, 4)
        assert is_reducing(t, t.mul())


def test_orthogonal_relation_sum_errors(rng):
    t = Relation.identity(2)
    with pytest.raises(ValueError):
        orthogonal_relation_sum(t, t)
    s = gen.random_relation(rng, 3)
    with pytest.raises(ValueError):
        orthogonal_relation_sum(t, s)


def test_compress_embed_roundtrip(rng):
    for _ in range(10):
        t, k = gen.random_reducing_pair(rng, 5)
        part = t.restrict(k)
        small = compress(part, k)
        assert small.n == k.dim
        assert embed(small, k).gap(part) < 1e-10
    with pytest.raises(ValueError):
        compress(Relation.identity(2), Subspace.from_basis_indices(2, [0]))


def test_compressed_classification_matches(rng):
    # restriction of a selfadjoint relation to a reducing subspace stays
    # selfadjoint in the compressed coordinates
    for _ in range(10):
        t = gen.random_selfadjoint(rng, 4)
        mul = t.mul()
        if mul.dim in (0, 4):
            continue
        part = t.restrict(mul.complement())
        small = compress(part, mul.complement())
        assert classify(small).is_selfadjoint
