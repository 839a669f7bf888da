import json
import random
from collections import Counter, defaultdict

import pytest

from loosened_collatz.lcf import eval_lcf, is_satisfying
from loosened_collatz.monoid import (
    AnchorMismatchError,
    AtomDecomposition,
    MembershipError,
    concat,
    decompose,
    divides,
    equivalent,
    factorization_fingerprint,
    identity,
    is_atom,
    member,
    return_positions,
    rotation_return_positions,
)


@pytest.fixture(scope="module")
def members_by_k(satisfying_universe6):
    out = defaultdict(list)
    for t in satisfying_universe6:
        k = is_satisfying(t).value
        out[k].append(member(t, k))
    return out


def test_member():
    assert member((2,), 1).anchor == 1
    assert member((0, 3, 2), 4).tuple == (0, 3, 2)
    with pytest.raises(MembershipError):
        member((0, 3, 2), 1)
    with pytest.raises(MembershipError):
        member((1,), 1)
    assert identity(7).is_identity


def test_concat_examples():
    one = member((2,), 1)
    assert concat(one, one).tuple == (2, 2)
    ab = concat(one, member((0, 0, 3, 4), 1))
    assert ab.tuple == (2, 0, 0, 3, 4)
    v = eval_lcf(ab.tuple)
    assert (v.numerator, v.denominator) == (269, 269)
    assert concat(identity(1), one) == one
    assert one * one == member((2, 2), 1)


def test_concat_anchor_mismatch():
    with pytest.raises(AnchorMismatchError):
        concat(member((2,), 1), member((0, 3, 2), 4))


def test_equivalent_examples():
    x, y = member((2,), 1), member((0, 0, 3, 4), 1)
    assert equivalent(x * y, y * x)
    assert not equivalent(x, member((2, 2), 1))
    assert equivalent(x, x)
    assert not equivalent(x, member((0, 3, 2), 4))


def test_is_atom_examples():
    assert is_atom(member((2,), 1))
    assert not is_atom(member((2, 2), 1))
    assert is_atom(member((0, 0, 3, 4), 1))
    assert is_atom(member((0, 3, 2), 4))
    with pytest.raises(ValueError):
        is_atom(identity(1))


def test_decompose_examples():
    assert decompose(member((2, 2), 1)).atoms == ((2,), (2,))
    assert decompose(member((2, 0, 0, 3, 4), 1)).atoms == ((2,), (0, 0, 3, 4))
    assert decompose(member((0, 3, 2), 4)).atoms == ((0, 3, 2),)


def test_divides_examples():
    one, two = member((2,), 1), member((2, 2), 1)
    assert divides(one, two)
    assert not divides(two, one)
    assert divides(member((0, 0, 3, 4), 1), member((2, 0, 0, 3, 4), 1))
    assert divides(identity(1), one)


def test_fingerprint_examples():
    fp = factorization_fingerprint(member((2, 0, 0, 3, 4), 1))
    assert fp == factorization_fingerprint(member((0, 0, 3, 4, 2), 1)) == ((2,), (0, 0, 3, 4))
    assert factorization_fingerprint(member((2, 2), 1)) == ((2,), (2,))
    assert factorization_fingerprint(member((0, 3, 2), 4)) == ((0, 3, 2),)


def test_decomposition_json():
    d = decompose(member((2, 0, 0, 3, 4), 1))
    data = json.loads(json.dumps(d.to_json()))
    assert data == {"k": "1", "tuple": [2, 0, 0, 3, 4], "atoms": [[2], [0, 0, 3, 4]]}
    assert AtomDecomposition.from_json(data) == d


def test_decomposition_invariants(members_by_k):
    for elems in members_by_k.values():
        for e in elems:
            atoms = decompose(e).atoms
            assert sum(atoms, ()) == e.tuple
            for a in atoms:
                assert is_atom(member(a, e.anchor))


def test_prefix_cut_matches_rotation_cut(members_by_k):
    for elems in members_by_k.values():
        for e in elems:
            assert return_positions(e) == rotation_return_positions(e)


def test_equivalence_iff_fingerprint(members_by_k):
    for elems in members_by_k.values():
        by_len = defaultdict(list)
        for e in elems:
            by_len[len(e)].append(e)
        for group in by_len.values():
            for a in group:
                for b in group:
                    assert equivalent(a, b) == (
                        factorization_fingerprint(a) == factorization_fingerprint(b)
                    ), (a, b)


def test_monoid_laws_sampled(members_by_k):
    rng = random.Random(1234)
    for k in (1, 4):
        pool = members_by_k[k]
        assert pool
        e = identity(k)
        for _ in range(100):
            a, b, c = (rng.choice(pool) for _ in range(3))
            ab, ba = a * b, b * a
            assert eval_lcf(ab.tuple).as_fraction() == k == eval_lcf(ba.tuple).as_fraction()
            assert (a * b) * c == a * (b * c)
            assert a * e == a == e * a
            assert equivalent(ab, ba)
            if equivalent(a * b, a * c):
                assert equivalent(b, c)
            assert Counter(factorization_fingerprint(ab)) == (
                Counter(factorization_fingerprint(a)) + Counter(factorization_fingerprint(b))
            )
            assert divides(a, ab) and divides(b, ab)


def test_atom_products_in_any_order_share_fingerprint(members_by_k):
    rng = random.Random(99)
    atoms = [e for e in members_by_k[1] if is_atom(e)]
    for _ in range(50):
        picks = [rng.choice(atoms) for _ in range(rng.randint(1, 4))]
        x = identity(1)
        for p in picks:
            x = x * p
        rng.shuffle(picks)
        y = identity(1)
        for p in picks:
            y = y * p
        assert factorization_fingerprint(x) == factorization_fingerprint(y)
        assert equivalent(x, y)


def test_equivalent_distinct_atoms_beyond_desk_scale():
    # Two loops through 1, inserted in either order into a circuit anchored
    # at 2, give distinct atoms of S_2 with identical edge multisets.
    a = member((0, 1, 1, 2, 3, 4, 2, 0, 0, 3, 4, 1), 2)
    b = member((0, 1, 1, 2, 3, 4, 0, 0, 3, 4, 2, 1), 2)
    assert is_atom(a) and is_atom(b)
    assert equivalent(a, b)
    assert factorization_fingerprint(a) != factorization_fingerprint(b)
