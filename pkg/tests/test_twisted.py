import random

import pytest
from hypothesis import given, settings, strategies as st

from twistconj.automorphisms import AutomorphismWord, Inner, parse_word, random_word
from twistconj.errors import NotAutomorphism, NotDeltaFixed, TooLarge
from twistconj.matrices import Matrix, corner_extend, random_invertible
from twistconj.rings import ZZ, ZZ_I, PrimeField
from twistconj.twisted import (
    burnside_reidemeister,
    conjugated_permutation,
    enumerate_group,
    orbit_corner,
    orbit_product,
    solve_twisted,
    twisted_act,
    twisted_classes,
    twisted_det_product,
)


@pytest.fixture(scope="module")
def groups():
    return {
        "GL2F2": enumerate_group(PrimeField(2), 2),
        "GL2F3": enumerate_group(PrimeField(3), 2),
        "SL2F3": enumerate_group(PrimeField(3), 2, "SL"),
        "GL2F5": enumerate_group(PrimeField(5), 2),
    }


def naive_classes(G, phi):
    elems = list(G)
    seen, count = set(), 0
    for x in elems:
        if x in seen:
            continue
        count += 1
        seen.update(twisted_act(c, x, phi) for c in elems)
    return count


@pytest.mark.parametrize("p,n,kind,order", [(2, 2, "GL", 6), (3, 2, "GL", 48), (3, 2, "SL", 24), (5, 2, "SL", 120), (2, 3, "GL", 168)])
def test_group_orders(p, n, kind, order):
    G = enumerate_group(PrimeField(p), n, kind)
    assert len(G) == order
    assert all(G.index_of(G.element(i)) == i for i in range(0, order, 7))


def test_conjugacy_class_counts(groups):
    identity = lambda G: parse_word("", G.ring, G.n)
    assert twisted_classes(groups["GL2F2"], identity(groups["GL2F2"])).count == 3
    assert twisted_classes(groups["GL2F3"], identity(groups["GL2F3"])).count == 8
    assert twisted_classes(groups["SL2F3"], identity(groups["SL2F3"])).count == 7
    assert twisted_classes(groups["GL2F5"], identity(groups["GL2F5"])).count == 24


def test_gl3_f3_class_count():
    G = enumerate_group(PrimeField(3), 3)
    assert len(G) == 11232
    assert twisted_classes(G, parse_word("", G.ring, 3)).count == 24


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(["GL2F2", "GL2F3", "SL2F3"]))
def test_partition_matches_naive_and_burnside(groups, seed, name):
    G = groups[name]
    rng = random.Random(seed)
    pool = [G.random_element(rng) for _ in range(3)]
    word = random_word(rng, G.ring, G.n, pool, exponents=(0,))
    part = twisted_classes(G, word)
    assert part.count == burnside_reidemeister(G, word)
    assert sum(part.sizes()) == len(G)
    if len(G) <= 48:
        assert part.count == naive_classes(G, word)


def test_twisted_classes_are_orbits(groups):
    G = groups["GL2F3"]
    phi = parse_word("I[1,1;0,1] L", G.ring, 2)
    part = twisted_classes(G, phi)
    rng = random.Random(2)
    for _ in range(30):
        c, y = G.random_element(rng), G.random_element(rng)
        assert part.same_class(G.index_of(y), G.index_of(twisted_act(c, y, phi)))


def test_solve_twisted(groups):
    G = groups["GL2F3"]
    phi = parse_word("I[1,1;0,1] L", G.ring, 2)
    rng = random.Random(8)
    for _ in range(10):
        c, y = G.random_element(rng), G.random_element(rng)
        x = twisted_act(c, y, phi)
        z = solve_twisted(x, y, phi, G)
        assert z is not None and twisted_act(z, y, phi) == x
    ident = Matrix.identity(G.ring, 2)
    assert solve_twisted(Matrix.parse(G.ring, "1,1;0,1"), ident, parse_word("", G.ring, 2), G) is None


def test_conjugation_invariance(groups):
    G = groups["SL2F3"]
    rng = random.Random(4)
    phi = parse_word("I[0,1;2,0] L", G.ring, 2)
    base = twisted_classes(G, phi).count
    for _ in range(5):
        psi = AutomorphismWord(G.ring, 2, [Inner(G.random_element(rng))])
        assert twisted_classes(G, conjugated_permutation(G, phi, psi)).count == base


def test_rejects_non_automorphism():
    G = enumerate_group(PrimeField(7), 2)
    with pytest.raises(NotAutomorphism):
        twisted_classes(G, parse_word("C[det^1]", G.ring, 2))


def test_cap(monkeypatch):
    with pytest.raises(TooLarge):
        enumerate_group(PrimeField(7), 3)
    monkeypatch.setenv("TWISTCONJ_GROUP_CAP", "10")
    with pytest.raises(TooLarge):
        enumerate_group(PrimeField(2), 2)
    with pytest.raises(TooLarge):
        enumerate_group(ZZ, 2)


def test_twisted_det_product():
    conj = ZZ_I.automorphism("conj")
    d = ZZ_I("1+2i")
    assert twisted_det_product(d, conj, 2, "even") == d * conj(d) == 5
    u = ZZ_I("i")
    # i * conj(i)^-1 * i * conj(i)^-1 = (i * i)^2 = 1
    assert twisted_det_product(u, conj, 2, "odd") == 1


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.sampled_from(["even", "odd"]))
def test_orbit_product_of_corner_matches_orbit_corner(seed, parity):
    rng = random.Random(seed)
    conj = ZZ_I.automorphism("conj")
    x = random_invertible(ZZ, 2, rng, bound=4).change_ring(ZZ_I)
    units = ["1", "-1", "i", "-i"]
    d = ZZ_I(rng.choice(units)) if parity == "odd" else ZZ_I.element(ZZ_I.random_raw(rng, 3))
    w = corner_extend(x, d)
    assert orbit_product(w, conj, 2, parity) == orbit_corner(x, d, conj, 2, parity)


def test_orbit_requires_fixed_matrix():
    conj = ZZ_I.automorphism("conj")
    with pytest.raises(NotDeltaFixed):
        orbit_corner(Matrix.parse(ZZ_I, "1,i;0,1"), ZZ_I(1), conj, 2, "even")
