import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from twistconj.automorphisms import DetPower, TrivialCentral, parse_word
from twistconj.errors import (
    DimensionTooSmall,
    InvalidRingSpec,
    NotInvertibleOverRing,
    RingNotInfinite,
    ShapeViolation,
)
from twistconj.matrices import Matrix, antitrace, random_invertible, trace
from twistconj.rings import ZZ, ZZ_I, PolynomialRing, PrimeField, degree
from twistconj.twisted import enumerate_group, twisted_act
from twistconj.witnesses import (
    AntitraceSquare,
    OrbitTracePower,
    WitnessFamily,
    certify_separation,
    gen_theorem1,
    gen_theorem2,
    invariant_eval,
    obstruction_exhaustive,
    oracle_implication,
    psi_poly,
)

P = PolynomialRing(ZZ)
CONJ = ZZ_I.automorphism("conj")


def brute_trace_power(m, parity):
    x = P.x
    if parity == "even":
        a = Matrix.from_entries(P, [[x, 1], [-1, 0]])
    else:
        # [[1, x], [0, 1]] times its inverse transpose [[1, 0], [-x, 1]]
        a = Matrix.from_entries(P, [[1 - x * x, x], [-x, 1]])
    acc = Matrix.identity(P, 2)
    for _ in range(m):
        acc = acc @ a
    return acc[0, 0] + acc[1, 1]


def test_psi_spot_values():
    assert psi_poly(2, "even") == P("x^2 - 2")
    assert psi_poly(2, "odd") == P("x^4 - 4x^2 + 2")
    for m in range(1, 8):
        for parity in ("even", "odd"):
            assert psi_poly(m, parity) == brute_trace_power(m, parity)


@pytest.mark.parametrize("m", [1, 5, 17, 40])
def test_psi_degrees(m):
    assert degree(psi_poly(m, "even")) == m
    assert degree(psi_poly(m, "odd")) == 2 * m


@pytest.mark.parametrize("case,n", [(1, 3), (1, 4), (2, 3), (2, 5)])
def test_theorem1_families(case, n):
    fam = gen_theorem1(case, n, ZZ(1), 200)
    assert len(fam) == 200
    assert all(w.det() == 1 for w in fam.matrices)
    assert fam.scanned <= 199 * (n if case == 1 else 2) + 1
    cert = certify_separation(fam)
    assert cert.separated and cert.lower_bound == 200
    assert cert.to_record()["bound"] == "R >= 200"


def test_theorem1_determinant_and_rings():
    fam = gen_theorem1(1, 4, ZZ(-3), 20)
    assert all(w.det() == -3 for w in fam.matrices)
    fam = gen_theorem1(2, 3, ZZ_I("1+i"), 30, ring=ZZ_I)
    assert all(w.det() == ZZ_I("1+i") for w in fam.matrices)
    assert certify_separation(fam).separated


@pytest.mark.parametrize("case", [1, 2])
@pytest.mark.parametrize("n", [3, 4])
def test_theorem2_families(case, n):
    d = ZZ_I("2+i") if case == 1 else ZZ_I("i")
    fam = gen_theorem2(case, n, d, CONJ, 2, 100)
    assert all(w.det() == d for w in fam.matrices)
    assert all(a.value[1] == 0 for a in fam.parameters)
    assert certify_separation(fam).separated


def test_family_errors():
    with pytest.raises(RingNotInfinite):
        gen_theorem1(1, 3, 1, 5, ring=PrimeField(5))
    with pytest.raises(DimensionTooSmall):
        gen_theorem1(1, 2, ZZ(1), 5)
    with pytest.raises(DimensionTooSmall):
        gen_theorem2(1, 2, 1, CONJ, 2, 5)
    with pytest.raises(NotInvertibleOverRing):
        gen_theorem2(2, 3, ZZ_I("1+i"), CONJ, 2, 5)
    with pytest.raises(ValueError):
        gen_theorem2(1, 3, 1, CONJ, 3, 5)
    with pytest.raises(InvalidRingSpec):
        gen_theorem2(1, 3, 1, PrimeField(5).identity_automorphism, 1, 5)


def test_certificate_reports_collisions():
    fam = gen_theorem1(1, 3, ZZ(1), 4)
    clash = WitnessFamily(fam.matrices + fam.matrices[:1], 1, 1, 3, fam.d, ZZ, fam.parameters + fam.parameters[:1])
    cert = certify_separation(clash)
    assert not cert.separated and cert.verdict == "collision(0, 4)"
    assert "bound" not in cert.to_record()


def test_family_record_round_trip():
    fam = gen_theorem2(2, 4, ZZ_I("-i"), CONJ, 2, 10)
    rec = json.loads(fam.to_json())
    back = WitnessFamily.from_record(rec)
    assert back.matrices == fam.matrices
    assert (back.theorem, back.case, back.n, back.d, back.m, back.delta) == (2, 2, 4, fam.d, 2, CONJ)
    assert back.to_record() == rec


def test_invariant_shapes():
    with pytest.raises(ShapeViolation):
        invariant_eval(AntitraceSquare(), Matrix.parse(ZZ, "1,1,0;0,1,0;0,0,1"))
    spec = OrbitTracePower(3, CONJ, 2, "even", ZZ_I(2))
    core = Matrix.parse(ZZ_I, "1,1;0,1")
    full = Matrix.parse(ZZ_I, "1,1,0;0,1,0;0,0,2")
    assert invariant_eval(spec, core) == invariant_eval(spec, full) == (2 + 4) ** 3
    with pytest.raises(ShapeViolation):
        invariant_eval(spec, Matrix.parse(ZZ_I, "1,1,0;0,1,0;0,0,3"))


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(2, 4), st.sampled_from([0, 1, 2]))
def test_trace_power_is_twisted_invariant(seed, n, e):
    rng = random.Random(seed)
    d = random_invertible(ZZ, n, rng, bound=4)
    phi = parse_word(f"I[{d.to_literal()}] C[det^{e}]", ZZ, n)
    z, y = random_invertible(ZZ, n, rng, bound=4), random_invertible(ZZ, n, rng, bound=4)
    x = twisted_act(z, y, phi)
    if x.det() == y.det():
        assert trace(x @ d) ** n == trace(y @ d) ** n


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from([0, 1, -1]))
def test_antitrace_square_is_twisted_invariant(seed, e):
    rng = random.Random(seed)
    d = random_invertible(ZZ_I, 2, rng, bound=3)
    phi = parse_word(f"I[{d.to_literal()}] L C[det^{e}]", ZZ_I, 2)
    z, y = random_invertible(ZZ_I, 2, rng, bound=3), random_invertible(ZZ_I, 2, rng, bound=3)
    x = twisted_act(z, y, phi)
    if x.det() == y.det():
        assert antitrace(x @ d) ** 2 == antitrace(y @ d) ** 2


def test_obstruction_finds_real_conjugators():
    F3 = PrimeField(3)
    G = enumerate_group(F3, 3)
    bj = Matrix.parse(F3, "1,0,0;0,1,1;0,0,1")
    c = G.element(1000)
    bi = c @ bj @ c.T
    res = obstruction_exhaustive(bi, bj, G)
    assert res.conjugator is not None and res.conjugator @ bj @ res.conjugator.T == bi
    scaled = obstruction_exhaustive(bi.scale(c.det()), bj, G, DetPower(1))
    assert scaled.verdict == "conjugator-found"


def test_oracle_implication_small():
    G = enumerate_group(PrimeField(3), 2)
    d = Matrix.parse(G.ring, "1,1;0,1")
    for shape in ("even", "odd"):
        for gamma in (TrivialCentral(), DetPower(1)):
            rep = oracle_implication(G, d, gamma, shape)
            assert rep.ok and rep.pairs_checked > len(G)
