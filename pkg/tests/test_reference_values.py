"""Pinned small values, each checkable by hand."""

import pytest

from twistconj.automorphisms import (
    AutomorphismWord,
    Central,
    Contragredient,
    DetPower,
    Inner,
    StandardAutomorphism,
    TableCentral,
    TrivialCentral,
    check_automorphism,
    normalize,
    parse_word,
)
from twistconj.errors import InvalidRingSpec, NonSeparatingPolynomial, NotInvertibleOverRing, RingNotInfinite
from twistconj.matrices import (
    Matrix,
    antitrace,
    block_split,
    congruence_antitrace,
    contragredient,
    corner_extend,
    entrywise,
    trace,
)
from twistconj.rings import (
    ZZ,
    ZZ_I,
    PolynomialRing,
    PrimeField,
    automorphism_order,
    change_base,
    distinct_image_sampler,
    evaluate,
    integer_stream,
    make_ring,
)
from twistconj.twisted import (
    burnside_reidemeister,
    enumerate_group,
    orbit_power_even,
    orbit_power_odd,
    solve_twisted,
    twisted_act,
    twisted_classes,
)
from twistconj.witnesses import (
    AntitraceSquare,
    OrbitTracePower,
    TracePower,
    certify_separation,
    gen_theorem1,
    gen_theorem2,
    invariant_eval,
    obstruction_exhaustive,
    psi_poly,
)

P = PolynomialRing(ZZ)
F3, F5 = PrimeField(3), PrimeField(5)
CONJ = ZZ_I.automorphism("conj")


def M(ring, text):
    return Matrix.parse(ring, text)


# -- rings -----------------------------------------------------------------

def test_ring_flags():
    z, f7 = make_ring("Z"), make_ring("Fp:7")
    assert not z.is_finite and z.is_integral_domain
    assert f7.is_finite and len(list(f7.elements())) == 7
    with pytest.raises(InvalidRingSpec):
        make_ring("Fp:6")


def test_ring_automorphism_values():
    ident = ZZ.identity_automorphism
    assert ident(ZZ(5)) == 5
    assert CONJ(ZZ_I(4)) == 4
    assert CONJ(ZZ_I("2+3i")) == ZZ_I("2-3i")
    assert automorphism_order(ident) == 1
    assert automorphism_order(CONJ) == 2
    assert automorphism_order(CONJ, cap=1) is None


def test_sampler_values():
    res = distinct_image_sampler(P("x^3"), integer_stream(ZZ, 1), 3, 7)
    assert res.elements == [1, 2, 3] and res.images == [1, 8, 27]
    res = distinct_image_sampler(P("x^2 - x"), integer_stream(ZZ, 0), 3, 5)
    assert res.elements == [0, 2, 3]
    with pytest.raises(NonSeparatingPolynomial):
        distinct_image_sampler(P(5), integer_stream(ZZ), 1, 10)


# -- matrices --------------------------------------------------------------

def test_matrix_values():
    a = M(ZZ, "0,1;-1,0")
    assert M(ZZ, "1,1;0,1") @ a == M(ZZ, "-1,1;-1,0")
    assert Matrix.identity(ZZ, 2) @ a == a and a.T.T == a
    assert Matrix.identity(ZZ, 4).det() == 1
    assert M(ZZ, "7,5;0,1").det() == 7
    assert M(ZZ, "1,1;0,1").inverse() == M(ZZ, "1,-1;0,1")
    assert M(F3, "2,0;0,2").inverse() == M(F3, "2,0;0,2")
    with pytest.raises(NotInvertibleOverRing):
        M(ZZ, "2,0;0,1").inverse()
    assert trace(Matrix.identity(ZZ, 5)) == 5
    assert trace(M(P, "x,1;-1,0")) == P.x


def test_antitrace_values():
    assert antitrace(Matrix.identity(ZZ, 2)) == 0
    assert antitrace(M(ZZ, "0,1;-1,0")) == 2
    assert antitrace(M(ZZ, "1,5;3,2")) == 2
    a = M(ZZ, "1,3;1,2")
    assert congruence_antitrace(Matrix.identity(ZZ, 2), a) == antitrace(a)
    assert congruence_antitrace(M(ZZ, "1,1;0,1"), M(ZZ, "0,1;-1,0")) == 2
    assert congruence_antitrace(M(ZZ, "2,0;0,1"), a) == 4


def test_contragredient_and_entrywise_values():
    assert contragredient(Matrix.identity(ZZ, 3)) == Matrix.identity(ZZ, 3)
    assert contragredient(M(P, "1,x;0,1")) == M(P, "1,0;-x,1")
    assert contragredient(M(ZZ, "1,1;0,1")) == M(ZZ, "1,0;-1,1")
    assert entrywise(CONJ, M(ZZ_I, "i,0;0,1")) == M(ZZ_I, "-i,0;0,1")
    integral = M(ZZ_I, "2,1;-1,0")
    assert entrywise(CONJ, integral) == integral
    assert entrywise(ZZ.identity_automorphism, M(ZZ, "3,4;5,6")) == M(ZZ, "3,4;5,6")


def test_block_values():
    assert corner_extend(Matrix.identity(ZZ, 2), ZZ(5)) == M(ZZ, "1,0,0;0,1,0;0,0,5")
    assert corner_extend(M(ZZ, "2,1;-1,0"), ZZ(1)).det() == 1
    parts = block_split(M(ZZ, "1,2,3;4,5,6;7,8,9"), 2)
    assert [p.shape for p in (parts.tl, parts.tr, parts.bl, parts.br)] == [(1, 1), (1, 2), (2, 1), (2, 2)]


# -- automorphisms ---------------------------------------------------------

def test_generator_values():
    d = M(ZZ, "2,1;1,1")
    a = M(ZZ, "1,2;3,4")
    assert Inner(d).apply(a) == d @ a @ d.inverse()
    assert Contragredient().apply(M(ZZ, "1,1;0,1")) == M(ZZ, "1,0;-1,1")
    assert Central(DetPower(1)).apply(M(F5, "2,0;0,1")) == M(F5, "4,0;0,2")
    assert DetPower(1).scalar(M(F5, "2,0;0,1")) == 2
    assert TrivialCentral().scalar(a) == 1 and DetPower(0).scalar(a) == 1


def test_normal_form_values():
    d = M(F3, "1,1;0,1")
    nf = normalize(AutomorphismWord(F3, 2, [Contragredient(), Inner(d)]))
    assert (nf.d, nf.r, nf.gamma, nf.delta.name) == (d.T.inverse(), 1, TrivialCentral(), "id")
    nf = normalize(AutomorphismWord(F3, 2, [Contragredient(), Contragredient()]))
    assert nf == StandardAutomorphism.identity(F3, 2)
    nf = normalize(AutomorphismWord(F3, 2, [Central(DetPower(1)), Inner(d)]))
    assert (nf.d, nf.r, nf.gamma) == (d, 0, DetPower(1))


def test_automorphism_checks():
    G3 = enumerate_group(F3, 2)
    assert check_automorphism(parse_word("", F3, 2), G3).ok
    G2 = enumerate_group(PrimeField(2), 2)
    assert check_automorphism(parse_word("C[det^1]", G2.ring, 2), G2).ok
    table = {a: a.det() for a in G3}
    corrupted = TableCentral({**table, G3.element(0): table[G3.element(0)] * 2}, validate=False)
    verdict = check_automorphism(AutomorphismWord(F3, 2, [Central(corrupted)]), G3)
    assert not verdict.ok and len(verdict.counterexample) == 2


# -- twisted ---------------------------------------------------------------

def test_twisted_act_values():
    F2 = PrimeField(2)
    lam = parse_word("L", F2, 2)
    c, ident = M(F2, "1,1;0,1"), Matrix.identity(F2, 2)
    assert twisted_act(ident, c, lam) == c
    assert twisted_act(c, ident, lam) == c @ c.T
    y = M(F3, "1,2;0,1")
    g = M(F3, "2,1;1,1")
    assert twisted_act(g, y, parse_word("", F3, 2)) == g @ y @ g.inverse()


def test_group_values():
    assert len(enumerate_group(PrimeField(2), 2)) == 6
    assert len(enumerate_group(F3, 2, "SL")) == 24
    assert len(enumerate_group(F3, 2)) == 48


def test_class_count_values():
    G2 = enumerate_group(PrimeField(2), 2)
    ident = parse_word("", G2.ring, 2)
    assert twisted_classes(G2, ident).count == 3 == burnside_reidemeister(G2, ident)
    S = enumerate_group(F3, 2, "SL")
    base = twisted_classes(S, parse_word("", F3, 2)).count
    assert twisted_classes(S, parse_word("I[1,1;0,1]", F3, 2)).count == base
    lam = parse_word("L", F3, 2)
    assert twisted_classes(S, lam).count == burnside_reidemeister(S, lam)


def test_solver_values():
    G = enumerate_group(F3, 2)
    phi = parse_word("L", F3, 2)
    x = G.element(7)
    assert solve_twisted(x, x, phi, G) is not None
    part = twisted_classes(G, phi)
    other = next(i for i in range(len(G)) if not part.same_class(7, i))
    assert solve_twisted(x, G.element(other), phi, G) is None


def test_orbit_power_values():
    x = M(ZZ, "1,2;0,1")
    ident = ZZ.identity_automorphism
    assert orbit_power_even(x, ZZ(5), ident, 1) == (x, ZZ(5))
    assert orbit_power_even(x, ZZ(2), ident, 3) == (x ** 3, ZZ(8))
    assert orbit_power_odd(Matrix.identity(ZZ, 2), ZZ(-1), ident, 4) == (Matrix.identity(ZZ, 2), ZZ(1))
    assert orbit_power_odd(x, ZZ(1), ident, 1) == (M(ZZ, "-3,2;-2,1"), ZZ(1))
    xi = x.change_ring(ZZ_I)
    assert orbit_power_even(xi, ZZ_I("1+i"), CONJ, 2) == (xi ** 2, ZZ_I(2))
    assert orbit_power_odd(xi, ZZ_I("i"), CONJ, 1)[1] == -1


# -- witnesses -------------------------------------------------------------

def test_invariant_values():
    assert invariant_eval(TracePower(3), Matrix.identity(ZZ, 3)) == 27
    assert invariant_eval(AntitraceSquare(), M(ZZ, "1,0,0;0,7,4;0,0,1")) == 16
    spec = OrbitTracePower(3, ZZ.identity_automorphism, 1, "even", ZZ(1))
    assert invariant_eval(spec, M(ZZ, "6,1;-1,0")) == 7 ** 3
    assert trace(M(ZZ, "5,1,0;-1,0,0;0,0,1")) == 6


def test_psi_values():
    assert psi_poly(1, "even") == P.x
    assert psi_poly(2, "even") == P("x^2 - 2")
    assert psi_poly(3, "even") == P("x^3 - 3x")
    assert psi_poly(2, "odd") == P("x^4 - 4x^2 + 2")
    assert psi_poly(1, "odd") == P("2 - x^2")


def test_theorem1_values():
    fam = gen_theorem1(1, 3, ZZ(1), 2)
    assert fam.matrices == [M(ZZ, "0,1,0;-1,0,0;0,0,1"), M(ZZ, "1,1,0;-1,0,0;0,0,1")]
    assert [invariant_eval(TracePower(3), w) for w in fam.matrices] == [1, 8]
    cert = certify_separation(fam)
    assert cert.verdict == "separated" and cert.values == [1, 8]
    assert [trace(w) for w in gen_theorem1(1, 3, ZZ(1), 5).matrices] == [1, 2, 3, 4, 5]
    fam = gen_theorem1(2, 3, ZZ(1), 2)
    assert fam.matrices == [M(ZZ, "1,0,0;0,1,1;0,0,1"), M(ZZ, "1,0,0;0,1,2;0,0,1")]
    assert certify_separation(fam).values == [1, 4]
    with pytest.raises(RingNotInfinite):
        gen_theorem1(1, 3, 1, 2, ring=F3)


def test_theorem2_values():
    ident = ZZ.identity_automorphism
    fam = gen_theorem2(1, 3, ZZ(1), ident, 1, 2)
    assert fam.parameters == [1, 2]
    assert certify_separation(fam).values == [8, 27]
    fam = gen_theorem2(2, 3, ZZ(1), ident, 1, 2)
    assert fam.parameters[1] == 2
    assert certify_separation(fam).values[1] == -1
    fam = gen_theorem2(1, 3, ZZ_I("1+i"), CONJ, 2, 5)
    spec = fam.default_invariant()
    # d~ = (1+i)(1-i) = 2, so the invariant is (psi_2(a) + 2)^3
    f = change_base((psi_poly(2, "even") + 2) ** 3, PolynomialRing(ZZ_I))
    assert [invariant_eval(spec, w) for w in fam.matrices] == [evaluate(f, a) for a in fam.parameters]


def test_empty_family_is_vacuously_separated():
    cert = certify_separation(gen_theorem1(1, 3, ZZ(1), 0))
    assert cert.separated and cert.values == []


def test_obstruction_values():
    G = enumerate_group(F3, 3)
    b = M(F3, "1,0,0;0,1,1;0,0,1")
    same = obstruction_exhaustive(b, b, G)
    assert same.conjugator == Matrix.identity(F3, 3) and same.nonsymmetric_block
    sym = M(F3, "1,0,0;0,1,0;0,0,1")
    res = obstruction_exhaustive(b, sym, G)
    assert res.verdict == "no-conjugator" and res.candidates == 11232 and res.nonsymmetric_block is False
