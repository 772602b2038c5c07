"""Separating invariants for twisted conjugacy, explicit witness families,
separation certificates and the exhaustive finite-field oracles that check
the invariants never separate genuinely twisted-conjugate matrices.

Invariants are evaluated on the *folded* matrix W = X D, so for
phi = phi_D o Gamma (even shape) the question "X ~ Y?" becomes a question
about W_X and W_Y alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

import numpy as np

from .automorphisms import (
    AutomorphismWord,
    Central,
    CentralMap,
    Contragredient,
    DetPower,
    Inner,
    TrivialCentral,
)
from .errors import (
    DimensionMismatch,
    DimensionTooSmall,
    InvalidRingSpec,
    NotInvertibleOverRing,
    RingNotInfinite,
    ShapeViolation,
    TooLarge,
    UnknownOrder,
)
from .matrices import Matrix, antitrace, block_diag, block_split, contragredient, corner_extend, trace
from .rings import (
    ZZ,
    PolynomialRing,
    Ring,
    RingAutomorphism,
    RingElement,
    automorphism_order,
    change_base,
    default_stream,
    degree,
    distinct_image_sampler,
    integer_stream,
    make_ring,
)
from .twisted import (
    FiniteMatrixGroup,
    _bmul,
    _to_array,
    group_cap,
    orbit_corner,
    twisted_classes,
    twisted_det_product,
)

__all__ = [
    "TracePower", "AntitraceSquare", "OrbitTracePower", "InvariantSpec",
    "invariant_eval", "psi_poly", "p_matrix",
    "WitnessFamily", "gen_theorem1", "gen_theorem2",
    "SeparationCertificate", "certify_separation",
    "ObstructionResult", "obstruction_exhaustive",
    "ImplicationReport", "oracle_implication", "folded_automorphism",
]


# ---------------------------------------------------------------------------
# Invariant specs

@dataclass(frozen=True)
class TracePower:
    n: int

    def token(self):
        return f"trpow:{self.n}"


@dataclass(frozen=True)
class AntitraceSquare:
    def token(self):
        return "atr2"


@dataclass(frozen=True)
class OrbitTracePower:
    n: int
    delta: RingAutomorphism
    m: int
    parity: str
    d: RingElement

    def token(self):
        return f"orbit:{self.n}:{self.delta.name}:{self.m}:{self.parity}:{self.d}"


InvariantSpec = Union[TracePower, AntitraceSquare, OrbitTracePower]


def _bottom_block(w: Matrix) -> Matrix:
    """The 2x2 block of diag(I_{n-2}, W_hat); W itself when 2x2."""
    n = w.n
    if n == 2:
        return w
    part = block_split(w, 2)
    zero = w.ring.zero
    if not part.tl.is_identity() or any(v != zero for row in part.tr.rows + part.bl.rows for v in row):
        raise ShapeViolation("antitrace invariant needs the block form diag(I, W_hat)")
    return part.br


def _orbit_core(spec: OrbitTracePower, w: Matrix) -> Matrix:
    if w.n == spec.n - 1:
        return w
    if w.n == spec.n:
        part = block_split(w, 1)
        zero = w.ring.zero
        if part.br.rows[0][0] != w.ring.coerce_raw(spec.d) or any(
            v != zero for row in part.tr.rows + part.bl.rows for v in row
        ):
            raise ShapeViolation("orbit invariant needs the corner form X(d)")
        return part.tl
    raise ShapeViolation(f"orbit invariant for n={spec.n} got a {w.n}x{w.n} matrix")


def invariant_eval(spec: InvariantSpec, w: Matrix) -> RingElement:
    if isinstance(spec, TracePower):
        if w.n != spec.n:
            raise DimensionMismatch(f"trace power for n={spec.n} got a {w.n}x{w.n} matrix")
        return trace(w) ** spec.n
    if isinstance(spec, AntitraceSquare):
        return antitrace(_bottom_block(w)) ** 2
    if isinstance(spec, OrbitTracePower):
        core = _orbit_core(spec, w)
        return trace(orbit_corner(core, spec.d, spec.delta, spec.m, spec.parity)) ** spec.n
    raise TypeError(f"unknown invariant spec {spec!r}")


# ---------------------------------------------------------------------------
# psi_m polynomials

def p_matrix(a, parity: str, ring: Optional[Ring] = None) -> Matrix:
    """[[a, 1], [-1, 0]] for the even shape, [[1, a], [0, 1]] for the odd one."""
    if isinstance(a, RingElement):
        ring, av = a.ring, a.value
    else:
        av = ring.coerce_raw(a)
    one, zero = ring.one, ring.zero
    if parity == "even":
        return Matrix(ring, [[av, one], [ring.neg(one), zero]])
    if parity == "odd":
        return Matrix(ring, [[one, av], [zero, one]])
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


POLY_Z = PolynomialRing(ZZ)


@lru_cache(maxsize=None)
def psi_poly(m: int, parity: str) -> RingElement:
    """tr(P_x^m) (even) or tr((P_x Lambda(P_x))^m) (odd) as a polynomial over Z."""
    if m < 1:
        raise ValueError("m must be >= 1")
    p = p_matrix(POLY_Z.x, parity)
    if parity == "odd":
        p = p @ contragredient(p)
    return trace(p ** m)


# ---------------------------------------------------------------------------
# Witness families

@dataclass
class WitnessFamily:
    matrices: list
    theorem: int
    case: int
    n: int
    d: RingElement
    ring: Ring
    parameters: list
    delta: Optional[RingAutomorphism] = None
    m: Optional[int] = None
    scanned: int = 0

    @property
    def parity(self) -> str:
        return "even" if self.case == 1 else "odd"

    def __len__(self):
        return len(self.matrices)

    def default_invariant(self) -> InvariantSpec:
        if self.theorem == 1:
            return TracePower(self.n) if self.case == 1 else AntitraceSquare()
        return OrbitTracePower(self.n, self.delta, self.m, self.parity, self.d)

    def to_record(self) -> dict:
        rec = {
            "kind": "witness-family",
            "theorem": self.theorem,
            "case": self.case,
            "n": self.n,
            "ring": self.ring.spec,
            "d": str(self.d),
            "parameters": [str(a) for a in self.parameters],
            "matrices": [m.to_literal() for m in self.matrices],
        }
        if self.theorem == 2:
            rec["delta"] = self.delta.name
            rec["m"] = self.m
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "WitnessFamily":
        ring = make_ring(rec["ring"])
        delta = ring.automorphism(rec["delta"]) if rec.get("delta") else None
        return cls(
            matrices=[Matrix.parse(ring, s) for s in rec["matrices"]],
            theorem=int(rec["theorem"]),
            case=int(rec["case"]),
            n=int(rec["n"]),
            d=ring(rec["d"]),
            ring=ring,
            parameters=[ring(s) for s in rec["parameters"]],
            delta=delta,
            m=rec.get("m"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)


def _check_infinite_domain(ring: Ring, n: int):
    if n < 3:
        raise DimensionTooSmall(f"witness families need n >= 3, got {n}")
    if ring.is_finite:
        raise RingNotInfinite(f"{ring.spec} is finite; the families need an infinite integral domain")
    if not ring.is_integral_domain:
        raise InvalidRingSpec(f"{ring.spec} is not an integral domain")
    if isinstance(ring, PolynomialRing):
        raise InvalidRingSpec("witness parameters over polynomial rings are not supported")


def _theorem1_case1_matrix(b: RingElement, d: RingElement, n: int) -> Matrix:
    ring = b.ring
    top = Matrix.from_entries(ring, [[b + (2 - n), d], [-1, 0]])
    if n == 2:
        return top
    return block_diag(top, Matrix.identity(ring, n - 2))


def _theorem1_case2_matrix(b: RingElement, d: RingElement, n: int) -> Matrix:
    ring = b.ring
    hat = Matrix.from_entries(ring, [[d, b], [0, 1]])
    return block_diag(Matrix.identity(ring, n - 2), hat)


def gen_theorem1(case: int, n: int, d, count: int, ring: Optional[Ring] = None, stream: Optional[Iterable] = None) -> WitnessFamily:
    """First ``count`` members of the determinant-d families separating the
    phi_D Gamma (case 1) and phi_D Lambda Gamma (case 2) classes."""
    ring = ring or (d.ring if isinstance(d, RingElement) else ZZ)
    d = ring(d)
    _check_infinite_domain(ring, n)
    if case not in (1, 2):
        raise ValueError("case must be 1 or 2")
    pr = PolynomialRing(ring)
    x = pr.x
    f = x ** n if case == 1 else x ** 2
    source = stream if stream is not None else default_stream(ring)
    if case == 2:
        source = (b for b in source if ring(b))
    budget = max(count - 1, 0) * degree(f) + 1
    sample = distinct_image_sampler(f, source, count, budget)
    build = _theorem1_case1_matrix if case == 1 else _theorem1_case2_matrix
    mats = [build(b, d, n) for b in sample.elements]
    return WitnessFamily(mats, 1, case, n, d, ring, sample.elements, scanned=sample.scanned)


def _theorem2_core(a: RingElement, n: int, parity: str) -> Matrix:
    p = p_matrix(a, parity)
    if n == 3:
        return p
    return block_diag(p, Matrix.identity(a.ring, n - 3))


def gen_theorem2(case: int, n: int, d, delta: RingAutomorphism, m: int, count: int) -> WitnessFamily:
    """Members A_i(d) = diag(P_{a_i}, I_{n-3}, d) with integer a_i chosen so the
    delta-orbit trace powers are pairwise distinct."""
    ring = delta.ring
    d = ring(d)
    if n < 3:
        raise DimensionTooSmall(f"witness families need n >= 3, got {n}")
    if ring.characteristic != 0:
        raise InvalidRingSpec(f"{ring.spec} does not contain the integers")
    if case not in (1, 2):
        raise ValueError("case must be 1 or 2")
    order = delta.claimed_order or automorphism_order(delta)
    if order is None:
        raise UnknownOrder(f"order of {delta.name} is unknown")
    period = m if case == 1 else 2 * m
    if period % order:
        raise ValueError(f"{delta.name} has order {order}; delta^{period} is not the identity")
    parity = "even" if case == 1 else "odd"
    if case == 2 and not d.is_unit():
        raise NotInvertibleOverRing(f"{d} is not a unit in {ring.spec}")
    dt = twisted_det_product(d, delta, m, parity)
    pr = PolynomialRing(ring)
    psi = change_base(psi_poly(m, parity), pr)
    f = (psi + (n - 3) + RingElement(pr, pr.constant(dt.value))) ** n
    budget = max(count - 1, 0) * degree(f) + 1
    sample = distinct_image_sampler(f, integer_stream(ring), count, budget)
    mats = [corner_extend(_theorem2_core(a, n, parity), d) for a in sample.elements]
    return WitnessFamily(mats, 2, case, n, d, ring, sample.elements, delta=delta, m=m, scanned=sample.scanned)


# ---------------------------------------------------------------------------
# Certificates

@dataclass
class SeparationCertificate:
    family: WitnessFamily
    spec: InvariantSpec
    values: list
    collision: Optional[tuple[int, int]] = None

    @property
    def separated(self) -> bool:
        return self.collision is None

    @property
    def verdict(self) -> str:
        if self.separated:
            return "separated"
        i, j = self.collision
        return f"collision({i}, {j})"

    @property
    def lower_bound(self) -> int:
        return len(self.values) if self.separated else 0

    def to_record(self) -> dict:
        rec = {
            "kind": "separation-certificate",
            "family": self.family.to_record(),
            "invariant": self.spec.token(),
            "values": [str(v) for v in self.values],
            "verdict": self.verdict,
        }
        if self.separated:
            rec["bound"] = f"R >= {self.lower_bound}"
        return rec


def certify_separation(family: WitnessFamily, spec: Optional[InvariantSpec] = None) -> SeparationCertificate:
    spec = spec or family.default_invariant()
    values = [invariant_eval(spec, w) for w in family.matrices]
    seen: dict = {}
    for j, v in enumerate(values):
        i = seen.setdefault(v, j)
        if i != j:
            return SeparationCertificate(family, spec, values, (i, j))
    return SeparationCertificate(family, spec, values)


# ---------------------------------------------------------------------------
# Exhaustive oracles over finite fields

def _central_scalars(G: FiniteMatrixGroup, gamma: CentralMap) -> np.ndarray:
    p = G.p
    if isinstance(gamma, TrivialCentral) or (isinstance(gamma, DetPower) and gamma.e == 0):
        return np.ones(len(G), dtype=np.int64)
    if isinstance(gamma, DetPower):
        table = np.array([pow(x, gamma.e % (p - 1), p) if x else 0 for x in range(p)], dtype=np.int64)
        return table[G.dets]
    return np.array([gamma.scalar(c).value for c in G], dtype=np.int64)


@dataclass
class ObstructionResult:
    conjugator: Optional[Matrix]
    candidates: int
    nonsymmetric_block: Optional[bool]

    @property
    def verdict(self) -> str:
        return "no-conjugator" if self.conjugator is None else "conjugator-found"

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "conjugator": None if self.conjugator is None else self.conjugator.to_literal(),
            "candidates": self.candidates,
            "nonsymmetric_block": self.nonsymmetric_block,
        }


def obstruction_exhaustive(bi: Matrix, bj: Matrix, G: FiniteMatrixGroup, gamma: Optional[CentralMap] = None) -> ObstructionResult:
    """Search all C in G for B_i = C B_j gamma(C) C^T.

    Also reports whether B_j's bottom 2x2 block B_hat_j has invertible
    B_hat_j - B_hat_j^T (equivalently a unit antitrace), the precondition of
    the block argument.
    """
    gamma = gamma or TrivialCentral()
    for b in (bi, bj):
        if b.ring != G.ring or b.n != G.n:
            raise DimensionMismatch(f"matrix over {b.ring.spec} of size {b.n} vs group {G.name}")
    if len(G) > group_cap():
        raise TooLarge(f"{G.name} has {len(G)} elements, above the cap")
    hat = block_split(bj, 2).br if bj.n > 2 else bj
    nonsym = antitrace(hat).is_unit()
    p = G.p
    arr = G.arr
    prod = _bmul(_bmul(arr, _to_array(bj), p), np.swapaxes(arr, -1, -2), p)
    prod = (prod * _central_scalars(G, gamma)[:, None, None]) % p
    target = G.encode(_to_array(bi) % p)[0]
    hits = np.flatnonzero(G.encode(prod) == target)
    if not len(hits):
        return ObstructionResult(None, len(G), nonsym)
    # prefer the identity when it already works
    ident = G.index_of(Matrix.identity(G.ring, G.n))
    c = G.element(ident if ident in hits else hits[0])
    z = gamma.scalar(c)
    if c @ bj.scale(z) @ c.T != bi:
        raise AssertionError("obstruction search returned an invalid conjugator")
    return ObstructionResult(c, len(G), nonsym)


def folded_automorphism(d: Matrix, gamma: CentralMap, shape: str) -> AutomorphismWord:
    """phi_D o Gamma (even) or phi_D o Lambda o Gamma (odd)."""
    gens = [Inner(d)] + ([Contragredient()] if shape == "odd" else []) + [Central(gamma)]
    return AutomorphismWord(d.ring, d.n, gens)


@dataclass
class ImplicationReport:
    group: str
    shape: str
    automorphism: str
    classes: int
    pairs_checked: int
    violations: int
    example: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_record(self) -> dict:
        rec = {
            "group": self.group, "shape": self.shape, "automorphism": self.automorphism,
            "classes": self.classes, "pairs_checked": self.pairs_checked, "violations": self.violations,
        }
        if self.example:
            rec["example"] = [m.to_literal() for m in self.example]
        return rec


def _folded_invariants(G: FiniteMatrixGroup, d: Matrix, shape: str) -> np.ndarray:
    p, n = G.p, G.n
    w = _bmul(G.arr, _to_array(d), p)
    if shape == "even":
        tr = np.trace(w, axis1=-2, axis2=-1) % p
        return np.array([pow(int(t), n, p) for t in tr], dtype=np.int64)
    if n != 2:
        raise DimensionMismatch("the antitrace implication is stated for n = 2")
    atr = (w[:, 0, 1] - w[:, 1, 0]) % p
    return (atr * atr) % p


def oracle_implication(G: FiniteMatrixGroup, d: Matrix, gamma: CentralMap, shape: str) -> ImplicationReport:
    """Exhaustively check: X ~_phi Y and det X = det Y imply equal folded invariants.

    Even shape, phi = phi_D o Gamma: (tr XD)^n = (tr YD)^n.
    Odd shape (n = 2), phi = phi_D o Lambda o Gamma: (atr XD)^2 = (atr YD)^2.
    """
    phi = folded_automorphism(d, gamma, shape)
    part = twisted_classes(G, phi)
    inv = _folded_invariants(G, d, shape)
    pairs = violations = 0
    example = None
    for cls in part.classes:
        dets = G.dets[cls]
        for dv in np.unique(dets):
            members = cls[dets == dv]
            pairs += len(members) ** 2
            vals = inv[members]
            bad = vals != vals[0]
            if np.any(bad):
                _, counts = np.unique(vals, return_counts=True)
                violations += len(members) ** 2 - int(np.sum(counts ** 2))
                if example is None:
                    example = (G.element(members[0]), G.element(members[np.flatnonzero(bad)[0]]))
    word = " ".join(g.token() for g in phi.generators)
    return ImplicationReport(G.name, shape, word, part.count, pairs, violations, example)
