"""Twisted conjugacy: the action c . y = c y phi(c)^-1, exhaustive class
enumeration and Burnside counting over finite matrix groups, and the
delta-orbit products that appear when a twisted conjugacy relation is pushed
around the orbit of a finite-order ring automorphism.

Finite groups are stored as a canonical (lexicographically sorted) int64 array
of shape (N, n, n) over a prime field, so group-wide computations vectorize.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .automorphisms import (
    AutomorphismCheck,
    AutomorphismWord,
    AutoGenerator,
    Central,
    Contragredient,
    DetPower,
    Inner,
    RingAuto,
    StandardAutomorphism,
    TrivialCentral,
)
from .errors import NotAutomorphism, NotDeltaFixed, NotInvertibleOverRing, RingMismatch, TooLarge
from .matrices import Matrix, contragredient, corner_extend, entrywise, inverse
from .rings import PrimeField, Ring, RingAutomorphism, RingElement, automorphism_power

__all__ = [
    "FiniteMatrixGroup", "TwistedPartition",
    "twisted_act", "enumerate_group", "twisted_classes", "burnside_reidemeister", "solve_twisted",
    "orbit_power_even", "orbit_power_odd", "twisted_det_product", "orbit_product",
    "conjugated_permutation", "group_cap", "DEFAULT_GROUP_CAP",
]

# Bounds the candidate space |F_p|^(n^2) that enumerate_group scans; 5^9 fits so
# GL_3(F_5) is reachable.
DEFAULT_GROUP_CAP = 2_000_000
CAP_ENV = "TWISTCONJ_GROUP_CAP"


def group_cap() -> int:
    return int(os.environ.get(CAP_ENV, DEFAULT_GROUP_CAP))


def twisted_act(c: Matrix, y: Matrix, phi) -> Matrix:
    """c y phi(c)^-1."""
    return c @ y @ inverse(phi.apply(c))


# ---------------------------------------------------------------------------
# Batched arithmetic mod p on arrays of shape (..., n, n)

def _bmul(a, b, p):
    return np.matmul(a, b) % p


def _bdet(a, p):
    n = a.shape[-1]
    if n == 1:
        return a[..., 0, 0] % p
    if n == 2:
        return (a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]) % p
    acc = np.zeros(a.shape[:-2], dtype=np.int64)
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=-2), j, axis=-1)
        term = a[..., 0, j] * _bdet(minor, p) % p
        acc = (acc + term) % p if j % 2 == 0 else (acc - term) % p
    return acc


def _badj(a, p):
    n = a.shape[-1]
    out = np.empty_like(a)
    if n == 1:
        out[...] = 1
        return out
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(a, i, axis=-2), j, axis=-1)
            c = _bdet(minor, p)
            out[..., j, i] = c if (i + j) % 2 == 0 else (-c) % p
    return out


def _inv_table(p):
    return np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)


def _binv(a, p):
    det = _bdet(a, p)
    return (_badj(a, p) * _inv_table(p)[det][..., None, None]) % p


def _to_array(m: Matrix) -> np.ndarray:
    return np.array(m.rows, dtype=np.int64)


# ---------------------------------------------------------------------------
# Finite groups

class FiniteMatrixGroup:
    """GL_n(F_p) or SL_n(F_p), elements in canonical (lexicographic) order."""

    def __init__(self, ring: PrimeField, n: int, kind: str, arr: np.ndarray, verify: bool = True):
        self.ring = ring
        self.n = n
        self.kind = kind
        self.p = ring.p
        self.arr = arr
        self._weights = self.p ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        self.keys = self.encode(arr)
        if np.any(np.diff(self.keys) <= 0):
            raise ValueError("group elements must be distinct and canonically ordered")
        self.dets = _bdet(arr, self.p)
        self._inverse_idx: Optional[np.ndarray] = None
        if verify:
            self._verify(random.Random(0))

    # -- indexing --
    def encode(self, batch: np.ndarray) -> np.ndarray:
        flat = batch.reshape(-1, self.n * self.n)
        return flat @ self._weights

    def indices(self, batch: np.ndarray) -> np.ndarray:
        """Positions of the given matrices in the group, -1 for non-members."""
        keys = self.encode(batch % self.p)
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, len(self.keys) - 1)
        return np.where(self.keys[pos] == keys, pos, -1)

    def index_of(self, m: Matrix) -> int:
        if m.ring != self.ring:
            raise RingMismatch(f"matrix over {m.ring.spec}, group over {self.ring.spec}")
        i = int(self.indices(_to_array(m)[None])[0])
        if i < 0:
            raise KeyError(f"{m.to_literal()} is not in {self.name}")
        return i

    def __contains__(self, m: Matrix) -> bool:
        return m.ring == self.ring and m.n == self.n and int(self.indices(_to_array(m)[None])[0]) >= 0

    def __len__(self):
        return len(self.keys)

    def element(self, i: int) -> Matrix:
        return Matrix(self.ring, self.arr[int(i)].tolist())

    def __iter__(self):
        return (self.element(i) for i in range(len(self)))

    def random_element(self, rng: random.Random) -> Matrix:
        return self.element(rng.randrange(len(self)))

    @property
    def name(self) -> str:
        return f"{self.kind}_{self.n}(F_{self.p})"

    def __repr__(self):
        return f"<{self.name}: {len(self)} elements>"

    def inverse_indices(self) -> np.ndarray:
        if self._inverse_idx is None:
            self._inverse_idx = self.indices(_binv(self.arr, self.p))
        return self._inverse_idx

    def _verify(self, rng: random.Random):
        if np.any(self.inverse_indices() < 0):
            raise ValueError(f"{self.name} is not closed under inversion")
        N = len(self)
        if N <= 2000:
            for i in range(N):
                if np.any(self.indices(_bmul(self.arr[i], self.arr, self.p)) < 0):
                    raise ValueError(f"{self.name} is not closed under products")
        else:
            a = np.array([rng.randrange(N) for _ in range(20000)])
            b = np.array([rng.randrange(N) for _ in range(20000)])
            if np.any(self.indices(_bmul(self.arr[a], self.arr[b], self.p)) < 0):
                raise ValueError(f"{self.name} is not closed under products")

    # -- automorphisms acting on the whole group --
    def batch_apply(self, phi, batch: np.ndarray) -> np.ndarray:
        p = self.p
        if isinstance(phi, AutomorphismWord):
            for g in reversed(phi.generators):
                batch = self._batch_generator(g, batch)
            return batch
        if isinstance(phi, StandardAutomorphism):
            batch = self._batch_generator(RingAuto(phi.delta), batch)
            batch = self._batch_generator(Central(phi.gamma), batch)
            if phi.r:
                batch = self._batch_generator(Contragredient(), batch)
            return _bmul(_bmul(_to_array(phi.d), batch, p), _to_array(phi.d_inv), p)
        if isinstance(phi, AutoGenerator):
            return self._batch_generator(phi, batch)
        return self._batch_fallback(phi.apply if hasattr(phi, "apply") else phi, batch)

    def _batch_fallback(self, fn: Callable[[Matrix], Matrix], batch: np.ndarray) -> np.ndarray:
        return np.array([fn(Matrix(self.ring, m.tolist())).rows for m in batch], dtype=np.int64)

    def _batch_generator(self, g: AutoGenerator, batch: np.ndarray) -> np.ndarray:
        p = self.p
        if isinstance(g, Inner):
            return _bmul(_bmul(_to_array(g.d), batch, p), _to_array(g.d_inv), p)
        if isinstance(g, Contragredient):
            return np.swapaxes(_binv(batch, p), -1, -2)
        if isinstance(g, Central):
            gamma = g.gamma
            if isinstance(gamma, TrivialCentral) or (isinstance(gamma, DetPower) and gamma.e == 0):
                return batch
            if isinstance(gamma, DetPower):
                table = np.array([pow(x, gamma.e % (p - 1), p) if x else 0 for x in range(p)], dtype=np.int64)
                return (batch * table[_bdet(batch, p)][..., None, None]) % p
            return self._batch_fallback(g.apply, batch)
        if isinstance(g, RingAuto):
            if g.delta.is_identity:
                return batch
            return self._batch_fallback(g.apply, batch)
        raise TypeError(f"not an automorphism generator: {g!r}")

    def image_indices(self, phi) -> np.ndarray:
        """phi as an index array: phi(element i) = element result[i] (-1 if outside G)."""
        if isinstance(phi, np.ndarray):
            return phi
        return self.indices(self.batch_apply(phi, self.arr))

    def check_automorphism(self, phi, seed: int = 0, max_pairs: int = 250_000) -> AutomorphismCheck:
        N = len(self)
        try:
            perm = self.image_indices(phi)
        except (NotInvertibleOverRing, ArithmeticError, KeyError) as exc:
            return AutomorphismCheck(False, 0, f"evaluation failed: {exc}")
        if np.any(perm < 0):
            i = int(np.flatnonzero(perm < 0)[0])
            return AutomorphismCheck(False, 0, "image leaves the group", (self.element(i),))
        if len(np.unique(perm)) != N:
            vals, first = np.unique(perm, return_index=True)
            dup = next(i for i in range(N) if first[np.searchsorted(vals, perm[i])] != i)
            j = int(first[np.searchsorted(vals, perm[dup])])
            return AutomorphismCheck(False, 0, "not injective", (self.element(j), self.element(dup)))
        arr, p = self.arr, self.p
        checked = 0
        if N * N <= max_pairs:
            for i in range(N):
                lhs = perm[self.indices(_bmul(arr[i], arr, p))]
                rhs = self.indices(_bmul(arr[perm[i]], arr[perm], p))
                checked += N
                bad = np.flatnonzero(lhs != rhs)
                if len(bad):
                    return AutomorphismCheck(False, checked, "not multiplicative",
                                             (self.element(i), self.element(int(bad[0]))))
        else:
            rng = np.random.default_rng(seed)
            a = rng.integers(0, N, size=max_pairs)
            b = rng.integers(0, N, size=max_pairs)
            lhs = perm[self.indices(_bmul(arr[a], arr[b], p))]
            rhs = self.indices(_bmul(arr[perm[a]], arr[perm[b]], p))
            checked = max_pairs
            bad = np.flatnonzero(lhs != rhs)
            if len(bad):
                k = int(bad[0])
                return AutomorphismCheck(False, checked, "not multiplicative",
                                         (self.element(a[k]), self.element(b[k])))
        return AutomorphismCheck(True, checked)


def enumerate_group(ring: Ring, n: int, kind: str = "GL", cap: Optional[int] = None) -> FiniteMatrixGroup:
    if not isinstance(ring, PrimeField):
        raise TooLarge(f"only prime fields can be enumerated, got {ring.spec}")
    if kind not in ("GL", "SL"):
        raise ValueError(f"kind must be GL or SL, got {kind!r}")
    p = ring.p
    cap = group_cap() if cap is None else cap
    if p ** (n * n) > cap:
        raise TooLarge(f"{p}^{n * n} candidate matrices exceed the cap {cap}")
    cand = np.indices((p,) * (n * n), dtype=np.int64).reshape(n * n, -1).T.reshape(-1, n, n)
    det = _bdet(cand, p)
    mask = det != 0 if kind == "GL" else det == 1
    return FiniteMatrixGroup(ring, n, kind, np.ascontiguousarray(cand[mask]))


# ---------------------------------------------------------------------------
# Reidemeister classes

@dataclass
class TwistedPartition:
    group: FiniteMatrixGroup
    automorphism: object
    labels: np.ndarray
    classes: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.classes)

    def __len__(self):
        return self.count

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def same_class(self, i: int, j: int) -> bool:
        return self.labels[i] == self.labels[j]

    def records(self) -> list[dict]:
        """One record per class: its size and canonical (least) representative."""
        return [
            {"size": int(len(c)), "representative": self.group.element(c[0]).to_literal()}
            for c in self.classes
        ]


def _phi_inverse_array(G: FiniteMatrixGroup, perm: np.ndarray) -> np.ndarray:
    # row c holds phi(c)^-1 = phi(c^-1)
    return G.arr[G.inverse_indices()[perm]]


def _checked_perm(G: FiniteMatrixGroup, phi, check: bool) -> np.ndarray:
    perm = G.image_indices(phi)
    if check:
        verdict = G.check_automorphism(perm)
        if not verdict.ok:
            raise NotAutomorphism(f"not an automorphism of {G.name}: {verdict.reason}")
    return perm


def twisted_classes(G: FiniteMatrixGroup, phi, check: bool = True) -> TwistedPartition:
    perm = _checked_perm(G, phi, check)
    phinv = _phi_inverse_array(G, perm)
    labels = np.full(len(G), -1, dtype=np.int64)
    classes = []
    for y in range(len(G)):
        if labels[y] >= 0:
            continue
        orbit = np.unique(G.indices(_bmul(_bmul(G.arr, G.arr[y], G.p), phinv, G.p)))
        if np.any(labels[orbit] >= 0) or orbit[0] != y:
            raise AssertionError("twisted orbits overlap; phi is not an automorphism")
        labels[orbit] = len(classes)
        classes.append(orbit)
    return TwistedPartition(G, phi, labels, classes)


def burnside_reidemeister(G: FiniteMatrixGroup, phi, check: bool = True) -> int:
    """Average number of fixed points of the twisted action (orbit counting)."""
    perm = _checked_perm(G, phi, check)
    arr, p = G.arr, G.p
    total = 0
    for g in range(len(G)):
        # g x phi(g)^-1 = x  <=>  g x = x phi(g)
        lhs = G.encode(_bmul(arr[g], arr, p))
        rhs = G.encode(_bmul(arr, arr[perm[g]], p))
        total += int(np.count_nonzero(lhs == rhs))
    q, r = divmod(total, len(G))
    if r:
        raise AssertionError("fixed-point total not divisible by |G|")
    return q


def solve_twisted(x: Matrix, y: Matrix, phi, G: FiniteMatrixGroup, check: bool = True) -> Optional[Matrix]:
    """Some Z in G with x = Z y phi(Z)^-1, or None."""
    perm = _checked_perm(G, phi, check)
    phinv = _phi_inverse_array(G, perm)
    target = G.encode(_to_array(x) % G.p)[0]
    keys = G.encode(_bmul(_bmul(G.arr, _to_array(y), G.p), phinv, G.p))
    hits = np.flatnonzero(keys == target)
    if not len(hits):
        return None
    z = G.element(hits[0])
    zphi = G.element(perm[hits[0]])
    if z @ y @ inverse(zphi) != x:
        raise AssertionError("solver returned an invalid conjugator")
    return z


def conjugated_permutation(G: FiniteMatrixGroup, phi, psi) -> np.ndarray:
    """psi o phi o psi^-1 as an index array."""
    p_phi = G.image_indices(phi)
    p_psi = G.image_indices(psi)
    inv_psi = np.empty_like(p_psi)
    inv_psi[p_psi] = np.arange(len(p_psi))
    return p_psi[p_phi[inv_psi]]


# ---------------------------------------------------------------------------
# delta-orbit products

def _require_fixed(x: Matrix, delta: RingAutomorphism):
    if entrywise(delta, x) != x:
        raise NotDeltaFixed(f"matrix is not fixed by {delta.name}")


def twisted_det_product(d: RingElement, delta: RingAutomorphism, m: int, parity: str) -> RingElement:
    """d delta(d) ... delta^(m-1)(d) (even) or d delta(d^-1) delta^2(d) ... delta^(2m-1)(d^-1) (odd)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if d.ring != delta.ring:
        raise RingMismatch(f"element of {d.ring.spec}, automorphism of {delta.ring.spec}")
    ring = d.ring
    if parity == "even":
        factors, steps = [d], m
    elif parity == "odd":
        if not d.is_unit():
            raise NotInvertibleOverRing(f"{d} is not a unit in {ring.spec}")
        factors, steps = [d, d.inverse()], 2 * m
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    acc = RingElement(ring, ring.one)
    current = delta.ring.identity_automorphism
    for k in range(steps):
        acc = acc * current(factors[k % len(factors)])
        current = automorphism_power(delta, k + 1)
    return acc


def orbit_power_even(x: Matrix, d: RingElement, delta: RingAutomorphism, m: int) -> tuple[Matrix, RingElement]:
    """(X^m, d~) with d~ = prod_k delta^k(d); corner_extend gives X^m(d~)."""
    _require_fixed(x, delta)
    return x ** m, twisted_det_product(d, delta, m, "even")


def orbit_power_odd(x: Matrix, d: RingElement, delta: RingAutomorphism, m: int) -> tuple[Matrix, RingElement]:
    """((X Lambda(X))^m, d~) with d~ = d delta(d^-1) delta^2(d) ... delta^(2m-1)(d^-1)."""
    _require_fixed(x, delta)
    dt = twisted_det_product(d, delta, m, "odd")
    return (x @ contragredient(x)) ** m, dt


def orbit_product(w: Matrix, delta: RingAutomorphism, m: int, parity: str) -> Matrix:
    """Product of the delta-orbit of a full matrix W.

    even: W delta(W) ... delta^(m-1)(W);
    odd:  W delta(Lambda W) delta^2(W) ... delta^(2m-1)(Lambda W).

    For W = corner_extend(X, d) with X delta-fixed this equals
    corner_extend(*orbit_power_even/odd(X, d, delta, m)).
    """
    if parity == "even":
        terms = [(w, k) for k in range(m)]
    elif parity == "odd":
        lw = contragredient(w)
        terms = [(w if k % 2 == 0 else lw, k) for k in range(2 * m)]
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    acc = Matrix.identity(w.ring, w.n)
    for t, k in terms:
        acc = acc @ entrywise(automorphism_power(delta, k), t)
    return acc


def orbit_corner(x: Matrix, d: RingElement, delta: RingAutomorphism, m: int, parity: str) -> Matrix:
    """X^m(d~) (even) or (X Lambda X)^m(d~) (odd) assembled via corner_extend."""
    fn = orbit_power_even if parity == "even" else orbit_power_odd
    core, dt = fn(x, d, delta, m)
    return corner_extend(core, dt)
