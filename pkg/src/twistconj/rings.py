"""Exact commutative rings: integers, prime fields, Gaussian integers and
univariate polynomials over those.

A ring object describes the ring and implements arithmetic on *raw* values
(plain ints, int pairs, coefficient tuples).  :class:`RingElement` wraps a raw
value together with its ring and gives the usual operator syntax.  The matrix
code works on raw values directly to avoid wrapper overhead.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, NamedTuple, Optional

from .errors import (
    BudgetExhausted,
    InexactDivision,
    InvalidRingSpec,
    NonSeparatingPolynomial,
    NotInvertibleOverRing,
    ParseError,
    RingMismatch,
)

__all__ = [
    "Ring", "Integers", "PrimeField", "GaussianIntegers", "PolynomialRing",
    "RingElement", "RingAutomorphism",
    "make_ring", "is_prime",
    "apply_ring_automorphism", "compose_automorphisms", "automorphism_power",
    "automorphism_order",
    "degree", "evaluate", "change_base",
    "default_stream", "integer_stream",
    "SampleResult", "distinct_image_sampler",
    "ZZ", "ZZ_I",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Ring:
    """Interface shared by all ring descriptors.

    Subclasses are frozen dataclasses, so two descriptors of the same ring
    compare equal and hash alike.
    """

    is_finite: bool = False
    is_integral_domain: bool = True
    characteristic: int = 0

    zero: Any
    one: Any

    # -- raw arithmetic, overridden per kind --
    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def from_int(self, k: int): raise NotImplementedError
    def is_unit(self, a) -> bool: raise NotImplementedError
    def unit_inverse(self, a): raise NotImplementedError
    def exact_div(self, a, b): raise NotImplementedError
    def parse_raw(self, text: str): raise NotImplementedError
    def format_raw(self, a) -> str: raise NotImplementedError
    def random_raw(self, rng: random.Random, bound: int = 10): raise NotImplementedError
    def automorphisms(self) -> list["RingAutomorphism"]: raise NotImplementedError

    def probe_raw(self) -> list:
        """Elements that generate the ring as a ring (used to identify automorphisms)."""
        return [self.one]

    def is_zero(self, a) -> bool:
        return a == self.zero

    def random_unit_raw(self, rng: random.Random):
        return self.one

    def height_raw(self, a) -> int:
        """Size of the exact representation, used to bound random samples."""
        return 0

    def pow(self, a, e: int):
        if e < 0:
            a = self.unit_inverse(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def elements_raw(self) -> Iterator:
        raise InvalidRingSpec(f"ring {self.spec} is infinite and cannot be enumerated")

    # -- element-level conveniences --
    @property
    def spec(self) -> str:
        raise NotImplementedError

    def element(self, raw) -> "RingElement":
        return RingElement(self, raw)

    def __call__(self, x) -> "RingElement":
        if isinstance(x, RingElement):
            if x.ring != self:
                raise RingMismatch(f"element of {x.ring.spec} used in {self.spec}")
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return RingElement(self, self.from_int(x))
        if isinstance(x, str):
            return RingElement(self, self.parse_raw(x))
        raise TypeError(f"cannot coerce {x!r} into {self.spec}")

    def coerce_raw(self, x):
        return self(x).value

    def elements(self) -> Iterator["RingElement"]:
        return (RingElement(self, v) for v in self.elements_raw())

    def automorphism(self, name: str) -> "RingAutomorphism":
        for a in self.automorphisms():
            if a.name == name:
                return a
        raise InvalidRingSpec(f"ring {self.spec} has no automorphism named {name!r}")

    @property
    def identity_automorphism(self) -> "RingAutomorphism":
        return self.automorphism("id")

    def __str__(self) -> str:
        return self.spec


# ---------------------------------------------------------------------------
# Integers

@dataclass(frozen=True)
class Integers(Ring):
    zero = 0
    one = 1

    @property
    def spec(self) -> str:
        return "Z"

    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def neg(self, a): return -a
    def mul(self, a, b): return a * b
    def from_int(self, k): return k
    def is_unit(self, a): return a in (1, -1)

    def unit_inverse(self, a):
        if a in (1, -1):
            return a
        raise NotInvertibleOverRing(f"{a} is not a unit in Z")

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Z")
        q, r = divmod(a, b)
        if r:
            raise InexactDivision(f"{b} does not divide {a} in Z")
        return q

    def parse_raw(self, text):
        try:
            return int(text.strip())
        except ValueError:
            raise ParseError(f"not an integer literal: {text!r}") from None

    def format_raw(self, a): return str(a)

    def random_raw(self, rng, bound=10):
        return rng.randint(-bound, bound)

    def random_unit_raw(self, rng):
        return rng.choice((1, -1))

    def height_raw(self, a):
        return abs(a)

    def automorphisms(self):
        return [_identity(self)]


# ---------------------------------------------------------------------------
# Prime fields

@dataclass(frozen=True)
class PrimeField(Ring):
    p: int
    zero = 0
    one = 1
    is_finite = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidRingSpec(f"Fp requires a prime modulus, got {self.p}")

    @property
    def characteristic(self):  # type: ignore[override]
        return self.p

    @property
    def spec(self):
        return f"Fp:{self.p}"

    def add(self, a, b): return (a + b) % self.p
    def sub(self, a, b): return (a - b) % self.p
    def neg(self, a): return (-a) % self.p
    def mul(self, a, b): return (a * b) % self.p
    def from_int(self, k): return k % self.p
    def is_unit(self, a): return a % self.p != 0

    def unit_inverse(self, a):
        if a % self.p == 0:
            raise NotInvertibleOverRing(f"0 is not a unit in {self.spec}")
        return pow(a, -1, self.p)

    def exact_div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        return (a * pow(b, -1, self.p)) % self.p

    def parse_raw(self, text):
        try:
            return int(text.strip()) % self.p
        except ValueError:
            raise ParseError(f"not a residue literal: {text!r}") from None

    def format_raw(self, a): return str(a)

    def random_raw(self, rng, bound=10):
        return rng.randrange(self.p)

    def random_unit_raw(self, rng):
        return rng.randrange(1, self.p)

    def elements_raw(self):
        return iter(range(self.p))

    def automorphisms(self):
        return [_identity(self)]


# ---------------------------------------------------------------------------
# Gaussian integers, raw value (a, b) for a + b i

_GAUSS_RE = re.compile(
    r"^(?:(?P<re>[+-]?\d+)(?P<im>[+-]\d*)i|(?P<re_only>[+-]?\d+)|(?P<im_only>[+-]?\d*)i)$"
)


def _signed_coeff(s: str) -> int:
    if s in ("", "+"):
        return 1
    if s == "-":
        return -1
    return int(s)


@dataclass(frozen=True)
class GaussianIntegers(Ring):
    zero = (0, 0)
    one = (1, 0)

    @property
    def spec(self):
        return "Zi"

    def add(self, a, b): return (a[0] + b[0], a[1] + b[1])
    def sub(self, a, b): return (a[0] - b[0], a[1] - b[1])
    def neg(self, a): return (-a[0], -a[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def from_int(self, k): return (k, 0)

    def norm(self, a) -> int:
        return a[0] * a[0] + a[1] * a[1]

    def is_unit(self, a):
        return self.norm(a) == 1

    def unit_inverse(self, a):
        # the units are exactly 1, -1, i, -i; each inverse is the conjugate
        if self.norm(a) != 1:
            raise NotInvertibleOverRing(f"{self.format_raw(a)} is not a unit in Zi")
        return (a[0], -a[1])

    def exact_div(self, a, b):
        n = self.norm(b)
        if n == 0:
            raise ZeroDivisionError("division by zero in Zi")
        x, y = self.mul(a, (b[0], -b[1]))
        if x % n or y % n:
            raise InexactDivision(f"{self.format_raw(b)} does not divide {self.format_raw(a)} in Zi")
        return (x // n, y // n)

    def parse_raw(self, text):
        s = text.replace(" ", "")
        m = _GAUSS_RE.match(s)
        if not m:
            raise ParseError(f"not a Gaussian integer literal: {text!r}")
        if m.group("re_only") is not None:
            return (int(m.group("re_only")), 0)
        if m.group("im_only") is not None:
            return (0, _signed_coeff(m.group("im_only")))
        return (int(m.group("re")), _signed_coeff(m.group("im")))

    def format_raw(self, a):
        x, y = a
        if y == 0:
            return str(x)
        im = {1: "i", -1: "-i"}.get(y, f"{y}i")
        if x == 0:
            return im
        return f"{x}{'' if im.startswith('-') else '+'}{im}"

    def random_raw(self, rng, bound=10):
        return (rng.randint(-bound, bound), rng.randint(-bound, bound))

    def random_unit_raw(self, rng):
        return rng.choice(((1, 0), (-1, 0), (0, 1), (0, -1)))

    def height_raw(self, a):
        return max(abs(a[0]), abs(a[1]))

    def probe_raw(self):
        return [self.one, (0, 1)]

    def automorphisms(self):
        return [
            _identity(self),
            RingAutomorphism("conj", self, lambda a: (a[0], -a[1]), claimed_order=2),
        ]


# ---------------------------------------------------------------------------
# Univariate polynomials, raw value = coefficient tuple, lowest degree first,
# no trailing zeros; the zero polynomial is ().

@dataclass(frozen=True)
class PolynomialRing(Ring):
    base: Ring
    var: str = "x"

    def __post_init__(self):
        if isinstance(self.base, PolynomialRing):
            raise InvalidRingSpec("only univariate polynomial rings are supported")
        if self.base.characteristic != 0:
            raise InvalidRingSpec("polynomial rings over prime fields are not supported")
        if not re.fullmatch(r"[a-hj-z]", self.var):
            raise InvalidRingSpec(f"invalid polynomial variable {self.var!r}")

    zero = ()

    @property
    def one(self):  # type: ignore[override]
        return (self.base.one,)

    @property
    def characteristic(self):  # type: ignore[override]
        return self.base.characteristic

    @property
    def spec(self):
        return f"poly:{self.base.spec}"

    def _trim(self, c):
        z = self.base.zero
        n = len(c)
        while n and c[n - 1] == z:
            n -= 1
        return tuple(c[:n])

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        badd = self.base.add
        out = list(a)
        for k, c in enumerate(b):
            out[k] = badd(out[k], c)
        return self._trim(out)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        base = self.base
        badd, bmul = base.add, base.mul
        out = [base.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == base.zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = badd(out[i + j], bmul(x, y))
        return self._trim(out)

    def from_int(self, k):
        return self._trim((self.base.from_int(k),))

    def constant(self, c):
        return self._trim((c,))

    @property
    def x(self) -> "RingElement":
        return RingElement(self, (self.base.zero, self.base.one))

    def degree_raw(self, a) -> int:
        # zero polynomial has degree -1
        return len(a) - 1

    def is_unit(self, a):
        return len(a) == 1 and self.base.is_unit(a[0])

    def unit_inverse(self, a):
        if not self.is_unit(a):
            raise NotInvertibleOverRing(f"{self.format_raw(a)} is not a unit in {self.spec}")
        return (self.base.unit_inverse(a[0]),)

    def exact_div(self, a, b):
        if not b:
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        base = self.base
        rem = list(a)
        q = [base.zero] * max(len(a) - len(b) + 1, 0)
        lead = b[-1]
        for k in range(len(a) - len(b), -1, -1):
            c = rem[k + len(b) - 1]
            if c == base.zero:
                continue
            t = base.exact_div(c, lead)
            q[k] = t
            for j, y in enumerate(b):
                rem[k + j] = base.sub(rem[k + j], base.mul(t, y))
        if self._trim(rem):
            raise InexactDivision(f"{self.format_raw(b)} does not divide {self.format_raw(a)}")
        return self._trim(q)

    def evaluate_raw(self, a, x):
        """Horner evaluation at a raw base element."""
        base = self.base
        acc = base.zero
        for c in reversed(a):
            acc = base.add(base.mul(acc, x), c)
        return acc

    def random_raw(self, rng, bound=10, max_degree=3):
        deg = rng.randint(-1, max_degree)
        return self._trim(tuple(self.base.random_raw(rng, bound) for _ in range(deg + 1)))

    def random_unit_raw(self, rng):
        return (self.base.random_unit_raw(rng),)

    def height_raw(self, a):
        return max((self.base.height_raw(c) for c in a), default=0)

    def probe_raw(self):
        return [self.constant(c) for c in self.base.probe_raw()] + [(self.base.zero, self.base.one)]

    def automorphisms(self):
        out = []
        for a in self.base.automorphisms():
            act = a.action
            out.append(RingAutomorphism(
                a.name, self, lambda p, act=act: tuple(act(c) for c in p),
                claimed_order=a.claimed_order,
            ))
        return out

    # -- literals --
    def format_raw(self, a):
        if not a:
            return "0"
        base = self.base
        pieces = []
        for k in range(len(a) - 1, -1, -1):
            c = a[k]
            if c == base.zero:
                continue
            s = base.format_raw(c)
            neg = False
            if "+" in s[1:] or "-" in s[1:]:
                s = f"({s})"
            elif s.startswith("-"):
                neg, s = True, s[1:]
            if k == 0:
                mono = s
            else:
                mono = ("" if s == "1" else s) + self.var + (f"^{k}" if k > 1 else "")
            pieces.append((neg, mono))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, mono in pieces[1:]:
            out += (" - " if neg else " + ") + mono
        return out

    def parse_raw(self, text):
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise ParseError("empty polynomial literal")
        terms = []
        depth, start = 0, 0
        for k, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch in "+-" and depth == 0 and k > start and s[k - 1] != "^":
                terms.append(s[start:k])
                start = k
        terms.append(s[start:])
        result = ()
        for term in terms:
            result = self.add(result, self._parse_term(term, text))
        return result

    def _parse_term(self, term, text):
        base = self.base
        depth = 0
        vpos = -1
        for k, ch in enumerate(term):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == self.var and depth == 0:
                vpos = k
                break
        if vpos < 0:
            coef_s, power = term, 0
        else:
            coef_s, rest = term[:vpos], term[vpos + 1:]
            if rest == "":
                power = 1
            elif rest.startswith("^") and rest[1:].isdigit():
                power = int(rest[1:])
            else:
                raise ParseError(f"bad monomial {term!r} in {text!r}")
        sign = 1
        if coef_s.startswith(("+", "-")) and (len(coef_s) == 1 or coef_s[1] == "("):
            sign = -1 if coef_s[0] == "-" else 1
            coef_s = coef_s[1:]
        if coef_s.startswith("(") and coef_s.endswith(")"):
            coef_s = coef_s[1:-1]
        if coef_s in ("", "+"):
            coef = base.one
        elif coef_s == "-":
            coef = base.neg(base.one)
        else:
            coef = base.parse_raw(coef_s)
        if sign < 0:
            coef = base.neg(coef)
        return self._trim((base.zero,) * power + (coef,))


ZZ = Integers()
ZZ_I = GaussianIntegers()


# ---------------------------------------------------------------------------
# Elements

class RingElement:
    """An exact element of a ring.  Immutable and hashable."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.spec} vs {other.ring.spec}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        return RingElement(self.ring, self.ring.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return self.value != self.ring.zero

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.unit_inverse(self.value))

    def __repr__(self):
        return f"{self.ring.spec}({self.ring.format_raw(self.value)})"

    def __str__(self):
        return self.ring.format_raw(self.value)


# ---------------------------------------------------------------------------
# Ring automorphisms

@dataclass(frozen=True)
class RingAutomorphism:
    name: str
    ring: Ring
    action: Callable[[Any], Any] = field(compare=False, repr=False)
    claimed_order: Optional[int] = None

    def __call__(self, x: RingElement) -> RingElement:
        return apply_ring_automorphism(self, x)

    @property
    def is_identity(self) -> bool:
        return self.name == "id"


def _identity(ring: Ring) -> RingAutomorphism:
    return RingAutomorphism("id", ring, lambda a: a, claimed_order=1)


def apply_ring_automorphism(delta: RingAutomorphism, x: RingElement) -> RingElement:
    if x.ring != delta.ring:
        raise RingMismatch(f"automorphism of {delta.ring.spec} applied to element of {x.ring.spec}")
    return RingElement(x.ring, delta.action(x.value))


def _check_set(ring: Ring, n_samples: int = 32, seed: int = 0) -> list:
    rng = random.Random(seed)
    return ring.probe_raw() + [ring.random_raw(rng) for _ in range(n_samples)]


def _agree(f, g, points) -> bool:
    return all(f(v) == g(v) for v in points)


def compose_automorphisms(a: RingAutomorphism, b: RingAutomorphism) -> RingAutomorphism:
    """The automorphism ``a o b`` (b applied first).

    The result is identified with a named automorphism of the ring when one
    agrees with it on generators and samples.
    """
    if a.ring != b.ring:
        raise RingMismatch("automorphisms of different rings")
    if a.is_identity:
        return b
    if b.is_identity:
        return a
    act_a, act_b = a.action, b.action
    action = lambda v: act_a(act_b(v))  # noqa: E731
    points = _check_set(a.ring)
    for known in a.ring.automorphisms():
        if _agree(known.action, action, points):
            return known
    return RingAutomorphism(f"{a.name}*{b.name}", a.ring, action, None)


def automorphism_power(delta: RingAutomorphism, k: int) -> RingAutomorphism:
    if k < 0:
        order = delta.claimed_order or automorphism_order(delta, 64)
        if order is None:
            raise ValueError(f"cannot invert automorphism {delta.name} of unknown order")
        k %= order
    result = delta.ring.identity_automorphism
    for _ in range(k):
        result = compose_automorphisms(delta, result)
    return result


def automorphism_order(delta: RingAutomorphism, cap: int = 64) -> Optional[int]:
    """Least m <= cap with delta^m = id on generators and seeded samples, else None."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    points = _check_set(delta.ring, n_samples=64)
    current = list(points)
    for m in range(1, cap + 1):
        current = [delta.action(v) for v in current]
        if current == points:
            return m
    return None


# ---------------------------------------------------------------------------
# Polynomial helpers

def _poly_ring(f: RingElement) -> PolynomialRing:
    if not isinstance(f.ring, PolynomialRing):
        raise RingMismatch(f"expected a polynomial, got element of {f.ring.spec}")
    return f.ring


def degree(f: RingElement) -> int:
    """Degree of a polynomial; -1 for the zero polynomial."""
    return _poly_ring(f).degree_raw(f.value)


def evaluate(f: RingElement, x) -> RingElement:
    ring = _poly_ring(f)
    xv = ring.base.coerce_raw(x)
    return RingElement(ring.base, ring.evaluate_raw(f.value, xv))


def change_base(f: RingElement, target: PolynomialRing) -> RingElement:
    """Map a polynomial's coefficients into another polynomial ring via their literals.

    Intended for the integer-coefficient polynomials, which embed in every
    characteristic-0 base.
    """
    ring = _poly_ring(f)
    if ring == target:
        return f
    coeffs = [target.base.parse_raw(ring.base.format_raw(c)) for c in f.value]
    return RingElement(target, target._trim(tuple(coeffs)))


# ---------------------------------------------------------------------------
# Element streams and the distinct-image sampler

def default_stream(ring: Ring) -> Iterator[RingElement]:
    """Nonzero elements, smallest first: 1, 2, 3, ... for integer-like rings;
    square shells in lexicographic order for Gaussian integers."""
    if isinstance(ring, PrimeField):
        return (ring.element(k) for k in range(1, ring.p))
    if isinstance(ring, GaussianIntegers):
        def shells():
            for r in itertools.count(1):
                for a in range(-r, r + 1):
                    for b in range(-r, r + 1):
                        if max(abs(a), abs(b)) == r:
                            yield ring.element((a, b))
        return shells()
    return integer_stream(ring)


def integer_stream(ring: Ring, start: int = 1) -> Iterator[RingElement]:
    """Images of start, start+1, ... under the canonical map from the integers."""
    return (ring.element(ring.from_int(k)) for k in itertools.count(start))


class SampleResult(NamedTuple):
    elements: list
    images: list
    scanned: int


def distinct_image_sampler(
    f: RingElement,
    source: Iterable,
    count: int,
    scan_budget: int,
) -> SampleResult:
    """Draw ``count`` elements from ``source`` whose images under ``f`` are
    pairwise distinct.

    In an integral domain each value of a degree-r polynomial has at most r
    preimages, so at most (count - 1) * r + 1 distinct inputs are ever needed.
    """
    ring = _poly_ring(f)
    deg = ring.degree_raw(f.value)
    if deg < 1:
        raise NonSeparatingPolynomial(f"polynomial {ring.format_raw(f.value)} has degree {deg} < 1")
    base = ring.base
    elements, images, seen = [], [], set()
    scanned = 0
    if count <= 0:
        return SampleResult(elements, images, scanned)
    for x in source:
        if scanned >= scan_budget:
            break
        xv = base.coerce_raw(x)
        scanned += 1
        y = ring.evaluate_raw(f.value, xv)
        if y in seen:
            continue
        seen.add(y)
        elements.append(base.element(xv))
        images.append(base.element(y))
        if len(elements) == count:
            return SampleResult(elements, images, scanned)
    raise BudgetExhausted(
        f"found {len(elements)} of {count} distinct images after scanning {scanned} inputs"
    )


# ---------------------------------------------------------------------------
# Ring spec grammar:  Z | Fp:<p> | Zi | poly:<spec>

def make_ring(spec: str) -> Ring:
    s = spec.strip()
    if s == "Z":
        return ZZ
    if s == "Zi":
        return ZZ_I
    if s.startswith("Fp:"):
        tail = s[3:]
        if not tail.isdigit():
            raise ParseError(f"malformed prime field spec {spec!r}")
        return PrimeField(int(tail))
    if s.startswith("poly:"):
        return PolynomialRing(make_ring(s[5:]))
    raise ParseError(f"unknown ring spec {spec!r}")
