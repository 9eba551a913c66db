"""Exact polynomial arithmetic for phase-space observables.

Two layers. ``Scalar`` is a polynomial with rational coefficients in the
formal deformation parameter ``theta`` and the Planck constant ``hbar``;
it plays the role of the coefficient ring. ``Observable`` is a polynomial
in the four phase-space coordinates ``(q1, q2, p1, p2)`` over that ring.

Both are kept in canonical sparse form (zero coefficients are never
stored), so structural equality is ring equality and ``is_zero`` is a
dictionary emptiness check. Nothing is rounded until an explicit numeric
evaluation, which goes through ``fractions.Fraction`` end to end.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

RationalLike = Union[int, Fraction]

COORD_NAMES = ("q1", "q2", "p1", "p2")
PARAM_NAMES = ("theta", "hbar")

ParamKey = tuple[int, int]          # (theta power, hbar power)
MonomialKey = tuple[int, int, int, int]  # exponents of q1, q2, p1, p2

_ZERO_MONO: MonomialKey = (0, 0, 0, 0)


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Scalar:
    """Element of Q[theta, hbar], stored as exponent-pair -> coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ParamKey, RationalLike] | None = None):
        canonical: dict[ParamKey, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                frac = _as_fraction(coeff)
                if frac:
                    canonical[key] = frac
        self._terms = canonical

    @classmethod
    def from_rational(cls, value: RationalLike) -> "Scalar":
        return cls({(0, 0): _as_fraction(value)})

    @classmethod
    def term(cls, coeff: RationalLike, theta: int = 0, hbar: int = 0) -> "Scalar":
        return cls({(theta, hbar): _as_fraction(coeff)})

    @classmethod
    def zero(cls) -> "Scalar":
        return cls()

    @classmethod
    def one(cls) -> "Scalar":
        return cls.from_rational(1)

    @classmethod
    def theta(cls) -> "Scalar":
        return cls.term(1, theta=1)

    @classmethod
    def hbar(cls) -> "Scalar":
        return cls.term(1, hbar=1)

    def terms(self) -> Iterator[tuple[ParamKey, Fraction]]:
        return iter(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, theta: int = 0, hbar: int = 0) -> Fraction:
        return self._terms.get((theta, hbar), Fraction(0))

    @property
    def is_constant(self) -> bool:
        """True when no formal parameter appears."""
        return all(key == (0, 0) for key in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("scalar depends on a formal parameter")
        return self.coefficient()

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_rational(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for key, coeff in rhs._terms.items():
            total = out.get(key, Fraction(0)) + coeff
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        result = Scalar.__new__(Scalar)
        result._terms = out
        return result

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        result = Scalar.__new__(Scalar)
        result._terms = {key: -coeff for key, coeff in self._terms.items()}
        return result

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out: dict[ParamKey, Fraction] = {}
        for (t1, h1), c1 in self._terms.items():
            for (t2, h2), c2 in rhs._terms.items():
                key = (t1 + t2, h1 + h2)
                total = out.get(key, Fraction(0)) + c1 * c2
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        result = Scalar.__new__(Scalar)
        result._terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Scalar.one()
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute(self, theta: RationalLike | None = None,
                   hbar: RationalLike | None = None) -> "Scalar":
        """Partially evaluate formal parameters at exact rational values."""
        t_val = None if theta is None else _as_fraction(theta)
        h_val = None if hbar is None else _as_fraction(hbar)
        out = Scalar.zero()
        for (tp, hp), coeff in self._terms.items():
            factor = coeff
            if t_val is not None:
                factor *= t_val ** tp
                tp = 0
            if h_val is not None:
                factor *= h_val ** hp
                hp = 0
            out = out + Scalar({(tp, hp): factor})
        return out

    def evaluate(self, theta, hbar) -> Fraction:
        t_val = Fraction(theta)
        h_val = Fraction(hbar)
        total = Fraction(0)
        for (tp, hp), coeff in self._terms.items():
            total += coeff * t_val ** tp * h_val ** hp
        return total

    def __eq__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "Scalar(0)"
        bits = []
        for (tp, hp), coeff in sorted(self._terms.items()):
            piece = str(coeff)
            if tp:
                piece += f"*theta^{tp}" if tp > 1 else "*theta"
            if hp:
                piece += f"*hbar^{hp}" if hp > 1 else "*hbar"
            bits.append(piece)
        return "Scalar(" + " + ".join(bits) + ")"


ScalarLike = Union[Scalar, int, Fraction]


def _as_scalar(value: ScalarLike) -> Scalar:
    if isinstance(value, Scalar):
        return value
    return Scalar.from_rational(_as_fraction(value))


class Observable:
    """Polynomial in (q1, q2, p1, p2) with Scalar coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[MonomialKey, ScalarLike] | None = None):
        canonical: dict[MonomialKey, Scalar] = {}
        if terms:
            for key, coeff in terms.items():
                scalar = _as_scalar(coeff)
                if scalar:
                    canonical[key] = scalar
        self._terms = canonical

    @classmethod
    def zero(cls) -> "Observable":
        return cls()

    @classmethod
    def constant(cls, value: ScalarLike) -> "Observable":
        return cls({_ZERO_MONO: _as_scalar(value)})

    @classmethod
    def coordinate(cls, axis: int) -> "Observable":
        if axis not in (0, 1, 2, 3):
            raise ValueError("axis must be 0..3 (q1, q2, p1, p2)")
        key = [0, 0, 0, 0]
        key[axis] = 1
        return cls({tuple(key): Scalar.one()})

    @classmethod
    def term(cls, coeff: ScalarLike, exponents: MonomialKey) -> "Observable":
        return cls({tuple(exponents): _as_scalar(coeff)})

    def terms(self) -> Iterator[tuple[MonomialKey, Scalar]]:
        return iter(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exponents: MonomialKey) -> Scalar:
        return self._terms.get(tuple(exponents), Scalar.zero())

    def constant_part(self) -> Scalar:
        return self.coefficient(_ZERO_MONO)

    @property
    def is_constant(self) -> bool:
        return all(key == _ZERO_MONO for key in self._terms)

    def coordinate_degree(self) -> int:
        """Total degree in the coordinates, ignoring theta and hbar."""
        if not self._terms:
            return 0
        return max(sum(key) for key in self._terms)

    def _coerce(self, other) -> "Observable | None":
        if isinstance(other, Observable):
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return Observable.constant(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for key, coeff in rhs._terms.items():
            total = out.get(key, Scalar.zero()) + coeff
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        result = Observable.__new__(Observable)
        result._terms = out
        return result

    __radd__ = __add__

    def __neg__(self) -> "Observable":
        result = Observable.__new__(Observable)
        result._terms = {key: -coeff for key, coeff in self._terms.items()}
        return result

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out: dict[MonomialKey, Scalar] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in rhs._terms.items():
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])
                total = out.get(key, Scalar.zero()) + c1 * c2
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        result = Observable.__new__(Observable)
        result._terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Observable":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Observable.constant(1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, axis: int) -> "Observable":
        """Exact partial derivative along one coordinate axis."""
        if axis not in (0, 1, 2, 3):
            raise ValueError("axis must be 0..3 (q1, q2, p1, p2)")
        out: dict[MonomialKey, Scalar] = {}
        for key, coeff in self._terms.items():
            e = key[axis]
            if e == 0:
                continue
            new_key = list(key)
            new_key[axis] = e - 1
            out[tuple(new_key)] = coeff * e
        result = Observable.__new__(Observable)
        result._terms = out
        return result

    def substitute(self, images: Mapping[int, "Observable"]) -> "Observable":
        """Ring homomorphism replacing coordinates by the given observables.

        Axes absent from ``images`` are left alone.
        """
        basis = [images.get(axis, Observable.coordinate(axis)) for axis in range(4)]
        total = Observable.zero()
        for key, coeff in self._terms.items():
            piece = Observable.constant(coeff)
            for axis, e in enumerate(key):
                if e:
                    piece = piece * basis[axis] ** e
            total = total + piece
        return total

    def substitute_params(self, theta: RationalLike | None = None,
                          hbar: RationalLike | None = None) -> "Observable":
        out: dict[MonomialKey, Scalar] = {}
        for key, coeff in self._terms.items():
            reduced = coeff.substitute(theta=theta, hbar=hbar)
            if reduced:
                existing = out.get(key)
                out[key] = reduced if existing is None else existing + reduced
        result = Observable.__new__(Observable)
        result._terms = {k: v for k, v in out.items() if v}
        return result

    def evaluate_exact(self, point: Iterable, theta, hbar) -> Fraction:
        """Evaluate at a phase-space point with exact rational arithmetic.

        Floats are converted to their exact binary values first, so the
        result is deterministic and the only rounding happens in the caller.
        """
        x = [Fraction(component) for component in point]
        if len(x) != 4:
            raise ValueError("phase-space point must have four components")
        total = Fraction(0)
        for key, coeff in self._terms.items():
            value = coeff.evaluate(theta, hbar)
            for axis, e in enumerate(key):
                if e:
                    value *= x[axis] ** e
            total += value
        return total

    def evaluate(self, point: Iterable, theta=0, hbar=1) -> float:
        return float(self.evaluate_exact(point, theta, hbar))

    def __eq__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "Observable(0)"
        bits = []
        for key in sorted(self._terms):
            mono = "*".join(
                f"{COORD_NAMES[axis]}^{e}" if e > 1 else COORD_NAMES[axis]
                for axis, e in enumerate(key) if e
            )
            bits.append(f"{self._terms[key]!r}*{mono}" if mono else repr(self._terms[key]))
        return "Observable(" + " + ".join(bits) + ")"


# Convenient building blocks; these are fresh-from-constructor and immutable.
Q1 = Observable.coordinate(0)
Q2 = Observable.coordinate(1)
P1 = Observable.coordinate(2)
P2 = Observable.coordinate(3)
THETA = Observable.constant(Scalar.theta())
HBAR = Observable.constant(Scalar.hbar())
ONE = Observable.constant(1)
HALF = Fraction(1, 2)
