"""
Exact ground fields: the rationals and the prime fields F_p.

Raw values used inside matrices are plain Python objects (``int`` or
``Fraction`` over Q, ``int`` residues over F_p) so numpy object arrays can
carry them. ``Scalar`` is the tagged, field-checked element used at the
public boundary.
"""
from __future__ import annotations
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Tuple, Union

import numpy as np
from sympy import isprime

from errors import DivisionByZero, FieldMismatch, InputError

log = logging.getLogger(__name__)

RE_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class FieldSpec:
    kind: str                 # "Q" or "Fp"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise InputError("the rationals take no modulus")
        elif self.kind == "Fp":
            if not isinstance(self.p, int) or not isprime(self.p):
                raise InputError(f"modulus {self.p!r} is not prime")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", int(p))

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def name(self) -> str:
        return "Q" if self.kind == "Q" else f"F{self.p}"

    def __str__(self) -> str:
        return self.name

    # ---------------- raw values ----------------

    def coerce(self, x: Any) -> Union[int, Fraction]:
        """Canonical raw value of ``x`` in this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (bool, np.bool_)):
            x = int(x)
        if isinstance(x, np.integer):
            x = int(x)
        if self.kind == "Q":
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            raise InputError(f"cannot read {x!r} as a rational")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p
        raise InputError(f"cannot read {x!r} as an element of {self}")

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a, b):
        return self.coerce(self.coerce(a) + self.coerce(b))

    def sub(self, a, b):
        return self.coerce(self.coerce(a) - self.coerce(b))

    def mul(self, a, b):
        return self.coerce(self.coerce(a) * self.coerce(b))

    def neg(self, a):
        return self.coerce(-self.coerce(a))

    def inv(self, a):
        a = self.coerce(a)
        if a == 0:
            raise DivisionByZero(f"zero has no inverse in {self}")
        if self.kind == "Q":
            return self.coerce(Fraction(1) / a)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b) -> bool:
        return self.coerce(a) == self.coerce(b)

    def element(self, x: Any) -> "Scalar":
        return Scalar(self, self.coerce(x))

    # ---------------- text codec ----------------

    def parse(self, text: str):
        m = RE_RATIONAL.match(str(text))
        if not m:
            raise InputError(f"bad scalar {text!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise DivisionByZero(f"bad scalar {text!r}")
        return self.coerce(Fraction(num, den))

    def format(self, x: Any) -> str:
        x = self.coerce(x)
        if self.kind == "Q" and isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}"
        return str(x)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "FieldSpec":
        try:
            kind = obj["kind"]
        except (KeyError, TypeError):
            raise InputError(f"bad field spec {obj!r}")
        if kind == "Q":
            return cls.rationals()
        if kind == "Fp":
            p = obj.get("p")
            if not isinstance(p, int) or isinstance(p, bool):
                raise InputError(f"F_p needs an integer modulus, got {p!r}")
            return cls.prime(p)
        raise InputError(f"unknown field kind {kind!r}")

    # ---------------- arrays ----------------

    def reduce(self, arr) -> np.ndarray:
        """Canonicalise every entry of an object array (returns a new array)."""
        arr = np.asarray(arr, dtype=object)
        if arr.size == 0:
            return arr.copy()
        return np.asarray(_vectorised(self)(arr), dtype=object).reshape(arr.shape)

    def array(self, data: Iterable) -> np.ndarray:
        return self.reduce(np.array(data, dtype=object))

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=object)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        idx = np.arange(n)
        out[idx, idx] = 1
        return out

    def format_array(self, arr) -> list:
        return np.vectorize(self.format, otypes=[object])(np.asarray(arr, dtype=object)).tolist()


QQ = FieldSpec.rationals()

_VECTORISED: Dict[FieldSpec, Any] = {}

def _vectorised(field: FieldSpec):
    fn = _VECTORISED.get(field)
    if fn is None:
        fn = np.frompyfunc(field.coerce, 1, 1)
        _VECTORISED[field] = fn
    return fn

def characteristic(field: FieldSpec) -> int:
    return field.characteristic

def parse_field(text: str) -> FieldSpec:
    """Read "Q", "F7", "Fp:7" or "GF7"."""
    t = text.strip()
    if t.upper() in ("Q", "QQ"):
        return QQ
    m = re.match(r"^(?:GF|F|Fp:?)(\d+)$", t, re.I)
    if not m:
        raise InputError(f"unknown field {text!r}")
    return FieldSpec.prime(int(m.group(1)))


@dataclass(frozen=True)
class Scalar:
    field: FieldSpec
    value: Any

    def _other(self, other) -> Any:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} and {other.field} elements mixed")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def numerator(self) -> int:
        return Fraction(self.value).numerator if self.field.kind == "Q" else self.value

    @property
    def denominator(self) -> int:
        return Fraction(self.value).denominator if self.field.kind == "Q" else 1

    def __str__(self) -> str:
        return self.field.format(self.value)
