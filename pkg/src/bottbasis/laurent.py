"""Exact sparse Laurent polynomials over the rationals.

Every polynomial lives in a fixed variable table: ``N`` parameter variables
``t_1..t_N`` whose exponents may be negative, followed by named entry
variables whose exponents are non-negative.

Monomials are packed into a single Python integer, one 16-bit field per
variable, each field holding ``exponent + 2**15``.  The first variable sits in
the most significant field, so integer comparison of packed keys is exactly
lexicographic comparison of exponent vectors (parameters first, then
entries).  Multiplying monomials is one integer addition.

Coefficients are ``int`` when integral and ``Fraction`` otherwise; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Dict, Hashable, Iterable, Iterator, Mapping, Sequence, Tuple

from .errors import UndefinedLVectorError, UsageError

FIELD_BITS = 16
BIAS = 1 << (FIELD_BITS - 1)
MASK = (1 << FIELD_BITS) - 1

Exponent = Tuple[int, ...]


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


@dataclass(frozen=True)
class VarTable:
    """Fixed variable order: ``parameter_count`` t-variables, then entry variables.

    ``entry_vars`` holds hashable names, e.g. ``(block, row, col)`` triples.
    """

    parameter_count: int
    entry_vars: Tuple[Hashable, ...]
    _index: Dict[Hashable, int] = field(init=False, repr=False, compare=False, hash=False)
    _bias: int = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "entry_vars", tuple(self.entry_vars))
        if self.parameter_count < 0:
            raise UsageError("parameter_count must be non-negative")
        index = {}
        for pos, name in enumerate(self.entry_vars):
            if name in index:
                raise UsageError(f"duplicate entry variable {name!r}")
            index[name] = pos
        object.__setattr__(self, "_index", index)
        bias = 0
        for _ in range(self.nfields):
            bias = (bias << FIELD_BITS) | BIAS
        object.__setattr__(self, "_bias", bias)

    @property
    def nfields(self) -> int:
        return self.parameter_count + len(self.entry_vars)

    @property
    def entry_count(self) -> int:
        return len(self.entry_vars)

    def entry_index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown entry variable {name!r}") from None

    def shift(self, fld: int) -> int:
        """Bit offset of field ``fld`` (0-based over parameters then entries)."""
        return FIELD_BITS * (self.nfields - 1 - fld)

    @property
    def bias_key(self) -> int:
        """Packed key of the constant monomial."""
        return self._bias

    @property
    def entry_bits(self) -> int:
        return FIELD_BITS * self.entry_count

    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nfields:
            raise UsageError(f"exponent vector has length {len(exps)}, expected {self.nfields}")
        key = 0
        for pos, e in enumerate(exps):
            if pos >= self.parameter_count and e < 0:
                raise UsageError("entry variables take non-negative exponents")
            if not -BIAS < e < BIAS:
                raise OverflowError(f"exponent {e} exceeds the packed field range")
            key = (key << FIELD_BITS) | (e + BIAS)
        return key

    def decode(self, key: int) -> Exponent:
        out = [0] * self.nfields
        for pos in range(self.nfields - 1, -1, -1):
            out[pos] = (key & MASK) - BIAS
            key >>= FIELD_BITS
        return tuple(out)

    def param_part(self, key: int) -> Exponent:
        """Parameter exponents of a packed monomial."""
        key >>= self.entry_bits
        out = [0] * self.parameter_count
        for pos in range(self.parameter_count - 1, -1, -1):
            out[pos] = (key & MASK) - BIAS
            key >>= FIELD_BITS
        return tuple(out)

    def field_value(self, key: int, fld: int) -> int:
        return ((key >> self.shift(fld)) & MASK) - BIAS


def _same_table(a: VarTable, b: VarTable):
    if a is not b and a != b:
        raise UsageError("polynomials belong to different variable tables")


class LaurentPoly:
    """Immutable sparse Laurent polynomial; see the module docstring for layout."""

    __slots__ = ("vartable", "_terms", "_bound", "_hash")

    def __init__(self, vartable: VarTable, terms: Mapping[int, object] = None, _bound=None):
        # ``terms`` maps packed keys to nonzero normalized coefficients.
        self.vartable = vartable
        self._terms = dict(terms) if terms else {}
        if _bound is None:
            _bound = max((max(map(abs, vartable.decode(k))) for k in self._terms), default=0)
        self._bound = _bound
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, vt: VarTable) -> "LaurentPoly":
        return cls(vt)

    @classmethod
    def const(cls, vt: VarTable, c) -> "LaurentPoly":
        c = _norm(c)
        return cls(vt, {vt.bias_key: c} if c else None, 0)

    @classmethod
    def entry(cls, vt: VarTable, name, power: int = 1) -> "LaurentPoly":
        pos = vt.parameter_count + vt.entry_index(name)
        if power < 0:
            raise UsageError("entry variables take non-negative exponents")
        return cls(vt, {vt.bias_key + (power << vt.shift(pos)): 1}, power)

    @classmethod
    def param(cls, vt: VarTable, j: int, power: int = 1) -> "LaurentPoly":
        """The monomial ``t_j**power`` (``j`` is 0-based)."""
        if not 0 <= j < vt.parameter_count:
            raise UsageError(f"parameter index {j} out of range")
        return cls(vt, {vt.bias_key + (power << vt.shift(j)): 1}, abs(power))

    @classmethod
    def from_terms(cls, vt: VarTable, terms: Mapping[Sequence[int], object]) -> "LaurentPoly":
        acc: Dict[int, object] = {}
        for exps, c in terms.items():
            key = vt.encode(tuple(exps))
            acc[key] = acc.get(key, 0) + _norm(c)
        return cls(vt, {k: _norm(c) for k, c in acc.items() if c})

    @classmethod
    def monomial(cls, vt: VarTable, params: Sequence[int] = (), entries: Mapping = None, c=1):
        params = tuple(params) or (0,) * vt.parameter_count
        ent = [0] * vt.entry_count
        for name, e in (entries or {}).items():
            ent[vt.entry_index(name)] = e
        return cls.from_terms(vt, {params + tuple(ent): c})

    # -- inspection ---------------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterator[Tuple[int, object]]:
        """Packed ``(key, coefficient)`` pairs in arbitrary order."""
        return iter(self._terms.items())

    def terms(self) -> list:
        """``(exponent tuple, coefficient)`` pairs in canonical (lexicographic) order."""
        dec = self.vartable.decode
        return [(dec(k), self._terms[k]) for k in sorted(self._terms)]

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(self.vartable.encode(tuple(exps)), 0)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return (self.vartable is other.vartable or self.vartable == other.vartable) and \
                self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {self.vartable.bias_key: _norm(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            _same_table(self.vartable, other.vartable)
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return LaurentPoly.const(self.vartable, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other, self
        else:
            big, small = self, other
        out = dict(big._terms)
        for k, c in small._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return LaurentPoly(self.vartable, out, max(self._bound, other._bound))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vartable, {k: -c for k, c in self._terms.items()}, self._bound)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "LaurentPoly":
        c = _norm(c)
        if not c:
            return LaurentPoly(self.vartable)
        return LaurentPoly(self.vartable, {k: _norm(v * c) for k, v in self._terms.items()},
                           self._bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        bound = self._bound + other._bound
        if bound >= BIAS:
            raise OverflowError("product exponents may exceed the packed field range")
        if not self._terms or not other._terms:
            return LaurentPoly(self.vartable)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        bias = self.vartable.bias_key
        out: Dict[int, object] = {}
        get = out.get
        for kb, cb in b.items():
            off = kb - bias
            for ka, ca in a.items():
                k = ka + off
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly(self.vartable, {k: _norm(c) for k, c in out.items() if c}, bound)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise UsageError("negative powers of polynomials are not supported")
        result = LaurentPoly.const(self.vartable, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- parameter structure ------------------------------------------------

    def min_exponent(self, j: int) -> int:
        if not self._terms:
            raise UndefinedLVectorError("the zero polynomial has no minimal exponent")
        vt = self.vartable
        if not 0 <= j < vt.parameter_count:
            raise UsageError(f"parameter index {j} out of range")
        sh = vt.shift(j)
        return min((k >> sh) & MASK for k in self._terms) - BIAS

    def parameter_support(self) -> frozenset:
        pp = self.vartable.param_part
        eb = self.vartable.entry_bits
        return frozenset(pp(hi << eb) for hi in {k >> eb for k in self._terms})

    def graded_piece(self, ell: Sequence[int]) -> "LaurentPoly":
        """Terms whose parameter exponent vector equals ``ell``, with ``t`` stripped."""
        vt = self.vartable
        if len(ell) != vt.parameter_count:
            raise UsageError("parameter vector has the wrong length")
        eb = vt.entry_bits
        target = vt.encode(tuple(ell) + (0,) * vt.entry_count) >> eb
        base = (vt.bias_key >> eb) << eb
        low = (1 << eb) - 1
        out = {base | (k & low): c for k, c in self._terms.items() if k >> eb == target}
        return LaurentPoly(vt, out, self._bound)

    def graded_pieces(self) -> Dict[Exponent, "LaurentPoly"]:
        """All graded pieces keyed by parameter exponent vector."""
        vt = self.vartable
        eb = vt.entry_bits
        base = (vt.bias_key >> eb) << eb
        low = (1 << eb) - 1
        buckets: Dict[int, dict] = {}
        for k, c in self._terms.items():
            buckets.setdefault(k >> eb, {})[base | (k & low)] = c
        return {vt.param_part(hi << eb): LaurentPoly(vt, d, self._bound)
                for hi, d in buckets.items()}

    def at_parameters_one(self) -> "LaurentPoly":
        """Set every parameter variable to 1."""
        vt = self.vartable
        eb = vt.entry_bits
        base = (vt.bias_key >> eb) << eb
        low = (1 << eb) - 1
        out: Dict[int, object] = {}
        for k, c in self._terms.items():
            kk = base | (k & low)
            out[kk] = out.get(kk, 0) + c
        return LaurentPoly(vt, {k: _norm(c) for k, c in out.items() if c}, self._bound)

    def times_parameter_monomial(self, ell: Sequence[int]) -> "LaurentPoly":
        """Multiply by ``t**ell``."""
        vt = self.vartable
        off = 0
        for j, e in enumerate(ell):
            off += e << vt.shift(j)
        bound = self._bound + max(map(abs, ell), default=0)
        if bound >= BIAS:
            raise OverflowError("twist exceeds the packed field range")
        return LaurentPoly(vt, {k + off: c for k, c in self._terms.items()}, bound)

    def scale_variables(self, rules: Mapping[int, Tuple[int, int]]) -> "LaurentPoly":
        """Substitute ``v -> t_j**k * v`` for every ``v: (j, k)`` in ``rules``.

        ``v`` is an entry-variable position, ``j`` a 0-based parameter index.
        """
        vt = self.vartable
        plan = []
        for v, (j, k) in rules.items():
            if not 0 <= j < vt.parameter_count:
                raise UsageError(f"parameter index {j} out of range")
            if k:
                plan.append((vt.shift(vt.parameter_count + v), k << vt.shift(j)))
        if not plan:
            return self
        bound = self._bound * (1 + sum(abs(k) for k in (r[1] for r in rules.values())))
        if bound >= BIAS:
            raise OverflowError("substituted exponents may exceed the packed field range")
        out: Dict[int, object] = {}
        for key, c in self._terms.items():
            new = key
            for sh, unit in plan:
                e = ((key >> sh) & MASK) - BIAS
                if e:
                    new += e * unit
            out[new] = c
        # entry parts are untouched, so distinct monomials stay distinct
        return LaurentPoly(vt, out, bound)

    def degree_in(self, positions: Iterable[int]) -> set:
        """Set of total degrees in the given entry positions, one per term."""
        vt = self.vartable
        shifts = [vt.shift(vt.parameter_count + v) for v in positions]
        return {sum(((k >> sh) & MASK) - BIAS for sh in shifts) for k in self._terms}

    # -- display ------------------------------------------------------------

    def _monomial_str(self, exps: Exponent) -> str:
        vt = self.vartable
        parts = []
        for j in range(vt.parameter_count):
            e = exps[j]
            if e:
                parts.append(f"t{j + 1}" + (f"^{e}" if e != 1 else ""))
        for pos, name in enumerate(vt.entry_vars):
            e = exps[vt.parameter_count + pos]
            if e:
                label = name if isinstance(name, str) else "x" + "_".join(map(str, name))
                parts.append(label + (f"^{e}" if e != 1 else ""))
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for exps, c in reversed(self.terms()):
            mono = self._monomial_str(exps)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"LaurentPoly({self})"


# -- functional forms ---------------------------------------------------------

def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _same_table(a.vartable, b.vartable)
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _same_table(a.vartable, b.vartable)
    return a * b


def scale_variable(p: LaurentPoly, v, k: int, j: int) -> LaurentPoly:
    """Substitute entry variable ``v -> t_j**k * v`` (``j`` 0-based)."""
    pos = p.vartable.entry_index(v)
    return p.scale_variables({pos: (j, k)})


def min_exponent(p: LaurentPoly, j: int) -> int:
    return p.min_exponent(j)


def graded_piece(p: LaurentPoly, ell: Sequence[int]) -> LaurentPoly:
    return p.graded_piece(ell)


def parameter_support(p: LaurentPoly) -> frozenset:
    return p.parameter_support()


def divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient ``a / b`` when ``b`` divides ``a`` exactly.

    Lexicographic leading-term division; raises ``UsageError`` when a
    quotient term would need a negative entry exponent or a remainder is left.
    """
    _same_table(a.vartable, b.vartable)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    vt = a.vartable
    bias = vt.bias_key
    lead_b = max(b._terms)
    cb = b._terms[lead_b]
    rem = dict(a._terms)
    quot: Dict[int, object] = {}
    budget = 4 * (len(a._terms) + 1) * (len(b._terms) + 1) + 64
    while rem:
        budget -= 1
        if budget < 0:
            raise UsageError("division is not exact")
        lead = max(rem)
        qk = lead - lead_b + bias
        if any(f < 0 for f in vt.decode(qk)[vt.parameter_count:]):
            raise UsageError("division is not exact")
        qc = _norm(Fraction(rem[lead]) / cb)
        quot[qk] = qc
        off = qk - bias
        for kb, c in b._terms.items():
            k = kb + off
            v = rem.get(k, 0) - qc * c
            if v:
                rem[k] = _norm(v)
            else:
                rem.pop(k, None)
    return LaurentPoly(vt, quot)


def _det_cofactor(m):
    size = len(m)
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for c in range(size):
        if m[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        term = m[0][c] * _det_cofactor(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else LaurentPoly(m[0][0].vartable)


def _det_bareiss(m):
    size = len(m)
    a = [list(row) for row in m]
    vt = a[0][0].vartable
    sign = 1
    prev = LaurentPoly.const(vt, 1)
    for k in range(size - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, size) if not a[r][k].is_zero()), None)
            if swap is None:
                return LaurentPoly(vt)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev) if k else num
        prev = a[k][k]
    det = a[size - 1][size - 1]
    return det if sign > 0 else -det


def poly_det(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant: cofactor expansion up to 3x3, fraction-free Bareiss above."""
    rows = [list(r) for r in m]
    size = len(rows)
    if size == 0 or any(len(r) != size for r in rows):
        raise UsageError("determinant needs a non-empty square matrix")
    vt = rows[0][0].vartable
    for r in rows:
        for x in r:
            _same_table(vt, x.vartable)
    if size <= 3:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def matmul(a, b):
    """Product of two matrices of ``LaurentPoly``; zero entries are skipped."""
    inner = len(b)
    if any(len(r) != inner for r in a):
        raise UsageError("incompatible matrix sizes")
    cols = len(b[0])
    vt = a[0][0].vartable
    out = []
    for row in a:
        new = []
        for c in range(cols):
            acc = LaurentPoly(vt)
            for k in range(inner):
                x, y = row[k], b[k][c]
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out
