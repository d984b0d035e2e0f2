"""Exact coefficient arithmetic for shear-coordinate expressions.

Two rings live here.  ``LaurentElem`` is the commutative ring of Laurent
polynomials in the exponentials ``e^{Z_a/2}`` of the edge coordinates; it is
where classical geodesic functions live.  ``TorusElem`` is its q-deformation:
elements are kept in Weyl normal form, i.e. as integer-q-Laurent combinations
of Weyl-ordered monomials ``:e^{v.Z}:``, with the monomial product rule

    :e^{u.Z}: * :e^{v.Z}:  =  q^{omega(u, v)} :e^{(u+v).Z}:

where ``omega(u, v) = sum_{a,b} u_a v_b {Z_a, Z_b}`` is the bilinear form of
the edge pairing.  The overall sign of the exponent (an orientation
convention) is frozen once and for all by requiring the triangle-algebra
product identity ``G23 * G12 = q^{-1} G1232 + q G13`` to come out exactly;
see tests/test_ring.py.

Exponents of both the edge variables and q live on the half-integer lattice,
stored as plain integers counting halves (``HalfInt``).  Internally q-powers
are tracked in quarter units so that the bilinear form never needs rational
arithmetic; genuinely quarter-integral powers cannot arise from geodesic
words but are representable for safety.

No floating point enters any operation in this module except ``evaluate``.
All values are immutable after construction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping


class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, twice: int):
        self.twice = twice

    @staticmethod
    def of(value) -> "HalfInt":
        """Coerce an int, Fraction with denominator <= 2, or HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        frac = Fraction(value)
        if frac.denominator not in (1, 2):
            raise ValueError(f"{value!r} is not a half-integer")
        return HalfInt(int(frac * 2))

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __eq__(self, other) -> bool:
        return isinstance(other, HalfInt) and self.twice == other.twice

    def __hash__(self) -> int:
        return hash(("HalfInt", self.twice))

    def __bool__(self) -> bool:
        return self.twice != 0

    def __repr__(self) -> str:
        return f"HalfInt({_frac_str(Fraction(self.twice, 2))})"


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class Vars:
    """An ordered universe of edge names shared by ring elements.

    Exponent vectors are tuples of integers (in half units) indexed against
    this list, so elements over the same ``Vars`` combine with plain tuple
    arithmetic.
    """

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vars) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Vars({', '.join(self.names)})"

    def exponent(self, entries: Mapping[str, object]) -> tuple:
        """Build an exponent tuple from {edge: half-integer} data."""
        vec = [0] * len(self.names)
        for name, value in entries.items():
            vec[self.index[name]] = HalfInt.of(value).twice
        return tuple(vec)

    def exponent_twice(self, entries: Mapping[str, int]) -> tuple:
        """Build an exponent tuple from {edge: twice-exponent} integers."""
        vec = [0] * len(self.names)
        for name, twice in entries.items():
            vec[self.index[name]] = int(twice)
        return tuple(vec)

    def zero(self) -> "LaurentElem":
        return LaurentElem(self, {})

    def one(self) -> "LaurentElem":
        return LaurentElem(self, {(0,) * len(self.names): 1})

    def const(self, c: int) -> "LaurentElem":
        return LaurentElem(self, {(0,) * len(self.names): c} if c else {})

    def monomial(self, entries: Mapping[str, object], coeff: int = 1) -> "LaurentElem":
        return LaurentElem(self, {self.exponent(entries): coeff} if coeff else {})

    def monomial_twice(self, entries: Mapping[str, int], coeff: int = 1) -> "LaurentElem":
        return LaurentElem(self, {self.exponent_twice(entries): coeff} if coeff else {})


class MismatchedContext(ValueError):
    """Raised when combining elements over different variable universes."""


def _exp_term_str(names, vec) -> str:
    parts = []
    for name, twice in zip(names, vec):
        if twice == 0:
            continue
        c = _frac_str(Fraction(twice, 2))
        if c == "1":
            parts.append(name)
        elif c == "-1":
            parts.append(f"-{name}")
        else:
            parts.append(f"{c}*{name}")
    if not parts:
        return ""
    body = parts[0]
    for p in parts[1:]:
        body += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return f"e^({body})"


class LaurentElem:
    """Sparse Laurent polynomial in e^{Z_a/2} with integer coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Vars, terms: dict):
        self.vars = vars
        self.terms = {v: c for v, c in terms.items() if c != 0}

    # -- ring structure -------------------------------------------------

    def _check(self, other: "LaurentElem"):
        if self.vars != other.vars:
            raise MismatchedContext("elements over different variable universes")

    def __add__(self, other: "LaurentElem") -> "LaurentElem":
        self._check(other)
        out = dict(self.terms)
        for v, c in other.terms.items():
            s = out.get(v, 0) + c
            if s:
                out[v] = s
            else:
                out.pop(v, None)
        return LaurentElem(self.vars, out)

    def __sub__(self, other: "LaurentElem") -> "LaurentElem":
        return self + (-other)

    def __neg__(self) -> "LaurentElem":
        return LaurentElem(self.vars, {v: -c for v, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentElem(self.vars, {v: c * other for v, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = tuple(x + y for x, y in zip(u, v))
                s = out.get(w, 0) + a * b
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return LaurentElem(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentElem":
        if n < 0:
            raise ValueError("negative powers only defined for monomials")
        result = self.vars.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentElem)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self):
        return self.terms.values()

    def exponents(self):
        """Iterate (edge name, HalfInt) sparse views of each term."""
        for vec, coeff in sorted(self.terms.items()):
            entries = {
                name: HalfInt(t)
                for name, t in zip(self.vars.names, vec)
                if t
            }
            yield entries, coeff

    def support(self) -> set:
        """Edge names with a nonzero exponent in some term."""
        out = set()
        for vec in self.terms:
            for name, t in zip(self.vars.names, vec):
                if t:
                    out.add(name)
        return out

    def has_positive_integer_coefficients(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    # -- evaluation -------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, float]) -> float:
        """Evaluate at real edge values; a ring homomorphism.

        Every edge actually appearing in a term must be assigned; e^{Z/2}
        uses the principal real exponential.
        """
        missing = self.support() - set(assignment)
        if missing:
            raise AssignmentError(sorted(missing))
        vals = [assignment.get(name, 0.0) for name in self.vars.names]
        total = 0.0
        for vec, coeff in self.terms.items():
            total += coeff * math.exp(
                sum(t * x for t, x in zip(vec, vals)) / 2.0
            )
        return total

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for vec in sorted(self.terms):
            c = self.terms[vec]
            mono = _exp_term_str(self.vars.names, vec)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}")
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


class AssignmentError(KeyError):
    """An evaluation point omits edges present in the element."""

    def __init__(self, missing):
        super().__init__(f"missing values for edges: {', '.join(missing)}")
        self.missing = missing


class QCoeff:
    """Integer Laurent polynomial in q, powers on a quarter-integer lattice.

    Keys of ``powers`` count quarters of the q-exponent (so ``q**2`` is
    ``{8: 1}``).  Conjugation q -> 1/q is the Hermitian involution on
    coefficients of Weyl monomials.
    """

    __slots__ = ("powers",)

    def __init__(self, powers: dict):
        self.powers = {p: c for p, c in powers.items() if c != 0}

    @staticmethod
    def of(value) -> "QCoeff":
        if isinstance(value, QCoeff):
            return value
        if isinstance(value, int):
            return QCoeff({0: value})
        raise TypeError(f"cannot coerce {value!r} to QCoeff")

    @staticmethod
    def q_power(power, coeff: int = 1) -> "QCoeff":
        """q**power with power a half-integer (int, Fraction or HalfInt)."""
        quarters = int(HalfInt.of(power).twice * 2)
        return QCoeff({quarters: coeff})

    def __add__(self, other) -> "QCoeff":
        other = QCoeff.of(other)
        out = dict(self.powers)
        for p, c in other.powers.items():
            s = out.get(p, 0) + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return QCoeff(out)

    __radd__ = __add__

    def __sub__(self, other) -> "QCoeff":
        return self + (-QCoeff.of(other))

    def __neg__(self) -> "QCoeff":
        return QCoeff({p: -c for p, c in self.powers.items()})

    def __mul__(self, other) -> "QCoeff":
        other = QCoeff.of(other)
        out: dict = {}
        for p, a in self.powers.items():
            for r, b in other.powers.items():
                s = out.get(p + r, 0) + a * b
                if s:
                    out[p + r] = s
                else:
                    out.pop(p + r, None)
        return QCoeff(out)

    __rmul__ = __mul__

    def shift(self, quarters: int) -> "QCoeff":
        return QCoeff({p + quarters: c for p, c in self.powers.items()})

    def conjugate(self) -> "QCoeff":
        """The image under q -> 1/q."""
        return QCoeff({-p: c for p, c in self.powers.items()})

    def at_q_one(self) -> int:
        return sum(self.powers.values())

    def is_zero(self) -> bool:
        return not self.powers

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QCoeff.of(other)
        return isinstance(other, QCoeff) and self.powers == other.powers

    def __hash__(self) -> int:
        return hash(frozenset(self.powers.items()))

    def __str__(self) -> str:
        if not self.powers:
            return "0"
        pieces = []
        for p in sorted(self.powers):
            c = self.powers[p]
            if p == 0:
                pieces.append(str(c))
                continue
            frac = _frac_str(Fraction(p, 4))
            mono = "q" if frac == "1" else ("q^-1" if frac == "-1" else f"q^{frac}")
            if c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}")
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    __repr__ = __str__


#: q^2 - q^-2, the structure constant of the quantum commutation relations.
XI = QCoeff({8: 1, -8: -1})


class TorusContext:
    """Variable universe plus the antisymmetric edge pairing defining omega."""

    __slots__ = ("vars", "pairing")

    def __init__(self, vars: Vars, pairing):
        self.vars = vars
        n = len(vars)
        rows = tuple(tuple(int(x) for x in row) for row in pairing)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("pairing must be a square matrix over the variables")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError("pairing must be antisymmetric")
        self.pairing = rows

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusContext)
            and self.vars == other.vars
            and self.pairing == other.pairing
        )

    def __hash__(self) -> int:
        return hash((self.vars, self.pairing))

    def omega_quarters(self, u: tuple, v: tuple) -> int:
        """omega(u, v) in quarter units, for twice-exponent tuples u, v."""
        total = 0
        for a, ua in enumerate(u):
            if not ua:
                continue
            row = self.pairing[a]
            for b, vb in enumerate(v):
                if vb:
                    total += ua * vb * row[b]
        return total

    # -- element constructors ------------------------------------------

    def zero(self) -> "TorusElem":
        return TorusElem(self, {})

    def one(self) -> "TorusElem":
        return self.scalar(1)

    def scalar(self, c) -> "TorusElem":
        c = QCoeff.of(c)
        key = (0,) * len(self.vars)
        return TorusElem(self, {key: c} if not c.is_zero() else {})

    def weyl(self, entries: Mapping[str, object], coeff=1) -> "TorusElem":
        """The Weyl monomial :e^{v.Z}: times an integer or QCoeff."""
        c = QCoeff.of(coeff)
        vec = self.vars.exponent(entries)
        return TorusElem(self, {vec: c} if not c.is_zero() else {})

    def from_classical(self, elem: LaurentElem) -> "TorusElem":
        """Weyl-quantize term by term with no q corrections."""
        if elem.vars != self.vars:
            raise MismatchedContext("element over a different variable universe")
        return TorusElem(self, {v: QCoeff.of(c) for v, c in elem.terms.items()})


class TorusElem:
    """Quantum torus element in Weyl normal form over a TorusContext."""

    __slots__ = ("context", "terms")

    def __init__(self, context: TorusContext, terms: dict):
        self.context = context
        self.terms = {v: QCoeff.of(c) for v, c in terms.items() if not QCoeff.of(c).is_zero()}

    def _check(self, other: "TorusElem"):
        if self.context != other.context:
            raise MismatchedContext("torus elements over different contexts")

    def __add__(self, other: "TorusElem") -> "TorusElem":
        self._check(other)
        out = dict(self.terms)
        for v, c in other.terms.items():
            s = out.get(v, QCoeff({})) + c
            if s.is_zero():
                out.pop(v, None)
            else:
                out[v] = s
        return TorusElem(self.context, out)

    def __sub__(self, other: "TorusElem") -> "TorusElem":
        return self + (-other)

    def __neg__(self) -> "TorusElem":
        return TorusElem(self.context, {v: -c for v, c in self.terms.items()})

    def __mul__(self, other) -> "TorusElem":
        if isinstance(other, (int, QCoeff)):
            c0 = QCoeff.of(other)
            return TorusElem(
                self.context, {v: c * c0 for v, c in self.terms.items()}
            )
        self._check(other)
        ctx = self.context
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = tuple(x + y for x, y in zip(u, v))
                c = (a * b).shift(ctx.omega_quarters(u, v))
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return TorusElem(ctx, out)

    def __rmul__(self, other) -> "TorusElem":
        # scalar coefficients are central, so the order is immaterial here
        if isinstance(other, (int, QCoeff)):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusElem)
            and self.context == other.context
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.context, frozenset((v, c) for v, c in self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def commutator(self, other: "TorusElem") -> "TorusElem":
        return self * other - other * self

    def q2_commutator(self, other: "TorusElem") -> "TorusElem":
        """[A, B]_{q^2} = q A B - q^-1 B A."""
        return self * other * QCoeff.q_power(1) - other * self * QCoeff.q_power(-1)

    def hermitian_conjugate(self) -> "TorusElem":
        """Conjugate every coefficient by q -> 1/q, fixing Weyl monomials."""
        return TorusElem(self.context, {v: c.conjugate() for v, c in self.terms.items()})

    def classical_limit(self) -> LaurentElem:
        """Evaluate every coefficient at q = 1."""
        return LaurentElem(
            self.context.vars, {v: c.at_q_one() for v, c in self.terms.items()}
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for vec in sorted(self.terms):
            c = self.terms[vec]
            mono = _exp_term_str(self.context.vars.names, vec)
            cs = str(c)
            if not mono:
                pieces.append(f"({cs})" if ("+" in cs or " - " in cs) else cs)
            elif cs == "1":
                pieces.append(f":{mono}:")
            elif cs == "-1":
                pieces.append(f"-:{mono}:")
            elif "+" in cs or " - " in cs:
                pieces.append(f"({cs})*:{mono}:")
            else:
                pieces.append(f"{cs}*:{mono}:")
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def torus_mul(a: TorusElem, b: TorusElem) -> TorusElem:
    """Product in the quantum torus; elements must share a context."""
    return a * b


def hermitian_conjugate(a: TorusElem) -> TorusElem:
    return a.hermitian_conjugate()


def classical_limit(a: TorusElem) -> LaurentElem:
    return a.classical_limit()


def evaluate(a: LaurentElem, assignment: Mapping[str, float]) -> float:
    return a.evaluate(assignment)
