"""Half-spin representations as exterior algebras, and Clifford actions.

``V = C^{2n} = E + F`` with basis ``e_1..e_n, f_1..f_n`` and pairing
``<e_i, f_j> = delta_ij``.  A vector is a length-``2n`` list: the ``e``
coefficients followed by the ``f`` coefficients.  Spinors live in ``wedge E``;
a subset ``S`` of ``{1..n}`` is encoded as the bitmask with bit ``i-1`` set
for ``i`` in ``S``.

Sign convention: ``e_i ^ e_S`` and the contraction ``f_i . e_S`` both carry
``(-1)^#{j in S : j < i}``.  With it ``v.w.d + w.v.d = <v, w> d``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence

from . import linalg
from .scalars import QS2, as_scalar, fmt_scalar, parse_scalar

__all__ = [
    "Spinor", "Vector", "basis_vector", "pairing", "parse_vector", "parse_spinor",
    "fmt_vector", "is_isotropic", "clifford_act", "multivector_act", "kills",
    "annihilator", "DimensionError",
]

Vector = List  # length 2n, e-part then f-part


class DimensionError(ValueError):
    """Vector and spinor live in different ambient spaces."""


def _sign_before(mask: int, i: int) -> int:
    """(-1)^(number of elements of mask below index i), i 0-based."""
    return -1 if bin(mask & ((1 << i) - 1)).count("1") & 1 else 1


class Spinor:
    """Element of ``wedge E`` for ``E = C^n``, stored sparsely."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[int, object] | None = None):
        self.n = n
        self.terms: Dict[int, object] = {}
        if terms:
            for mask, c in terms.items():
                if mask >> n:
                    raise DimensionError(f"subset {mask:b} outside 1..{n}")
                if c:
                    self.terms[mask] = as_scalar(c)

    @classmethod
    def vacuum(cls, n: int) -> "Spinor":
        return cls(n, {0: 1})

    @classmethod
    def monomial(cls, n: int, subset: Iterable[int], coeff=1) -> "Spinor":
        mask = 0
        for i in subset:
            mask |= 1 << (i - 1)
        return cls(n, {mask: coeff})

    @property
    def parity(self) -> str:
        kinds = {bin(m).count("1") & 1 for m in self.terms}
        if kinds == {0} or not kinds:
            return "even"
        if kinds == {1}:
            return "odd"
        return "mixed"

    def _add_into(self, out: Dict[int, object], mask: int, c) -> None:
        v = out.get(mask, 0) + c
        if v:
            out[mask] = v
        else:
            out.pop(mask, None)

    def __add__(self, other: "Spinor") -> "Spinor":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            self._add_into(out, m, c)
        return Spinor(self.n, out)

    def __sub__(self, other: "Spinor") -> "Spinor":
        return self + other * -1

    def __neg__(self) -> "Spinor":
        return self * -1

    def __mul__(self, c) -> "Spinor":
        if not c:
            return Spinor(self.n)
        return Spinor(self.n, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spinor):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "Spinor") -> None:
        if self.n != other.n:
            raise DimensionError(f"spinors of rank {self.n} and {other.n}")

    def coords(self, masks: Sequence[int]) -> list:
        return [self.terms.get(m, Fraction(0)) for m in masks]

    def wedge_e(self, i: int) -> "Spinor":
        """``e_i ^ self`` for 1-based ``i``."""
        b = 1 << (i - 1)
        out = {}
        for m, c in self.terms.items():
            if not m & b:
                out[m | b] = c * _sign_before(m, i - 1)
        return Spinor(self.n, out)

    def contract_f(self, i: int) -> "Spinor":
        """Contraction of ``self`` by ``f_i``."""
        b = 1 << (i - 1)
        out = {}
        for m, c in self.terms.items():
            if m & b:
                out[m ^ b] = c * _sign_before(m, i - 1)
        return Spinor(self.n, out)

    def __repr__(self) -> str:
        return f"Spinor({self.n}, {fmt_spinor(self)!r})"

    def __str__(self) -> str:
        return fmt_spinor(self)


def fmt_spinor(d: Spinor) -> str:
    if not d.terms:
        return "0"
    parts = []
    for m in sorted(d.terms, key=lambda m: (bin(m).count("1"), m)):
        c = d.terms[m]
        idx = "".join(str(i + 1) for i in range(d.n) if m >> i & 1)
        base = f"e{idx}" if idx else "1"
        if c == 1:
            parts.append(f"+ {base}")
        elif c == -1:
            parts.append(f"- {base}")
        else:
            pure = isinstance(c, Fraction) or c.a == 0
            neg = c < 0 if isinstance(c, Fraction) else (pure and c.b < 0)
            s = fmt_scalar(-c if neg else c)
            s = s if pure else f"({s})"
            sign = "-" if neg else "+"
            parts.append(f"{sign} {s}" if base == "1" else f"{sign} {s}*{base}")
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def basis_vector(n: int, kind: str, i: int, coeff=1) -> Vector:
    v = [Fraction(0)] * (2 * n)
    v[(i - 1) if kind == "e" else (n + i - 1)] = as_scalar(coeff)
    return v


def pairing(v: Sequence, w: Sequence):
    """Symmetric bilinear form with ``<e_i, f_j> = delta_ij``."""
    if len(v) != len(w):
        raise DimensionError("vectors of different length")
    n = len(v) // 2
    s = Fraction(0)
    for i in range(n):
        if v[i] and w[n + i]:
            s += v[i] * w[n + i]
        if v[n + i] and w[i]:
            s += v[n + i] * w[i]
    return as_scalar(s)


def is_isotropic(gens: Sequence[Sequence]) -> bool:
    return all(not pairing(u, v) for a, u in enumerate(gens) for v in gens[a:])


def clifford_act(v: Sequence, d: Spinor) -> Spinor:
    """``v . d = sum a_i e_i ^ d + sum b_i f_i . d``."""
    if len(v) != 2 * d.n:
        raise DimensionError(f"vector of length {len(v)} on spinor of rank {d.n}")
    n = d.n
    out: Dict[int, object] = {}
    for m, c in d.terms.items():
        for i in range(n):
            b = 1 << i
            a = v[i]
            if a and not m & b:
                d._add_into(out, m | b, a * c * _sign_before(m, i))
            f = v[n + i]
            if f and m & b:
                d._add_into(out, m ^ b, f * c * _sign_before(m, i))
    return Spinor(n, out)


def multivector_act(ws: Sequence[Sequence], d: Spinor) -> Spinor:
    """``w_1 . (w_2 . ( ... (w_k . d)))``."""
    out = d
    for w in reversed(ws):
        out = clifford_act(w, out)
        if not out:
            break
    return out


def kills(U: Sequence[Sequence], d: Spinor) -> bool:
    """Whether the Pluecker representative of the isotropic span ``U`` kills ``d``.

    The generators are reduced to an independent set first; the test only
    asks for vanishing, so the choice of basis does not matter.
    """
    gens = [list(u) for u in U]
    for u in gens:
        if len(u) != 2 * d.n:
            raise DimensionError("subspace and spinor in different ambient spaces")
    if not is_isotropic(gens):
        raise ValueError("subspace is not isotropic")
    E, _ = linalg.echelon(gens)
    if len(E) >= d.n:
        raise ValueError("dimension of U must be below n")
    return not multivector_act(E, d)


def annihilator(d: Spinor) -> List[Vector]:
    """Basis of ``{v in V : v . d = 0}``."""
    if not d:
        raise ValueError("zero spinor has no annihilator")
    n = d.n
    cols = [clifford_act(basis_vector(n, "e" if j < n else "f", j % n + 1), d) for j in range(2 * n)]
    masks = sorted({m for c in cols for m in c.terms})
    M = [[c.terms.get(m, Fraction(0)) for c in cols] for m in masks]
    return linalg.kernel(M, ncols=2 * n)


def _split_terms(text: str):
    """Yield ``(sign, body)`` for each top-level term; parentheses group a coefficient."""
    s = text.strip()
    if not s:
        raise ValueError("empty literal")
    terms, sign, buf, depth = [], "", "", 0
    for ch in s:
        if ch in "+-" and depth == 0 and buf.strip():
            terms.append((sign, buf.strip()))
            sign, buf = ch, ""
        elif ch in "+-" and depth == 0 and not buf.strip():
            sign = "-" if (sign == "-") != (ch == "-") else "+"
        else:
            depth += (ch == "(") - (ch == ")")
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
            buf += ch
    if depth or not buf.strip():
        raise ValueError(f"cannot parse {text!r}")
    terms.append((sign, buf.strip()))
    return terms


def _split_factor(body: str):
    """Split ``'2*e15'`` / ``'sqrt2*f7'`` / ``'e3'`` / ``'1/2'`` into (coeff, basis)."""
    head, star, last = body.rpartition("*")
    if not star:
        head, last = "", body
    last = last.strip()
    if re.fullmatch(r"[ef]\d+", last):
        return (_coeff(head) if star else Fraction(1)), last
    return _coeff(body), None


def _coeff(text: str):
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        return parse_scalar(t[1:-1])
    return parse_scalar(t)


def parse_spinor(text: str, n: int) -> Spinor:
    """Parse ``'1 + e1234 - 2*e15'``; subset digits are element indices."""
    out = Spinor(n)
    for sign, body in _split_terms(text):
        coeff, base = _split_factor(body)
        if sign == "-":
            coeff = -coeff
        if base is None:
            out = out + Spinor(n, {0: coeff})
            continue
        if base[0] != "e":
            raise ValueError(f"spinor terms are wedges of e's, got {base!r}")
        idx = [int(ch) for ch in base[1:]]
        if len(set(idx)) != len(idx) or sorted(idx) != idx:
            raise ValueError(f"subset {base!r} must list increasing distinct indices")
        if any(i < 1 or i > n for i in idx):
            raise DimensionError(f"index in {base!r} outside 1..{n}")
        out = out + Spinor.monomial(n, idx, coeff)
    return out


def parse_vector(text: str, n: int) -> Vector:
    """Parse ``'sqrt2*e7 + e1 - f1'`` into a length-``2n`` coordinate list."""
    v = [Fraction(0)] * (2 * n)
    for sign, body in _split_terms(text):
        coeff, base = _split_factor(body)
        if base is None:
            raise ValueError(f"vector term without basis element in {text!r}")
        i = int(base[1:])
        if not 1 <= i <= n:
            raise DimensionError(f"{base} outside 1..{n}")
        k = i - 1 if base[0] == "e" else n + i - 1
        v[k] = as_scalar(v[k] + (-coeff if sign == "-" else coeff))
    return v


def fmt_vector(v: Sequence) -> str:
    n = len(v) // 2
    parts = []
    for k, c in enumerate(v):
        if not c:
            continue
        base = f"e{k + 1}" if k < n else f"f{k - n + 1}"
        s = fmt_scalar(c)
        if isinstance(c, QS2) and c.a and c.b:
            s = f"({s})"
        if c == 1:
            parts.append(f"+{base}")
        elif c == -1:
            parts.append(f"-{base}")
        else:
            parts.append(f"+{s}*{base}" if not s.startswith("-") else f"{s}*{base}")
    out = "".join(parts) or "0"
    return out[1:] if out.startswith("+") else out
