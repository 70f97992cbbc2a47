"""The case registry.

A catalog is a line-oriented text file of stanzas::

    [OG3-12:S+]
    kind = table2
    space = OG(3,12)
    bundle = S+
    model = 6
    spinor = 1 + e123456
    witness = e1 + f6, e2 + f5, e3 + f4
    expect.d = 17 | where the value comes from

Every ``expect.*`` value may carry a provenance note after ``|``.  The
builtin catalog ships as package data; ``load_catalog(path)`` reads any
other file in the same format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from . import lie
from .spinor import DimensionError, Spinor, is_isotropic, kills, pairing, parse_spinor, parse_vector
from .weights.grassmannian import OGSpace, parse_space

KINDS = ("table1", "table2", "family", "identification", "orbit")
AMBIENT = ("line", "span", "spinor")
FLAGS = ("purity", "phi", "rank2", "orbit-discrepancy")
INT_KEYS = ("d", "iota", "rho", "ambient_stab", "witness_stab", "orbit_dim", "h0_bundle", "chi_tangent", "h00",
            "generic_witness_stab")
ORBIT_KINDS = ("dense", "codim1")
VERDICTS = ("rigid", "rigid-via-invariant-argument", "inconclusive")


class CatalogError(ValueError):
    """Malformed or inconsistent catalog entry."""


@dataclass(frozen=True)
class Expected:
    value: object
    source: str = ""


@dataclass
class CaseDescriptor:
    id: str
    kind: str
    line: int
    space: Optional[OGSpace] = None
    bundle: Optional[str] = None
    m: Optional[int] = None
    model: Optional[int] = None
    spinor_text: List[str] = field(default_factory=list)
    spinors: List[Spinor] = field(default_factory=list)
    hyperplane: Optional[list] = None
    witness: Optional[List[list]] = None
    witness_text: Optional[str] = None
    ambient: str = "line"
    a0: Optional[int] = None
    budget: Optional[int] = None
    flags: Tuple[str, ...] = ()
    identified: Optional[str] = None
    notes: List[str] = field(default_factory=list)
    expect: Dict[str, Expected] = field(default_factory=dict)

    # ---- Lie-side data --------------------------------------------------------

    def algebra(self) -> lie.Subalgebra:
        """``so(m)``, realised inside ``so(2n)`` when ``m`` is odd."""
        return _algebra(self.model, None if self.hyperplane is None else tuple(self.hyperplane))

    def ambient_constraint(self):
        """Stabilizer of the section(s) as used by the orbit count."""
        return self._constraint(self.ambient)

    def section_constraint(self):
        """Stabilizer of the point of ``P(H^0(E))`` given by the section(s)."""
        return self._constraint("span" if self.ambient == "span" else "line")

    def _constraint(self, mode: str):
        if mode == "span":
            return lie.FixSpan(tuple(self.spinors))
        cls = lie.FixSpinor if mode == "spinor" else lie.FixLine
        parts = tuple(cls(d) for d in self.spinors)
        return parts[0] if len(parts) == 1 else lie.All(parts)

    def witness_constraint(self):
        return lie.PreserveSubspace(tuple(tuple(v) for v in self.witness))

    def a0_matrix(self):
        """``sum_{i <= a0} e_i ^ f_i``: identity on ``<e_i>``, minus identity on ``<f_i>``."""
        if self.a0 is None:
            return None
        from .spinor import basis_vector
        n = self.model
        A = None
        for i in range(1, self.a0 + 1):
            B = lie.bivector(basis_vector(n, "e", i), basis_vector(n, "f", i))
            A = B if A is None else [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]
        return A

    def has(self, flag: str) -> bool:
        return flag in self.flags

    def get(self, key: str, default=None):
        e = self.expect.get(key)
        return default if e is None else e.value


@lru_cache(maxsize=None)
def _algebra(n: int, h: Optional[tuple]) -> lie.Subalgebra:
    return lie.so(n) if h is None else lie.odd_model(n, list(h))


# ---- parsing ----------------------------------------------------------------------------

_HEADER = re.compile(r"\[([A-Za-z0-9:+\-]+)\]")


def parse_catalog(text: str, origin: str = "<catalog>") -> List[CaseDescriptor]:
    cases: List[CaseDescriptor] = []
    raw: Optional[dict] = None
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        m = _HEADER.fullmatch(s)
        if m:
            if raw is not None:
                cases.append(_build(raw, origin))
            cid = m.group(1)
            if cid in seen:
                raise CatalogError(f"{origin}:{lineno}: duplicate case {cid}")
            seen.add(cid)
            raw = {"id": cid, "line": lineno, "items": []}
            continue
        if raw is None:
            raise CatalogError(f"{origin}:{lineno}: entry outside a [case] stanza")
        if "=" not in s:
            raise CatalogError(f"{origin}:{lineno}: expected 'key = value'")
        key, value = (p.strip() for p in s.split("=", 1))
        if not key or not value:
            raise CatalogError(f"{origin}:{lineno}: empty key or value")
        raw["items"].append((lineno, key, value))
    if raw is not None:
        cases.append(_build(raw, origin))
    return cases


def _build(raw: dict, origin: str) -> CaseDescriptor:
    c = CaseDescriptor(raw["id"], "", raw["line"])
    where = lambda ln: f"{origin}:{ln}: {c.id}"
    for ln, key, value in raw["items"]:
        try:
            _apply(c, key, value)
        except CatalogError as e:
            raise CatalogError(f"{where(ln)}: {e}") from None
        except (ValueError, DimensionError) as e:
            raise CatalogError(f"{where(ln)}: bad value for {key}: {e}") from None
    try:
        _finish(c)
    except (CatalogError, ValueError, DimensionError) as e:
        raise CatalogError(f"{where(c.line)}: {e}") from None
    return c


def _apply(c: CaseDescriptor, key: str, value: str) -> None:
    if key == "kind":
        if value not in KINDS:
            raise CatalogError(f"unknown kind {value!r}")
        c.kind = value
    elif key == "space":
        c.space = parse_space(value)
        c.m = c.space.m
    elif key == "m":
        c.m = int(value)
    elif key == "bundle":
        c.bundle = value
    elif key == "model":
        c.model = int(value)
    elif key == "spinor":
        c.spinor_text.append(value)
    elif key == "hyperplane":
        c._hyper_text = value
    elif key == "witness":
        c.witness_text = value
    elif key == "ambient":
        if value not in AMBIENT:
            raise CatalogError(f"ambient must be one of {AMBIENT}")
        c.ambient = value
    elif key == "a0":
        c.a0 = int(value)
    elif key == "budget":
        c.budget = int(value)
    elif key == "flags":
        fl = tuple(value.split())
        bad = [f for f in fl if f not in FLAGS]
        if bad:
            raise CatalogError(f"unknown flags {bad}")
        c.flags = fl
    elif key == "identified":
        c.identified = value
    elif key == "note":
        c.notes.append(value)
    elif key.startswith("expect."):
        name = key[7:]
        val, _, src = value.partition("|")
        c.expect[name] = Expected(_expect_value(name, val.strip()), src.strip())
    else:
        raise CatalogError(f"unknown key {key!r}")


def _expect_value(name: str, v: str):
    if name in INT_KEYS:
        return int(v)
    if name == "betti":
        return tuple(None if t == "?" else int(t) for t in v.split())
    if name == "orbit":
        if v not in ORBIT_KINDS:
            raise CatalogError(f"orbit must be one of {ORBIT_KINDS}")
        return v
    if name == "verdict":
        if v not in VERDICTS:
            raise CatalogError(f"verdict must be one of {VERDICTS}")
        return v
    raise CatalogError(f"unknown expectation {name!r}")


def _finish(c: CaseDescriptor) -> None:
    if not c.kind:
        raise CatalogError("missing kind")
    if c.m is None:
        raise CatalogError("missing space or m")
    needs_model = c.kind in ("table1", "table2", "family", "orbit")
    if needs_model and c.model is None:
        raise CatalogError("missing model rank")
    if c.model is not None:
        want = (c.m + 1) // 2
        if c.model != want:
            raise CatalogError(f"model rank {c.model} does not fit m = {c.m} (expected {want})")
        hyper = getattr(c, "_hyper_text", None)
        if (c.m % 2 == 1) != (hyper is not None):
            raise CatalogError("odd m needs exactly one hyperplane vector; even m none")
        if hyper is not None:
            c.hyperplane = parse_vector(hyper, c.model)
            if not pairing(c.hyperplane, c.hyperplane):
                raise CatalogError("hyperplane normal is isotropic")
        c.spinors = [parse_spinor(t, c.model) for t in c.spinor_text]
        if needs_model and not c.spinors:
            raise CatalogError("missing spinor")
        for d in c.spinors:
            if not d:
                raise CatalogError("zero spinor")
    if c.bundle is not None and c.space is not None:
        _check_parity(c)
    if c.witness_text is not None:
        if c.model is None:
            raise CatalogError("witness needs a model rank")
        c.witness = [parse_vector(t, c.model) for t in c.witness_text.split(",")]
        _check_witness(c)
    if c.a0 is not None and c.model is not None and not 1 <= c.a0 <= c.model:
        raise CatalogError("a0 out of range")


def _summands(bundle: str) -> List[str]:
    return [t for t in re.findall(r"S[+-]?|[^S]+", bundle.replace(" ", "")) if t.startswith("S")]


def _check_parity(c: CaseDescriptor) -> None:
    """``S+`` sections are even spinors, ``S-`` odd ones, ``S`` (odd ``m``) even."""
    if not c.spinors:
        return
    parts = _summands(c.bundle)
    if not parts:
        return
    if len(parts) != len(c.spinors):
        raise CatalogError(f"{len(c.spinors)} spinor(s) for bundle {c.bundle!r}")
    for p, d in zip(parts, c.spinors):
        want = "odd" if p == "S-" else "even"
        if d.parity != want:
            raise CatalogError(f"spinor {d} has parity {d.parity}, bundle {p} needs {want}")


def _check_witness(c: CaseDescriptor) -> None:
    W = c.witness
    if not is_isotropic(W):
        raise CatalogError("witness is not isotropic")
    from . import linalg
    if linalg.rank(W) != len(W):
        raise CatalogError("witness vectors are dependent")
    if c.space is not None and len(W) != c.space.k:
        raise CatalogError(f"witness has dimension {len(W)}, expected {c.space.k}")
    if c.hyperplane is not None and any(pairing(c.hyperplane, w) for w in W):
        raise CatalogError("witness is not orthogonal to the hyperplane normal")
    if c.bundle is not None:
        for d in c.spinors:
            if not kills(W, d):
                raise CatalogError(f"witness does not kill spinor {d}")


# ---- access -----------------------------------------------------------------------------

def builtin_text() -> str:
    return resources.files("spinfano").joinpath("data/catalog.txt").read_text()


def load_catalog(path: Optional[str] = None) -> List[CaseDescriptor]:
    """Parse and validate a catalog; ``None`` selects the builtin one."""
    if path is None:
        return list(_builtin())
    with open(path) as fh:
        return parse_catalog(fh.read(), path)


@lru_cache(maxsize=1)
def _builtin() -> Tuple[CaseDescriptor, ...]:
    return tuple(parse_catalog(builtin_text(), "builtin"))


def select(cases: Sequence[CaseDescriptor], ids: Sequence[str] = ()) -> List[CaseDescriptor]:
    """Cases with the given ids (all when empty); unknown ids raise ``KeyError``."""
    if not ids:
        return sorted(cases, key=lambda c: c.id)
    by_id = {c.id: c for c in cases}
    missing = [i for i in ids if i not in by_id]
    if missing:
        raise KeyError(f"unknown case id(s): {', '.join(missing)}")
    return sorted((by_id[i] for i in ids), key=lambda c: c.id)
