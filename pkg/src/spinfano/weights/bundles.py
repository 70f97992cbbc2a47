"""Bundle expressions on ``OG(k, m)`` and their Levi characters.

Grammar::

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom | func '(' args ')' | '(' expr ')'
    atom   := U | Ud | Q | S | S+ | S- | T | Omega | V | O(t)
    func   := wedge<k> | sym<k> | dual | hom

``Ud`` is the dual tautological bundle, ``Q`` is ``U^perp/U``, ``T`` the
(associated graded) tangent bundle, ``V`` the trivial bundle with fibre the
vector representation, ``O(t)`` the ``t``-th power of the ample generator
(Picard rank one only).  ``wedge2(X)`` and ``sym3(X)`` are exterior and
symmetric powers, ``hom(A, B) = dual(A) * B``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import List

from .characters import Character, exterior_power, levi_decompose, symmetric_power
from .grassmannian import OGSpace, og_space

_TOKEN = re.compile(r"\s*(wedge\d+|sym\d+|dual|hom|Omega|Ud|S\+|S-|O\(-?\d+\)|[UQSTV]|[()+*,])")


def tokenize(text: str) -> List[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad bundle expression {text!r} at {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, X: OGSpace, text: str):
        self.X = X
        self.toks = tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise ValueError(f"expected {want or 'token'} in {self.text!r}")
        self.i += 1
        return t

    def parse(self) -> Character:
        ch = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input in {self.text!r}")
        return ch

    def expr(self) -> Character:
        ch = self.term()
        while self.peek() == "+":
            self.take()
            ch = ch + self.term()
        return ch

    def term(self) -> Character:
        ch = self.factor()
        while self.peek() == "*":
            self.take()
            ch = ch * self.factor()
        return ch

    def factor(self) -> Character:
        t = self.take()
        if t == "(":
            ch = self.expr()
            self.take(")")
            return ch
        if t.startswith(("wedge", "sym")) or t in ("dual", "hom"):
            self.take("(")
            args = [self.expr()]
            while self.peek() == ",":
                self.take()
                args.append(self.expr())
            self.take(")")
            return _apply(t, args, self.text)
        return atom(self.X, t)


def _apply(f: str, args: List[Character], text: str) -> Character:
    want = 2 if f == "hom" else 1
    if len(args) != want:
        raise ValueError(f"{f} takes {want} argument(s) in {text!r}")
    if f == "dual":
        return args[0].dual()
    if f == "hom":
        return args[0].dual() * args[1]
    k = int(f[5:] if f.startswith("wedge") else f[3:])
    return exterior_power(args[0], k) if f.startswith("wedge") else symmetric_power(args[0], k)


def atom(X: OGSpace, name: str) -> Character:
    n = X.n
    if name == "Ud":
        ws = X.weights_dual_tautological()
    elif name == "U":
        ws = [tuple(-x for x in w) for w in X.weights_dual_tautological()]
    elif name == "Q":
        ws = X.weights_quotient()
    elif name == "V":
        ws = X.weights_vector()
    elif name == "T":
        ws = X.weights_tangent()
    elif name == "Omega":
        ws = [tuple(-x for x in w) for w in X.weights_tangent()]
    elif name in ("S", "S+", "S-"):
        ws = X.weights_spinor(name[1:])
    elif name.startswith("O("):
        t = int(name[2:-1])
        ws = [(0,) * n] if t == 0 else [X.line_bundle(t)]
    else:
        raise ValueError(f"unknown bundle {name!r}")
    return Character.from_weights(n, ws)


def bundle_character(X: OGSpace, text: str) -> Character:
    return _cached(X, text.replace(" ", ""))


@lru_cache(maxsize=256)
def _cached(X: OGSpace, text: str) -> Character:
    return _Parser(X, text).parse()


def decompose(X: OGSpace, text: str) -> Character:
    """Irreducible constituents (highest weights with multiplicity) of an expression."""
    return levi_decompose(X, bundle_character(X, text))


def space(k: int, m: int, component=None) -> OGSpace:
    return og_space(k, m, component)
