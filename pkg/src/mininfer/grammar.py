"""Text format for constraint files.

One constraint per line, e.g.::

    # CHSH mean
    sqrt2*XX + sqrt2*ZZ = 1.3
    P[PSI-] = 0.75
    XI = 0

A term is an optional coefficient (a decimal number, ``sqrt2`` or
``1/sqrt2``) followed by ``*`` and an atom: two Pauli letters or a Bell
projector ``P[PSI-]``, ``P[PSI+]``, ``P[PHI-]``, ``P[PHI+]``.  Terms are
joined by ``+`` or ``-``.  Blank lines and lines starting with ``#`` are
ignored.
"""

from __future__ import annotations

import re
from typing import NamedTuple

import numpy as np

from .constraints import ConstraintSet, Observable
from .exceptions import ConstraintSyntaxError, NotHermitianError
from .linalg import hermitian_defect
from .quantum import BELL_LABELS, BELL_PROJECTORS, SQRT2, pauli_product

UNSIGNED = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"

_TOKENS = [
    ("INVSQRT2", r"1/sqrt2"),
    ("SQRT2", r"sqrt2"),
    ("BELL", r"P\[\s*(?:PSI|PHI)[+-]\s*\]"),
    ("PAULI2", r"[IXYZ]\s*[IXYZ]"),
    ("NUMBER", UNSIGNED),
    ("STAR", r"\*"),
    ("PLUS", r"\+"),
    ("MINUS", r"-"),
    ("EQ", r"="),
    ("WS", r"\s+"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKENS))


class Token(NamedTuple):
    kind: str
    text: str
    col: int


def _tokenize(line: str, lineno: int) -> list[Token]:
    out = []
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:
            if line[pos] in "IXYZ":
                nxt = len(line.rstrip()) if pos + 1 >= len(line.rstrip()) else pos + 1
                raise ConstraintSyntaxError("expected a second Pauli letter", lineno, nxt + 1)
            raise ConstraintSyntaxError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        if m.lastgroup != "WS":
            out.append(Token(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    return out


def _atom_matrix(tok: Token) -> tuple[str, np.ndarray]:
    if tok.kind == "PAULI2":
        label = re.sub(r"\s", "", tok.text)
        return label, pauli_product(label)
    name = re.sub(r"\s", "", tok.text)[2:-1]
    return f"P[{name}]", BELL_PROJECTORS[BELL_LABELS.index(name)]


class _LineParser:
    def __init__(self, tokens: list[Token], lineno: int, width: int):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.width = width

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def fail(self, message: str, tok=None):
        col = tok.col if tok is not None else self.width + 1
        raise ConstraintSyntaxError(message, self.lineno, col)

    def expect(self, *kinds) -> Token:
        tok = self.peek()
        if tok is None or tok.kind not in kinds:
            found = "end of line" if tok is None else repr(tok.text)
            self.fail(f"expected {' or '.join(kinds)}, found {found}", tok)
        self.i += 1
        return tok

    def number(self) -> float:
        """NUMBER with an optional leading sign."""
        tok = self.peek()
        sign = 1.0
        if tok is not None and tok.kind in ("PLUS", "MINUS"):
            self.i += 1
            sign = -1.0 if tok.kind == "MINUS" else 1.0
        return sign * float(self.expect("NUMBER").text)

    def term(self):
        tok = self.peek()
        coef = 1.0
        if tok is not None and tok.kind in ("SQRT2", "INVSQRT2"):
            self.i += 1
            coef = SQRT2 if tok.kind == "SQRT2" else 1.0 / SQRT2
            self.expect("STAR")
        elif tok is not None and tok.kind in ("NUMBER", "PLUS", "MINUS"):
            coef = self.number()
            self.expect("STAR")
        atom = self.expect("PAULI2", "BELL")
        label, M = _atom_matrix(atom)
        return coef, label, M, atom

    def constraint(self):
        terms = [self.term()]
        while self.peek() is not None and self.peek().kind in ("PLUS", "MINUS"):
            sign = 1.0 if self.expect("PLUS", "MINUS").kind == "PLUS" else -1.0
            coef, label, M, atom = self.term()
            terms.append((sign * coef, label, M, atom))
        self.expect("EQ")
        mean = self.number()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek().text!r} after the mean", self.peek())
        seen = set()
        for _, label, _, atom in terms:
            if label in seen:
                self.fail(f"atom {label} appears twice in one expression", atom)
            seen.add(label)
        return terms, mean


def parse_constraints(text: str, match_tolerance: float = 1e-10) -> ConstraintSet:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        terms, mean = _LineParser(_tokenize(raw, lineno), lineno, len(raw)).constraint()
        M = sum(c * A for c, _, A, _ in terms)
        if hermitian_defect(M) > 1e-12:
            raise NotHermitianError(f"line {lineno}: observable is not Hermitian")
        label = re.sub(r"\s+", "", raw.split("=")[0])
        for prev_line, prev, _ in pairs:
            if np.allclose(prev.matrix, M, atol=1e-14, rtol=0):
                col = len(raw) - len(raw.lstrip()) + 1
                raise ConstraintSyntaxError(f"duplicate of the observable on line {prev_line}", lineno, col)
        pairs.append((lineno, Observable(M, label), mean))
    return ConstraintSet.from_pairs([(obs, mean) for _, obs, mean in pairs], match_tolerance)
