"""Group expressions: C(n), S(n), A(n), D(n), Q8, V4, file "...", products with x.

The product operator is left-associative and whitespace around tokens is
ignored. Atom letters are case-insensitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .errors import ParseError
from .groups import Caps, DEFAULT_CAPS, FiniteGroup, direct_product, make_family, read_cayley_file

_LETTER_FAMILIES = {
    "c": ("cyclic", 1),
    "s": ("symmetric", 2),
    "a": ("alternating", 2),
    "d": ("dihedral", 3),
}
_FAMILY_LETTERS = {fam: letter.upper() for letter, (fam, _) in _LETTER_FAMILIES.items()}
_ATOM_EXPECTATIONS = ("C(n)", "S(n)", "A(n)", "D(n)", "Q8", "V4", 'file "path"', "(")


@dataclass(frozen=True)
class FamilyAtom:
    family: str
    degree: Optional[int] = None

    def __post_init__(self):
        if self.family in ("quaternion8", "klein4"):
            if self.degree is not None:
                raise ValueError(f"{self.family} takes no degree")
            return
        minimum = {"cyclic": 1, "symmetric": 2, "alternating": 2, "dihedral": 3}.get(self.family)
        if minimum is None:
            raise ValueError(f"unknown family {self.family!r}")
        if self.degree is None or self.degree < minimum:
            raise ValueError(f"{self.family} needs a degree >= {minimum}")


@dataclass(frozen=True)
class FileAtom:
    path: str


@dataclass(frozen=True)
class Product:
    left: "GroupExpr"
    right: "GroupExpr"


GroupExpr = Union[FamilyAtom, FileAtom, Product]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _fail(self, expected: tuple[str, ...], at: Optional[int] = None):
        pos = self.pos if at is None else at
        what = "unexpected end of input" if pos >= len(self.text) else f"unexpected {self.text[pos]!r}"
        raise ParseError(what, pos, expected)

    def _expect(self, ch: str) -> None:
        self._skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self._fail((ch,))
        self.pos += 1

    def _integer(self) -> tuple[int, int]:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self._fail(("integer",))
        return int(self.text[start : self.pos]), start

    def parse(self) -> GroupExpr:
        expr = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            self._fail(("x", "end of input"))
        return expr

    def _expr(self) -> GroupExpr:
        node = self._term()
        while True:
            self._skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] in "xX":
                self.pos += 1
                node = Product(node, self._term())
            else:
                return node

    def _term(self) -> GroupExpr:
        self._skip_ws()
        if self.pos >= len(self.text):
            self._fail(_ATOM_EXPECTATIONS)
        ch = self.text[self.pos]
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            self._expect(")")
            return inner
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        word = self.text[start : self.pos].lower()
        if word == "q8":
            return FamilyAtom("quaternion8")
        if word == "v4":
            return FamilyAtom("klein4")
        if word == "file":
            self._skip_ws()
            if self.pos >= len(self.text) or self.text[self.pos] != '"':
                self._fail(('"',))
            self.pos += 1
            path_start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] != '"':
                self.pos += 1
            if self.pos >= len(self.text):
                self._fail(('"',))
            path = self.text[path_start : self.pos]
            self.pos += 1
            return FileAtom(path)
        if word in _LETTER_FAMILIES:
            family, minimum = _LETTER_FAMILIES[word]
            self._expect("(")
            value, at = self._integer()
            self._expect(")")
            if value < minimum:
                raise ParseError(
                    f"degree {value} is too small for {word.upper()}", at, (f"integer >= {minimum}",)
                )
            return FamilyAtom(family, value)
        self.pos = start
        self._fail(_ATOM_EXPECTATIONS)


def parse_group_expr(text: str) -> GroupExpr:
    """Parse an expression; raises ParseError with position and expectations."""
    return _Parser(text).parse()


def format_group_expr(expr: GroupExpr) -> str:
    """Canonical rendering; parse(format(e)) == e."""
    if isinstance(expr, FamilyAtom):
        if expr.family == "quaternion8":
            return "Q8"
        if expr.family == "klein4":
            return "V4"
        return f"{_FAMILY_LETTERS[expr.family]}({expr.degree})"
    if isinstance(expr, FileAtom):
        return f'file "{expr.path}"'
    left = format_group_expr(expr.left)
    right = format_group_expr(expr.right)
    if isinstance(expr.right, Product):
        right = f"({right})"
    return f"{left} x {right}"


def evaluate(expr: GroupExpr, *, caps: Caps = DEFAULT_CAPS, base_dir: Optional[Path] = None) -> FiniteGroup:
    """Build the group an expression denotes."""
    if isinstance(expr, FamilyAtom):
        if expr.family in ("quaternion8", "klein4"):
            return make_family(expr.family, caps=caps)
        return make_family(expr.family, expr.degree, caps=caps)
    if isinstance(expr, FileAtom):
        path = Path(expr.path)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return read_cayley_file(path, caps=caps)
    left = evaluate(expr.left, caps=caps, base_dir=base_dir)
    right = evaluate(expr.right, caps=caps, base_dir=base_dir)
    return direct_product(left, right, caps=caps).group
