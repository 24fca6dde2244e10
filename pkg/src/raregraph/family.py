"""Finite families of rational-coefficient polynomials on [0, 1).

Family documents are JSON::

    {"functions": [{"coeffs": ["0", "1"]}, {"coeffs": ["1/3", "0", "2"]}]}

Coefficients are exact fraction strings, constant term first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import DomainError, FamilyIndexError, FamilyParseError
from .exact import Number, as_fraction, format_rational, parse_rational

__all__ = [
    "FamilyFunction",
    "FunctionFamily",
    "eval_f",
    "parse_family",
    "serialize_family",
    "load_family",
    "ZERO",
    "IDENTITY",
    "MIXED",
]


@dataclass(frozen=True)
class FamilyFunction:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        for d in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[d]:
                return d
        return -1

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class FunctionFamily:
    functions: tuple[FamilyFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if not self.functions:
            raise ValueError("a family needs at least one function")

    @classmethod
    def of(cls, *coeff_lists) -> FunctionFamily:
        """Build from coefficient lists, e.g. ``FunctionFamily.of([0, 1])``."""
        return cls(tuple(FamilyFunction(tuple(c)) for c in coeff_lists))

    @property
    def m(self) -> int:
        return len(self.functions)

    @property
    def is_constant(self) -> bool:
        return all(f.is_constant for f in self.functions)

    def __getitem__(self, i: int) -> FamilyFunction:
        """1-based access."""
        if not 1 <= i <= self.m:
            raise FamilyIndexError(f"family index {i} outside 1..{self.m}")
        return self.functions[i - 1]


ZERO = FunctionFamily.of([0])
IDENTITY = FunctionFamily.of([0, 1])
MIXED = FunctionFamily.of([0, 1], [0, Fraction(-1, 2)], [Fraction(1, 3), 0, 2])


def eval_f(family: FunctionFamily, i: int, x: Number) -> Fraction:
    """Exact value of the i-th function (1-based) at x in [0, 1)."""
    f = family[i]
    x = as_fraction(x)
    if not 0 <= x < 1:
        raise DomainError(f"x = {x} is outside [0, 1)")
    return f(x)


def parse_family(text: str) -> FunctionFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict) or "functions" not in doc:
        raise FamilyParseError('expected an object with key "functions"', "$")
    entries = doc["functions"]
    if not isinstance(entries, list):
        raise FamilyParseError("must be an array", "functions")
    if not entries:
        raise FamilyParseError("at least one function is required", "functions")
    funcs = []
    for n, entry in enumerate(entries):
        where = f"functions[{n}]"
        if not isinstance(entry, dict) or "coeffs" not in entry:
            raise FamilyParseError('expected an object with key "coeffs"', where)
        coeffs = entry["coeffs"]
        if not isinstance(coeffs, list):
            raise FamilyParseError("coeffs must be an array", where)
        if not coeffs:
            raise FamilyParseError("coeffs must not be empty", where)
        parsed = []
        for k, c in enumerate(coeffs):
            if not isinstance(c, str):
                raise FamilyParseError("coefficient must be a fraction string", f"{where}.coeffs[{k}]")
            try:
                parsed.append(parse_rational(c))
            except ValueError as exc:
                raise FamilyParseError(str(exc), f"{where}.coeffs[{k}]") from None
        funcs.append(FamilyFunction(tuple(parsed)))
    return FunctionFamily(tuple(funcs))


def serialize_family(family: FunctionFamily) -> str:
    doc = {
        "functions": [
            {"coeffs": [_coeff_str(c) for c in f.coeffs]} for f in family.functions
        ]
    }
    return json.dumps(doc)


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else format_rational(c)


def load_family(path: str | Path) -> FunctionFamily:
    return parse_family(Path(path).read_text())
