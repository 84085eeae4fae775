"""F-sequences and the F-factorial family of coefficients.

An F-sequence is a positive-integer sequence ``k -> k_F`` (1-based) that fixes
the level sizes of a graded poset.  ``0_F`` is kept separately because only
some constructions (Whitney numbers) need a bottom level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Optional


@dataclass(frozen=True)
class FSequence:
    name: str
    fn: Callable[[int], int] = field(compare=False, repr=False)
    params: tuple = ()
    zeroth: Optional[int] = None

    def __call__(self, k: int) -> int:
        return value(self, k)

    def with_bottom(self) -> "FSequence":
        """Return a copy with ``0_F = 1`` unless a bottom size is already set."""
        if self.zeroth is not None:
            return self
        return replace(self, zeroth=1)

    def prefix(self, n: int) -> list[int]:
        return [value(self, k) for k in range(1, n + 1)]

    def __str__(self) -> str:
        if self.params and self.name != "list":
            return f"{self.name}({', '.join(map(str, self.params))})"
        return self.name


def value(F: FSequence, k: int) -> int:
    if k < 0:
        raise ValueError(f"negative index {k}")
    if k == 0:
        if F.zeroth is None:
            raise ValueError("no bottom level defined")
        return F.zeroth
    v = F.fn(k)
    if v < 1:
        raise ValueError(f"{F}: entry {k}_F = {v} is not positive")
    return v


# -- built-in sequences ------------------------------------------------------

def natural() -> FSequence:
    return FSequence("natural", lambda k: k)


@lru_cache(maxsize=None)
def _fib(k: int) -> int:
    a, b = 1, 1
    for _ in range(k - 1):
        a, b = b, a + b
    return a


def fibonacci() -> FSequence:
    return FSequence("fibonacci", _fib)


def gaussian(q: int) -> FSequence:
    if q < 1:
        raise ValueError("gaussian sequence needs q >= 1")
    return FSequence("gaussian", lambda k: sum(q**i for i in range(k)), (q,))


def constant(c: int) -> FSequence:
    if c < 1:
        raise ValueError("constant sequence needs c >= 1")
    return FSequence("constant", lambda k: c, (c,))


def from_list(values: Iterable[int], name: str = "list", zeroth: Optional[int] = None) -> FSequence:
    vals = tuple(int(v) for v in values)
    if not vals:
        raise ValueError("empty sequence")
    if any(v < 1 for v in vals):
        raise ValueError("sequence entries must be positive integers")

    def fn(k: int) -> int:
        if k > len(vals):
            raise IndexError(f"sequence {name!r} is defined only up to index {len(vals)}")
        return vals[k - 1]

    return FSequence(name, fn, vals, zeroth)


BUILTINS = ("natural", "fibonacci", "gaussian", "constant")


def builtin(name: str, param: Optional[int] = None) -> FSequence:
    key = name.lower()
    if key in ("natural", "n"):
        return natural()
    if key in ("fibonacci", "fib"):
        return fibonacci()
    if key == "gaussian":
        return gaussian(2 if param is None else param)
    if key == "constant":
        return constant(1 if param is None else param)
    raise KeyError(f"unknown sequence {name!r}")


def load(path: str | Path) -> FSequence:
    """Read a sequence file: a JSON array, or one positive integer per line."""
    path = Path(path)
    text = path.read_text(encoding="utf-8").strip()
    if text.startswith("["):
        values = json.loads(text)
    else:
        values = [int(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    return from_list(values, name=path.stem)


# -- F-factorials and F-nomials ------------------------------------------------

def f_factorial(F: FSequence, n: int) -> int:
    out = 1
    for k in range(1, n + 1):
        out *= value(F, k)
    return out


def falling_factorial(F: FSequence, n: int, k: int) -> int:
    """``n_F (n-1)_F ... (n-k+1)_F``; the empty product for ``k = 0``."""
    if k < 0 or k > n:
        raise ValueError(f"degree exceeds index: k={k}, n={n}")
    out = 1
    for j in range(n - k + 1, n + 1):
        out *= value(F, j)
    return out


def upper_function_factorial(f: Callable[[int], int], F: FSequence, r: int, k: int) -> int:
    """Rising product ``f(r_F) f((r+1)_F) ... f((r+k-1)_F)``."""
    out = 1
    for j in range(r, r + k):
        out *= f(value(F, j))
    return out


def fnomial(F: FSequence, n: int, k: int) -> Fraction:
    if k < 0 or k > n:
        raise ValueError(f"degree exceeds index: k={k}, n={n}")
    return Fraction(f_factorial(F, n), f_factorial(F, k) * f_factorial(F, n - k))


def is_admissible(F: FSequence, up_to_n: int) -> tuple[bool, Optional[tuple[int, int]]]:
    """Brute-force integrality of every F-nomial with ``n <= up_to_n``.

    Returns ``(True, None)`` or ``(False, (n, k))`` with the least failing pair.
    """
    for n in range(up_to_n + 1):
        for k in range(n + 1):
            if fnomial(F, n, k).denominator != 1:
                return False, (n, k)
    return True, None
