"""Detection of m-binomial p-powers in finite words and fixed-point prefixes.

An (m, p)-power occurrence is p consecutive blocks of one positive length
whose blocks are pairwise m-binomially equivalent (p = 2 squares, p = 3
cubes).  Ordinary powers are the special case of equal blocks, and the
m = 1 case is abelian powers; one code path covers all of them.

`find_power` reports the occurrence with minimal start, ties broken by
minimal period, scanning candidates in that order.  Two engines share the
semantics: a pure Python scan over PrefixIndex factor signatures, and a
numpy scan (orders 1 and 2) that vectorizes each period over all starts.
Results are cross-verified by independent signature recomputation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import (
    BinwordsError,
    BudgetExceededError,
    CountOverflowError,
    InvalidInputError,
)
from .morphisms import Morphism, fixed_point_prefix
from .words import (
    Alphabet,
    DEFAULT_MAX_ORDER,
    PrefixIndex,
    Word,
    WordLike,
    _check_order,
    signature,
    word,
)

_VECTOR_MIN_LEN = 64
_VECTOR_MAX_LEN = 2**31  # keeps order-2 cumulative counts far below int64 overflow


@dataclass(frozen=True)
class Occurrence:
    """One m-binomial p-power: blocks word[start + i*period : start + (i+1)*period]."""

    start: int
    period: int
    power: int
    order: int

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "period": self.period,
            "power": self.power,
            "m": self.order,
        }


@dataclass(frozen=True)
class ScanReport:
    """Outcome of one detection run, with the examined-candidate counter."""

    word_len: int
    order: int
    power: int
    occurrence: Optional[Occurrence]
    candidates: int
    elapsed_s: float

    @property
    def found(self) -> bool:
        return self.occurrence is not None

    def to_dict(self, include_timing: bool = False) -> dict:
        out: dict = {
            "schema": 1,
            "word_len": self.word_len,
            "m": self.order,
            "p": self.power,
            "found": self.occurrence is not None,
        }
        if self.occurrence is not None:
            out["start"] = self.occurrence.start
            out["period"] = self.occurrence.period
        out["candidates"] = self.candidates
        if include_timing:
            out["elapsed_s"] = round(self.elapsed_s, 6)
        return out


def _deadline_from(budget_ms: Optional[int]) -> Optional[float]:
    if budget_ms is None:
        return None
    if budget_ms <= 0:
        raise BudgetExceededError("budget of 0 ms leaves no time to scan")
    return time.monotonic() + budget_ms / 1000.0


def _check_deadline(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceededError("detection wall-clock budget exhausted")


def _find_python(
    wd: Word, m: int, p: int, deadline: Optional[float], max_order: int
) -> tuple[Optional[Occurrence], int]:
    idx = PrefixIndex(wd, m, max_order=max_order)
    n = len(wd)
    checked = 0
    for s in range(n):
        for t in range(1, (n - s) // p + 1):
            checked += 1
            if not checked & 1023:
                _check_deadline(deadline)
            if idx.blocks_equivalent(s, t, p):
                return Occurrence(s, t, p, m), checked
    return None, checked


def _cumulative_columns(letters: np.ndarray, k: int, m: int) -> list[np.ndarray]:
    """Columns cum[c][i] = count(prefix of length i, pattern c), canonical order."""
    n = letters.shape[0]
    cums = []
    for a in range(k):
        col = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(letters == a, out=col[1:])
        cums.append(col)
    if m == 2:
        for a in range(k):
            for b in range(k):
                col = np.zeros(n + 1, dtype=np.int64)
                np.cumsum(cums[a][:n] * (letters == b), out=col[1:])
                cums.append(col)
    return cums


def _find_vector(
    wd: Word, m: int, p: int, deadline: Optional[float]
) -> tuple[Optional[Occurrence], int]:
    """Period-major scan: for each period, test every start with slice arithmetic.

    The winner under (start, period) lexicographic order is maintained
    across periods; only strictly smaller starts can improve it, so the
    scanned start range shrinks as hits accumulate.
    """
    n = len(wd)
    k = wd.alphabet.size
    letters = np.asarray(wd.letters, dtype=np.int64)
    cums = _cumulative_columns(letters, k, m)
    best: Optional[tuple[int, int]] = None
    candidates = 0
    for t in range(1, n // p + 1):
        _check_deadline(deadline)
        smax = n - p * t + 1
        if best is not None:
            smax = min(smax, best[0])
        if smax <= 0:
            break
        candidates += smax
        valid: Optional[np.ndarray] = None
        for a in range(k):
            col = cums[a]
            base = col[t : t + smax] - col[:smax]
            for j in range(1, p):
                d = col[(j + 1) * t : (j + 1) * t + smax] - col[j * t : j * t + smax]
                eq = d == base
                valid = eq if valid is None else (valid & eq)
            if valid is not None and not valid.any():
                break
        assert valid is not None
        if m == 2 and valid.any():
            idx = k
            for a in range(k):
                cola = cums[a]
                for b in range(k):
                    colab = cums[idx]
                    colb = cums[b]
                    idx += 1
                    base = (
                        colab[t : t + smax]
                        - colab[:smax]
                        - cola[:smax] * (colb[t : t + smax] - colb[:smax])
                    )
                    for j in range(1, p):
                        lo = j * t
                        hi = (j + 1) * t
                        d = (
                            colab[hi : hi + smax]
                            - colab[lo : lo + smax]
                            - cola[lo : lo + smax]
                            * (colb[hi : hi + smax] - colb[lo : lo + smax])
                        )
                        valid &= d == base
                    if not valid.any():
                        break
                else:
                    continue
                break
        hits = np.flatnonzero(valid)
        if hits.size:
            s0 = int(hits[0])
            if best is None or s0 < best[0]:
                best = (s0, t)
                if s0 == 0:
                    break
    if best is None:
        return None, candidates
    return Occurrence(best[0], best[1], p, m), candidates


def _verify_occurrence(wd: Word, occ: Occurrence, max_order: int) -> None:
    # independent recomputation guards both engines
    sigs = [
        signature(
            wd[occ.start + j * occ.period : occ.start + (j + 1) * occ.period],
            occ.order,
            max_order=max_order,
        ).counts
        for j in range(occ.power)
    ]
    if any(s != sigs[0] for s in sigs[1:]):
        raise BinwordsError(
            f"internal error: reported occurrence {occ} fails recomputation"
        )


def find_power(
    w: WordLike,
    m: int,
    p: int,
    *,
    alphabet: Union[Alphabet, int, None] = None,
    engine: str = "auto",
    budget_ms: Optional[int] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> Optional[Occurrence]:
    """The (m, p)-power occurrence minimal by start, then by period; None if free."""
    occ, _ = _find_power_counted(
        w, m, p, alphabet=alphabet, engine=engine, budget_ms=budget_ms, max_order=max_order
    )
    return occ


def _find_power_counted(
    w: WordLike,
    m: int,
    p: int,
    *,
    alphabet: Union[Alphabet, int, None] = None,
    engine: str = "auto",
    budget_ms: Optional[int] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> tuple[Optional[Occurrence], int]:
    _check_order(m, max_order)
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise InvalidInputError(f"power must be an int >= 2, got {p!r}")
    wd = word(w, alphabet)
    n = len(wd)
    if engine not in ("auto", "python", "vector"):
        raise InvalidInputError(f"unknown engine {engine!r}")
    if engine == "vector":
        if m > 2:
            raise InvalidInputError("the vector engine supports orders 1 and 2 only")
        if n >= _VECTOR_MAX_LEN:
            raise CountOverflowError(
                "word too long for the fixed-width vector engine"
            )
    if engine == "auto":
        engine = "vector" if (m <= 2 and _VECTOR_MIN_LEN <= n < _VECTOR_MAX_LEN) else "python"
    deadline = _deadline_from(budget_ms)
    if engine == "vector":
        occ, candidates = _find_vector(wd, m, p, deadline)
    else:
        occ, candidates = _find_python(wd, m, p, deadline, max_order)
    if occ is not None:
        _verify_occurrence(wd, occ, max_order)
    return occ, candidates


def is_power_free(
    w: WordLike,
    m: int,
    p: int,
    *,
    alphabet: Union[Alphabet, int, None] = None,
    engine: str = "auto",
    budget_ms: Optional[int] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> bool:
    """True iff w contains no m-binomial p-power."""
    return (
        find_power(
            w,
            m,
            p,
            alphabet=alphabet,
            engine=engine,
            budget_ms=budget_ms,
            max_order=max_order,
        )
        is None
    )


def scan_word(
    w: WordLike,
    m: int,
    p: int,
    *,
    alphabet: Union[Alphabet, int, None] = None,
    engine: str = "auto",
    budget_ms: Optional[int] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> ScanReport:
    """find_power wrapped in a timed, counter-carrying report."""
    wd = word(w, alphabet)
    t0 = time.perf_counter()
    occ, candidates = _find_power_counted(
        wd, m, p, engine=engine, budget_ms=budget_ms, max_order=max_order
    )
    return ScanReport(len(wd), m, p, occ, candidates, time.perf_counter() - t0)


def scan_fixed_point(
    f: Morphism,
    a: int,
    n: int,
    m: int,
    p: int,
    *,
    engine: str = "auto",
    budget_ms: Optional[int] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> ScanReport:
    """Generate the length-n fixed-point prefix of f at a, then scan it."""
    prefix = fixed_point_prefix(f, a, n)
    return scan_word(
        prefix, m, p, engine=engine, budget_ms=budget_ms, max_order=max_order
    )
