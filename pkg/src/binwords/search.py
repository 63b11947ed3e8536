"""Backtracking search for words avoiding m-binomial p-powers.

The search walks the k-ary tree of words depth first, trying letters in
increasing order, and prunes a branch as soon as an (m, p)-power ends at
the freshly appended letter.  That suffix-anchored test is sound and
complete: a word contains a power iff some prefix contains one ending at
its own last position.  Signatures are maintained incrementally by one
PrefixIndex that grows and shrinks with the search word, so each pruning
test costs O(length / p) block comparisons with O(1) work per component.

`longest_avoiding` stops at the first word reaching the cap (the tree is
alive) or exhausts the tree (exact maximal length); `count_avoiding`
explores everything to a fixed depth and tabulates survivors per length.
Both are deterministic; optional budgets abort at deterministic points.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import BinwordsError, BudgetExceededError, InvalidInputError
from .words import (
    Alphabet,
    DEFAULT_MAX_ORDER,
    PrefixIndex,
    Word,
    _check_order,
)
from .detect import is_power_free

ProgressFn = Callable[[int, int, int], None]  # depth, nodes, survivors at depth


@dataclass(frozen=True)
class SearchCertificate:
    """Reproducible outcome of one avoidance search.

    outcome is "maximal" (tree exhausted; max_length is exact and every
    longer word contains a power), "cap_reached" (a witness of length cap
    survives, so the tree is alive), or "budget_abort" (partial results).
    counts[d-1] survivors of length d were seen before the search stopped;
    counts_complete marks whether the whole tree was explored.
    """

    alphabet_size: int
    order: int
    power: int
    outcome: str
    max_length: int
    witness: Word
    cap: int
    counts: tuple[int, ...]
    counts_complete: bool
    symmetry_reduced: bool
    nodes: int

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "k": self.alphabet_size,
            "m": self.order,
            "p": self.power,
            "outcome": self.outcome,
            "max_length": self.max_length,
            "witness": str(self.witness),
            "cap": self.cap,
            "counts": list(self.counts),
            "counts_complete": self.counts_complete,
            "symmetry_reduced": self.symmetry_reduced,
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class CountTable:
    """Exact survivor counts per length from a full bounded exploration."""

    alphabet_size: int
    order: int
    power: int
    n_max: int
    counts: tuple[int, ...]
    symmetry_reduced: bool
    nodes: int

    def to_tsv(self) -> str:
        lines = [
            f"# schema=1 k={self.alphabet_size} m={self.order} p={self.power}"
            f" n_max={self.n_max} symmetry_reduced={int(self.symmetry_reduced)}"
            f" nodes={self.nodes}",
            "length\tcount",
        ]
        for d, c in enumerate(self.counts, start=1):
            lines.append(f"{d}\t{c}")
        return "\n".join(lines) + "\n"


def _power_ends_at_last(idx: PrefixIndex, p: int) -> bool:
    n = len(idx)
    for block in range(1, n // p + 1):
        if idx.blocks_equivalent(n - p * block, block, p):
            return True
    return False


@dataclass
class _DfsResult:
    best_len: int
    best_word: tuple[int, ...]
    cap_word: Optional[tuple[int, ...]]
    counts: list[int]
    nodes: int
    aborted: bool


def _dfs(
    k: int,
    m: int,
    p: int,
    depth_cap: int,
    *,
    stop_at_cap: bool,
    symmetry: bool,
    node_budget: Optional[int],
    budget_ms: Optional[int],
    progress: Optional[ProgressFn],
    max_order: int,
) -> _DfsResult:
    _check_order(m, max_order)
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise InvalidInputError(f"power must be an int >= 2, got {p!r}")
    if depth_cap < 1:
        raise InvalidInputError(f"search depth cap must be >= 1, got {depth_cap}")
    alph = Alphabet(k)
    idx = PrefixIndex(Word((), alph), m, max_order=max_order)
    if budget_ms is not None and budget_ms <= 0:
        raise BudgetExceededError("budget of 0 ms leaves no time to search")
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    counts = [0] * depth_cap
    nodes = 0
    best_len = 0
    best_word: tuple[int, ...] = ()
    cap_word: Optional[tuple[int, ...]] = None
    aborted = False
    # stack[-1] is the next letter to try at the current depth; the search
    # word always has len(stack) - 1 letters
    stack = [0]
    while stack:
        a = stack[-1]
        limit = 1 if (symmetry and len(stack) == 1) else k
        if a >= limit:
            stack.pop()
            if stack:
                idx._pop()
                stack[-1] += 1
            continue
        if node_budget is not None and nodes >= node_budget:
            aborted = True
            break
        nodes += 1
        if deadline is not None and not nodes & 1023 and time.monotonic() > deadline:
            aborted = True
            break
        idx._push(a)
        if _power_ends_at_last(idx, p):
            idx._pop()
            stack[-1] += 1
            continue
        d = len(idx)
        counts[d - 1] += 1
        if d > best_len:
            best_len = d
            best_word = tuple(idx._letters)
            if progress is not None:
                progress(d, nodes, counts[d - 1])
        if d == depth_cap:
            if stop_at_cap:
                cap_word = tuple(idx._letters)
                break
            idx._pop()
            stack[-1] += 1
            continue
        stack.append(0)
    return _DfsResult(best_len, best_word, cap_word, counts, nodes, aborted)


def _verified_witness(letters: tuple[int, ...], k: int, m: int, p: int, max_order: int) -> Word:
    w = Word(letters, Alphabet(k))
    if not is_power_free(w, m, p, max_order=max_order):
        raise BinwordsError(f"internal error: search witness {w} fails the detector")
    return w


def longest_avoiding(
    k: int,
    m: int,
    p: int,
    cap: int,
    *,
    symmetry: bool = False,
    node_budget: Optional[int] = None,
    budget_ms: Optional[int] = None,
    progress: Optional[ProgressFn] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> SearchCertificate:
    """Search for the longest (m, p)-power-free word over k letters, up to cap.

    Exhausting the tree proves the returned max_length exact: every word
    one letter longer contains a power.  Reaching the cap only certifies
    the tree is alive there; the witness is the lexicographically least
    survivor of that length.  Witnesses are re-verified by the detector.
    """
    res = _dfs(
        k,
        m,
        p,
        cap,
        stop_at_cap=True,
        symmetry=symmetry,
        node_budget=node_budget,
        budget_ms=budget_ms,
        progress=progress,
        max_order=max_order,
    )
    if res.aborted:
        outcome = "budget_abort"
        length, letters = res.best_len, res.best_word
    elif res.cap_word is not None:
        outcome = "cap_reached"
        length, letters = cap, res.cap_word
    else:
        outcome = "maximal"
        length, letters = res.best_len, res.best_word
    witness = _verified_witness(letters, k, m, p, max_order)
    counts = list(res.counts)
    while counts and counts[-1] == 0:
        counts.pop()  # lengths past the deepest survivor: zero for a maximal
        # outcome, never explored otherwise; either way content-free
    return SearchCertificate(
        alphabet_size=k,
        order=m,
        power=p,
        outcome=outcome,
        max_length=length,
        witness=witness,
        cap=cap,
        counts=tuple(counts),
        counts_complete=(outcome == "maximal"),
        symmetry_reduced=symmetry,
        nodes=res.nodes,
    )


def count_avoiding(
    k: int,
    m: int,
    p: int,
    n_max: int,
    *,
    symmetry: bool = False,
    node_budget: Optional[int] = None,
    budget_ms: Optional[int] = None,
    progress: Optional[ProgressFn] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> CountTable:
    """Exact counts of (m, p)-power-free words of each length 1..n_max.

    Explores the full pruned tree; a budget overrun raises rather than
    returning a silently short table.
    """
    res = _dfs(
        k,
        m,
        p,
        n_max,
        stop_at_cap=False,
        symmetry=symmetry,
        node_budget=node_budget,
        budget_ms=budget_ms,
        progress=progress,
        max_order=max_order,
    )
    if res.aborted:
        raise BudgetExceededError(
            f"count_avoiding budget ran out after {res.nodes} nodes"
        )
    return CountTable(
        alphabet_size=k,
        order=m,
        power=p,
        n_max=n_max,
        counts=tuple(res.counts),
        symmetry_reduced=symmetry,
        nodes=res.nodes,
    )
