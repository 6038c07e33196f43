"""Exact-cover backtracking over splitter sets.

The ground set is Z_q minus 0; choosing splitter s covers the block
{m*s mod q : m in M}.  The search always branches on the smallest uncovered
residue e, trying exactly the splitters whose block would cover e with no
overlap.  Exhausting that branching is a proof that no splitting exists for
the given (q, M).

Budgets are node counts first (one node per candidate placement attempt),
which keeps Exhausted/TimedOut outcomes reproducible; wall-clock budgets are
advisory on top.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

from .splitting import MultiplierSet, verify_cover

__all__ = [
    "DEFAULT_NODE_BUDGET",
    "CountOutcome",
    "SearchOutcome",
    "SearchStatus",
    "count_splittings",
    "find_splitting",
]

DEFAULT_NODE_BUDGET = 5_000_000


class SearchStatus(Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    TIMED_OUT = "timed_out"


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    splitters: tuple[int, ...] | None
    nodes: int
    elapsed_s: float
    diagnostic: str | None = None


@dataclass(frozen=True)
class CountOutcome:
    """Exact number of splitter sets when complete; a partial count (budget
    ran out) is flagged complete=False and must not be used."""

    count: int
    complete: bool
    nodes: int
    elapsed_s: float
    diagnostic: str | None = None


def _residues(q: int, multipliers: MultiplierSet) -> tuple[int, ...]:
    if multipliers.q != q:
        raise ValueError(f"multiplier set was built for q={multipliers.q}, search got q={q}")
    return multipliers.residues


def _candidate_table(q: int, residues: tuple[int, ...], descending: bool) -> list[list[int]]:
    # table[e] lists every s whose block contains e, ascending in s.
    table: list[list[int]] = [[] for _ in range(q)]
    for s in range(1, q):
        hit = set()
        for m in residues:
            e = m * s % q
            if e and e not in hit:
                hit.add(e)
                table[e].append(s)
    if descending:
        for lst in table:
            lst.reverse()
    return table


def _explore(q, residues, node_budget, time_budget_s, descending, stop_at_first):
    start = time.perf_counter()
    target = q - 1
    block = len(residues)
    table = _candidate_table(q, residues, descending)
    covered = bytearray(q)
    covered[0] = 1
    chosen: list[int] = []
    placements: list[list[int]] = []
    nodes = 0
    count = 0
    first: tuple[int, ...] | None = None
    closed = True
    note = None

    # frame: [candidate list, next index, smallest uncovered residue at entry]
    frames: list[list] = [[table[1], 0, 1]]
    while frames:
        frame = frames[-1]
        cands = frame[0]
        descended = False
        aborted = False
        while frame[1] < len(cands):
            s = cands[frame[1]]
            frame[1] += 1
            nodes += 1
            if nodes > node_budget:
                note = f"node budget of {node_budget} exhausted"
                aborted = True
                break
            if (
                time_budget_s is not None
                and nodes % 1024 == 0
                and time.perf_counter() - start > time_budget_s
            ):
                note = f"time budget of {time_budget_s}s exhausted"
                aborted = True
                break
            marked: list[int] = []
            feasible = True
            for m in residues:
                p = m * s % q
                if p == 0 or covered[p]:
                    feasible = False
                    break
                covered[p] = 1
                marked.append(p)
            if not feasible:
                for p in marked:
                    covered[p] = 0
                continue
            if (len(chosen) + 1) * block == target:
                count += 1
                if stop_at_first:
                    first = tuple(sorted(chosen + [s]))
                for p in marked:
                    covered[p] = 0
                if first is not None:
                    break
                continue
            chosen.append(s)
            placements.append(marked)
            e = frame[2] + 1
            while covered[e]:
                e += 1
            frames.append([table[e], 0, e])
            descended = True
            break
        if first is not None:
            break
        if aborted:
            closed = False
            break
        if descended:
            continue
        frames.pop()
        if frames:
            chosen.pop()
            for p in placements.pop():
                covered[p] = 0
    elapsed = time.perf_counter() - start
    return first, count, closed, nodes, elapsed, note


def _check_order(candidate_order: str) -> bool:
    if candidate_order not in ("ascending", "descending"):
        raise ValueError(f"candidate_order must be 'ascending' or 'descending', got {candidate_order!r}")
    return candidate_order == "descending"


def find_splitting(
    q: int,
    multipliers: MultiplierSet,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget_s: float | None = None,
    candidate_order: str = "ascending",
) -> SearchOutcome:
    """Search for a splitter set S with M*S covering Z_q minus 0 exactly.

    FOUND carries a splitter tuple that has already passed verify_cover;
    EXHAUSTED means the whole tree was closed and is a proof that no
    splitting exists for this (q, M); TIMED_OUT reports a spent budget.
    Identical arguments (including node budget) give identical outcomes.
    """
    residues = _residues(q, multipliers)
    descending = _check_order(candidate_order)
    k = len(residues)
    if (q - 1) % k != 0:
        return SearchOutcome(
            SearchStatus.EXHAUSTED, None, 0, 0.0,
            f"|M| = {k} does not divide q - 1 = {q - 1}",
        )
    first, _count, closed, nodes, elapsed, note = _explore(
        q, residues, node_budget, time_budget_s, descending, stop_at_first=True
    )
    if first is not None:
        check = verify_cover(q, residues, first)
        if not check:
            raise AssertionError(f"search produced an invalid splitting: {check.reason}")
        return SearchOutcome(SearchStatus.FOUND, first, nodes, elapsed)
    if closed:
        return SearchOutcome(SearchStatus.EXHAUSTED, None, nodes, elapsed)
    return SearchOutcome(SearchStatus.TIMED_OUT, None, nodes, elapsed, note)


def count_splittings(
    q: int,
    multipliers: MultiplierSet,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget_s: float | None = None,
    candidate_order: str = "ascending",
) -> CountOutcome:
    """Count all splitter sets for (q, M) by exhausting the search tree.

    Each set is counted once (branching on the smallest uncovered residue
    makes the branch path a function of the set itself).  Intended for small
    q; budgets cap runaway inputs.
    """
    residues = _residues(q, multipliers)
    descending = _check_order(candidate_order)
    k = len(residues)
    if (q - 1) % k != 0:
        return CountOutcome(0, True, 0, 0.0, f"|M| = {k} does not divide q - 1 = {q - 1}")
    _first, count, closed, nodes, elapsed, note = _explore(
        q, residues, node_budget, time_budget_s, descending, stop_at_first=False
    )
    return CountOutcome(count, closed, nodes, elapsed, note)
