"""Sign patterns as combinatorial objects.

A sign pattern is an m x n grid over {+, -, 0} standing for the class of all
real matrices with those entry signs.  This module provides condensation,
permutation/signature equivalence with explicit witnesses, the term rank
(= maximum rank of the class), sign nonsingularity, exact recognition of
minimum rank <= 2, and an aggregator combining every bound this package
knows how to compute.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import DomainError, PatternFormatError, ResourceExhausted

_CHAR_TO_INT = {"+": 1, "-": -1, "0": 0}
_INT_TO_CHAR = {1: "+", -1: "-", 0: "0"}


class SignPattern:
    """Immutable rectangular grid over {+, -, 0}, stored as -1/0/+1 ints."""

    __slots__ = ("entries", "m", "n")

    def __init__(self, rows: Iterable[Iterable]):
        grid = []
        for row in rows:
            converted = []
            for value in row:
                if isinstance(value, str):
                    if value not in _CHAR_TO_INT:
                        raise DomainError(f"invalid sign character {value!r}")
                    converted.append(_CHAR_TO_INT[value])
                else:
                    iv = int(value)
                    if iv not in (-1, 0, 1):
                        raise DomainError(f"invalid sign value {value!r}")
                    converted.append(iv)
            grid.append(tuple(converted))
        object.__setattr__(self, "entries", tuple(grid))
        object.__setattr__(self, "m", len(grid))
        widths = {len(r) for r in grid}
        if len(widths) > 1:
            raise DomainError("all rows of a sign pattern must have equal length")
        object.__setattr__(self, "n", widths.pop() if widths else 0)

    def __setattr__(self, name, value):
        raise AttributeError("SignPattern is immutable")

    @classmethod
    def zeros(cls, m: int, n: int) -> "SignPattern":
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def from_text(cls, text: str) -> "SignPattern":
        """Parse the .pat format: optional #-comment lines, then rows of
        +/-/0 characters with optional whitespace between them."""
        rows = []
        width = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            row = []
            for colno, ch in enumerate(raw, start=1):
                if ch.isspace():
                    continue
                if ch not in _CHAR_TO_INT:
                    raise PatternFormatError(
                        f"invalid character {ch!r} in pattern", line=lineno, column=colno
                    )
                row.append(_CHAR_TO_INT[ch])
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise PatternFormatError(
                    f"row has {len(row)} entries, expected {width}", line=lineno
                )
            rows.append(row)
        return cls(rows)

    def to_text(self) -> str:
        return "\n".join("".join(_INT_TO_CHAR[v] for v in row) for row in self.entries)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "SignPattern":
        if self.m == 0:
            return SignPattern([[] for _ in range(self.n)])
        return SignPattern(list(zip(*self.entries)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SignPattern":
        return SignPattern([[self.entries[i][j] for j in cols] for i in rows])

    def negate(self) -> "SignPattern":
        return SignPattern([[-v for v in row] for row in self.entries])

    def count_zeros(self) -> int:
        return sum(row.count(0) for row in self.entries)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def zero_set(self) -> frozenset:
        return frozenset(
            (i, j) for i, row in enumerate(self.entries) for j, v in enumerate(row) if v == 0
        )

    def to_array(self):
        import numpy as np

        return np.array(self.entries, dtype=np.int8).reshape(self.m, self.n)

    def __eq__(self, other):
        return isinstance(other, SignPattern) and self.entries == other.entries \
            and self.m == other.m and self.n == other.n

    def __hash__(self):
        return hash((self.m, self.n, self.entries))

    def __repr__(self):
        if self.m == 0 or self.n == 0:
            return f"SignPattern(<{self.m}x{self.n} empty>)"
        return "SignPattern(\n" + "\n".join("  " + "".join(_INT_TO_CHAR[v] for v in row) for row in self.entries) + "\n)"


@dataclass(frozen=True)
class DeletionEvent:
    """One line removed during condensation.  Indices refer to the original
    pattern; ``survivor`` is the earlier line it duplicated or opposed
    (None for zero lines)."""

    axis: str  # "row" or "col"
    kind: str  # "zero", "duplicate", "opposite"
    index: int
    survivor: Optional[int] = None


@dataclass(frozen=True)
class CondensationReport:
    condensed: SignPattern
    kept_rows: tuple
    kept_cols: tuple
    log: tuple


def condense(A: SignPattern) -> CondensationReport:
    """Delete zero lines and duplicate/opposite lines until stable.

    Scans rows top to bottom then columns left to right, always removing the
    lower of two matching rows and the righter of two matching columns, and
    repeats until a full sweep removes nothing.  The zero pattern condenses
    to the 0x0 empty pattern.
    """
    rows = list(range(A.m))
    cols = list(range(A.n))
    log = []

    def row_vec(i):
        return tuple(A.entries[i][j] for j in cols)

    def col_vec(j):
        return tuple(A.entries[i][j] for i in rows)

    changed = True
    while changed:
        changed = False
        kept = []
        for i in rows:
            v = row_vec(i)
            if all(x == 0 for x in v):
                log.append(DeletionEvent("row", "zero", i))
                changed = True
                continue
            dup = None
            for k in kept:
                w = row_vec(k)
                if w == v:
                    dup = DeletionEvent("row", "duplicate", i, k)
                    break
                if tuple(-x for x in w) == v:
                    dup = DeletionEvent("row", "opposite", i, k)
                    break
            if dup is not None:
                log.append(dup)
                changed = True
            else:
                kept.append(i)
        rows = kept

        kept = []
        for j in cols:
            v = col_vec(j)
            if all(x == 0 for x in v):
                log.append(DeletionEvent("col", "zero", j))
                changed = True
                continue
            dup = None
            for k in kept:
                w = col_vec(k)
                if w == v:
                    dup = DeletionEvent("col", "duplicate", j, k)
                    break
                if tuple(-x for x in w) == v:
                    dup = DeletionEvent("col", "opposite", j, k)
                    break
            if dup is not None:
                log.append(dup)
                changed = True
            else:
                kept.append(j)
        cols = kept

    if not rows or not cols:
        rows, cols = [], []
    condensed = SignPattern([[A.entries[i][j] for j in cols] for i in rows])
    return CondensationReport(condensed, tuple(rows), tuple(cols), tuple(log))


@dataclass(frozen=True)
class EquivalenceWitness:
    """Permutations and signatures carrying pattern A onto pattern B:
    ``apply(A)[i][j] = row_signs[i] * col_signs[j] * A[row_perm[i]][col_perm[j]]``.
    """

    row_perm: tuple
    col_perm: tuple
    row_signs: tuple
    col_signs: tuple

    def apply(self, A: SignPattern) -> SignPattern:
        return SignPattern(
            [
                [
                    self.row_signs[i] * self.col_signs[j] * A.entries[self.row_perm[i]][self.col_perm[j]]
                    for j in range(A.n)
                ]
                for i in range(A.m)
            ]
        )

    @classmethod
    def identity(cls, m: int, n: int) -> "EquivalenceWitness":
        return cls(tuple(range(m)), tuple(range(n)), (1,) * m, (1,) * n)


def _row_profile(P: SignPattern, i: int):
    zero_cols = frozenset(j for j, v in enumerate(P.entries[i]) if v == 0)
    co = sorted(
        len(zero_cols & frozenset(j for j, v in enumerate(P.entries[k]) if v == 0))
        for k in range(P.m)
        if k != i
    )
    return (len(zero_cols), tuple(co))


def is_equivalent(
    A: SignPattern, B: SignPattern, node_budget: int = 2_000_000
) -> Optional[EquivalenceWitness]:
    """Search for permutation sign patterns P1, P2 and signatures D1, D2 with
    B = P1 D1 A D2 P2; returns a witness or None.

    Backtracks over row assignments (B row -> A row with a sign), propagating
    column compatibility; the first assigned row's sign is pinned to + since
    the global flip of all row and column signs is invisible.  Intended for
    m, n <= 12; raises ResourceExhausted past ``node_budget`` search nodes.
    """
    if A.m != B.m or A.n != B.n:
        return None
    m, n = A.m, A.n
    if m == 0 or n == 0:
        return EquivalenceWitness(tuple(range(m)), tuple(range(n)), (1,) * m, (1,) * n)

    prof_a = [_row_profile(A, k) for k in range(m)]
    prof_b = [_row_profile(B, i) for i in range(m)]
    if sorted(prof_a) != sorted(prof_b):
        return None

    # comp[c][j]: 0 free, +1/-1 forced column sign, None dead
    comp = [[0] * n for _ in range(n)]
    nodes = 0

    # assign B rows in a most-discriminating order: rare profiles first
    from collections import Counter

    freq = Counter(prof_b)
    order = sorted(range(m), key=lambda i: (freq[prof_b[i]], prof_b[i], i))

    def columns_matchable() -> bool:
        # Kuhn's matching on live pairs; every B column needs a distinct A column
        match_to = [-1] * n

        def try_col(j, seen):
            for c in range(n):
                if comp[c][j] is not None and not seen[c]:
                    seen[c] = True
                    if match_to[c] == -1 or try_col(match_to[c], seen):
                        match_to[c] = j
                        return True
            return False

        for j in range(n):
            if not try_col(j, [False] * n):
                return False
        return True

    def column_assignment():
        match_to = [-1] * n

        def try_col(j, seen):
            for c in range(n):
                if comp[c][j] is not None and not seen[c]:
                    seen[c] = True
                    if match_to[c] == -1 or try_col(match_to[c], seen):
                        match_to[c] = j
                        return True
            return False

        for j in range(n):
            if not try_col(j, [False] * n):
                return None
        col_perm = [0] * n
        col_signs = [1] * n
        for c in range(n):
            j = match_to[c]
            col_perm[j] = c
            col_signs[j] = comp[c][j] if comp[c][j] != 0 else 1
        return tuple(col_perm), tuple(col_signs)

    used = [False] * m
    sigma = [0] * m  # sigma[b_row] = a_row
    eps = [1] * m

    def assign(pos: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceExhausted(
                f"equivalence search exceeded node budget {node_budget}"
            )
        if pos == m:
            return column_assignment() is not None
        i = order[pos]
        for k in range(m):
            if used[k] or prof_a[k] != prof_b[i]:
                continue
            for sign in ((1,) if pos == 0 else (1, -1)):
                updates = []
                dead = False
                for c in range(n):
                    ac = A.entries[k][c]
                    for j in range(n):
                        state = comp[c][j]
                        if state is None:
                            continue
                        bv = B.entries[i][j]
                        if ac == 0 and bv == 0:
                            continue
                        if ac == 0 or bv == 0:
                            updates.append((c, j, state))
                            comp[c][j] = None
                            continue
                        need = bv * sign * ac
                        if state == 0:
                            updates.append((c, j, state))
                            comp[c][j] = need
                        elif state != need:
                            updates.append((c, j, state))
                            comp[c][j] = None
                # prune: every B column still matchable
                if any(all(comp[c][j] is None for c in range(n)) for j in range(n)):
                    dead = True
                if not dead and not columns_matchable():
                    dead = True
                if not dead:
                    used[k] = True
                    sigma[i] = k
                    eps[i] = sign
                    if assign(pos + 1):
                        return True
                    used[k] = False
                for c, j, state in reversed(updates):
                    comp[c][j] = state
        return False

    if not assign(0):
        return None
    cols = column_assignment()
    col_perm, col_signs = cols
    return EquivalenceWitness(tuple(sigma), col_perm, tuple(eps), col_signs)


def term_rank(A: SignPattern) -> int:
    """Maximum number of nonzero entries no two in a row or column, which
    equals the maximum rank over the qualitative class (a standard fact of
    the field, taken as given here).  Kuhn's augmenting-path matching."""
    match_col = [-1] * A.n

    def augment(i, seen):
        for j in range(A.n):
            if A.entries[i][j] != 0 and not seen[j]:
                seen[j] = True
                if match_col[j] == -1 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    size = 0
    for i in range(A.m):
        if augment(i, [False] * A.n):
            size += 1
    return size


_SNS_CAP = 10


def is_sns(A: SignPattern, cap: int = _SNS_CAP) -> bool:
    """True iff the determinant expansion has at least one nonzero term and
    all nonzero terms share one sign (so every matrix in the class is
    nonsingular).  Enumerates nonzero-product permutations; n <= ``cap``."""
    if A.m != A.n:
        raise DomainError(f"sign nonsingularity needs a square pattern, got {A.m}x{A.n}")
    n = A.n
    if n == 0:
        raise DomainError("sign nonsingularity is undefined for the empty pattern")
    if n > cap:
        raise ResourceExhausted(f"is_sns capped at n <= {cap}, got {n}")
    if term_rank(A) < n:
        return False  # no nonzero term at all

    found_sign = 0
    used = [False] * n

    def walk(i, parity_sign):
        nonlocal found_sign
        if i == n:
            if found_sign == 0:
                found_sign = parity_sign
                return True
            return parity_sign == found_sign
        for j in range(n):
            if used[j] or A.entries[i][j] == 0:
                continue
            used[j] = True
            # row-order parity: count inversions incrementally via sign flips
            ok = walk(i + 1, parity_sign * A.entries[i][j] * _transposition_sign(used, j))
            used[j] = False
            if not ok:
                return False
        return True

    def _transposition_sign(used_flags, j):
        # parity contribution of placing column j at the current row: one
        # factor -1 per already-used column with larger index
        inversions = sum(1 for k in range(j + 1, n) if used_flags[k])
        return -1 if inversions % 2 else 1

    return walk(0, 1) and found_sign != 0


def max_sns_submatrix(A: SignPattern, cap: int = 4):
    """Largest k <= cap with a k x k sign-nonsingular submatrix, plus one
    witness (rows, cols).  Exponential in cap; intended for cap <= 8.
    Returns (0, (), ()) for the zero pattern."""
    best = (0, (), ())
    upper = min(cap, A.m, A.n, term_rank(A))
    for k in range(upper, 0, -1):
        for rows in itertools.combinations(range(A.m), k):
            for cols in itertools.combinations(range(A.n), k):
                sub = A.submatrix(rows, cols)
                if term_rank(sub) < k:
                    continue
                if is_sns(sub):
                    return (k, rows, cols)
        # nothing at size k; continue downward
    return best


def is_mr1(A: SignPattern) -> bool:
    """Minimum rank is exactly 1 iff the condensed pattern is 1x1 nonzero."""
    c = condense(A).condensed
    return c.m == 1 and c.n == 1


@dataclass(frozen=True)
class Mr2Result:
    value: bool
    witness: Optional[EquivalenceWitness]
    condensation: CondensationReport

    def __bool__(self):
        return self.value


_MR2_COLUMN_LIMIT = 24


def is_mr2(A: SignPattern, column_limit: int = _MR2_COLUMN_LIMIT) -> Mr2Result:
    """Decide whether the minimum rank is exactly 2.

    The condensed pattern must (i) have at least two rows and columns,
    (ii) carry at most one zero per row and per column, and (iii) admit
    signatures and permutations making every row and column nondecreasing
    (- entries before 0 before +).  Condition (iii) is searched by
    backtracking over row/column signatures with incremental acyclicity
    checks on the two precedence digraphs the signing induces.

    On success the witness transforms the condensed pattern into the
    nondecreasing arrangement.
    """
    report = condense(A)
    C = report.condensed
    if C.n > column_limit:
        raise ResourceExhausted(
            f"mr2 recognition limited to {column_limit} condensed columns, got {C.n}"
        )
    if C.m < 2 or C.n < 2:
        return Mr2Result(False, None, report)
    for i in range(C.m):
        if C.row(i).count(0) > 1:
            return Mr2Result(False, None, report)
    for j in range(C.n):
        if C.col(j).count(0) > 1:
            return Mr2Result(False, None, report)
    arrangement = _monotone_arrangement(C, allow_signs=True)
    if arrangement is None:
        return Mr2Result(False, None, report)
    return Mr2Result(True, arrangement, report)


def _acyclic_order(edges, size):
    """Deterministic topological order (min index first) or None on a cycle."""
    outs = [set() for _ in range(size)]
    indeg = [0] * size
    for a, b in edges:
        if b not in outs[a]:
            outs[a].add(b)
            indeg[b] += 1
    import heapq

    ready = [v for v in range(size) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in sorted(outs[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return order if len(order) == size else None


def _monotone_arrangement(C: SignPattern, allow_signs: bool, identity_only: bool = False):
    """Search signatures + permutations making all rows/columns nondecreasing.

    Returns an EquivalenceWitness (applying it to C yields the arranged
    pattern) or None.  With identity_only, only permutations are tried.
    """
    m, n = C.m, C.n
    E = C.entries

    def col_edges_for_row(i, d_i, c):
        edges = []
        for j in range(n):
            vj = d_i * c[j] * E[i][j]
            for k in range(j + 1, n):
                vk = d_i * c[k] * E[i][k]
                if vj < vk:
                    edges.append((j, k))
                elif vk < vj:
                    edges.append((k, j))
        return edges

    def row_edges(d, c):
        edges = []
        for j in range(n):
            for i in range(m):
                vi = d[i] * c[j] * E[i][j]
                for k in range(i + 1, m):
                    vk = d[k] * c[j] * E[k][j]
                    if vi < vk:
                        edges.append((i, k))
                    elif vk < vi:
                        edges.append((k, i))
        return edges

    def has_cycle(edges):
        return _acyclic_order(edges, n) is None

    def try_signing(c):
        # backtrack over row signs with incremental column-digraph pruning
        col_edge_stack = []

        def rec(i):
            if i == m:
                r_edges = row_edges(d, c)
                row_order = _acyclic_order(r_edges, m)
                if row_order is None:
                    return False
                col_order = _acyclic_order([e for lst in col_edge_stack for e in lst], n)
                if col_order is None:
                    return False
                result.append((tuple(d), tuple(c), tuple(row_order), tuple(col_order)))
                return True
            for d_i in ((1,) if identity_only else (1, -1)):
                d[i] = d_i
                new_edges = col_edges_for_row(i, d_i, c)
                col_edge_stack.append(new_edges)
                if not has_cycle([e for lst in col_edge_stack for e in lst]):
                    if rec(i + 1):
                        return True
                col_edge_stack.pop()
            return False

        d = [1] * m
        result = []
        if rec(0):
            return result[0]
        return None

    if identity_only or not allow_signs:
        sign_space = iter([(1,) * n])
    else:
        # global flip of all row and column signs is invisible: pin c[0] = +
        sign_space = ((1,) + rest for rest in itertools.product((1, -1), repeat=n - 1))
    for c in sign_space:
        found = try_signing(c)
        if found is not None:
            d, c_signs, row_order, col_order = found
            return EquivalenceWitness(
                row_perm=row_order,
                col_perm=col_order,
                row_signs=tuple(d[i] for i in row_order),
                col_signs=tuple(c_signs[j] for j in col_order),
            )
    return None


@dataclass
class MrBoundsOptions:
    sns_cap: int = 4
    try_rank: Optional[int] = None
    seed: int = 0
    restarts: int = 64
    iters: int = 5000
    threads: int = 1


@dataclass(frozen=True)
class MrBounds:
    lower: int
    upper: int
    evidence: tuple


def mr_bounds(A: SignPattern, options: Optional[MrBoundsOptions] = None) -> MrBounds:
    """Best lower and upper bounds on the minimum rank from every available
    test.  ``evidence`` is a tuple of (kind, value, description) records,
    kind in {"lower", "upper", "exact", "note"}, one per test that ran."""
    opts = options or MrBoundsOptions()
    if A.is_zero():
        return MrBounds(0, 0, (("exact", 0, "zero pattern"),))

    report = condense(A)
    C = report.condensed
    evidence = [
        ("lower", 1, "nonzero pattern"),
        ("upper", min(C.m, C.n), f"condensed size min({C.m},{C.n})"),
    ]

    tr = term_rank(C)
    evidence.append(("upper", tr, f"term rank {tr}"))

    if is_mr1(A):
        evidence.append(("exact", 1, "condensed pattern is 1x1"))
        return MrBounds(1, 1, tuple(evidence))

    mr2 = is_mr2(A)
    if mr2.value:
        evidence.append(("exact", 2, "nondecreasing arrangement exists"))
        return MrBounds(2, 2, tuple(evidence))
    evidence.append(("lower", 3, "mr = 1 and mr = 2 excluded exactly"))

    k, rows, cols = max_sns_submatrix(C, cap=opts.sns_cap)
    if k:
        evidence.append(
            (
                "lower",
                k,
                f"SNS {k}x{k} at rows "
                f"{','.join(str(report.kept_rows[i] + 1) for i in rows)} / cols "
                f"{','.join(str(report.kept_cols[j] + 1) for j in cols)}",
            )
        )

    lower = max(v for kind, v, _ in evidence if kind == "lower")
    upper = min(v for kind, v, _ in evidence if kind == "upper")

    if opts.try_rank is not None and opts.try_rank < upper:
        from . import realize

        params = realize.SearchParams(
            seed=opts.seed, restarts=opts.restarts, iters=opts.iters, threads=opts.threads
        )
        found = realize.search_realization(C, opts.try_rank, params)
        if found is not None:
            evidence.append(("upper", found.r, f"numerical realization at rank {found.r}"))
            upper = min(upper, found.r)
        else:
            evidence.append(
                ("note", None, f"no rank-{opts.try_rank} realization found (inconclusive)")
            )

    return MrBounds(lower, upper, tuple(evidence))


def load_pattern(path) -> SignPattern:
    with open(path, "r", encoding="utf-8") as fh:
        return SignPattern.from_text(fh.read())


def save_pattern(A: SignPattern, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(A.to_text() + "\n")
