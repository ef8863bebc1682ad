"""Finitely presented groups: coset enumeration, Reidemeister-Schreier, abelian invariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .moebius import GroupWord


class EnumerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[GroupWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple(r if isinstance(r, GroupWord) else GroupWord(r) for r in self.relators)
        for r in rels:
            if not len(r):
                raise ValueError("relators must be nonempty after free reduction")
            if any(not 0 <= i < len(self.generators) for i, _ in r):
                raise ValueError(f"relator {r} uses an unknown generator")
        object.__setattr__(self, "relators", rels)

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    @classmethod
    def from_strings(cls, generators: Sequence[str], relators: Iterable[str]) -> Presentation:
        gens = tuple(generators)
        return cls(gens, tuple(GroupWord.parse(r, gens) for r in relators))

    @classmethod
    def parse(cls, text: str) -> Presentation:
        """First line: generator names; each further nonblank line: one relator."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty presentation")
        gens = lines[0].replace(",", " ").split()
        return cls.from_strings(gens, lines[1:])

    def word(self, text: str) -> GroupWord:
        return GroupWord.parse(text, self.generators)

    def with_relators(self, extra: Iterable[GroupWord]) -> Presentation:
        return Presentation(self.generators, self.relators + tuple(extra))

    def format(self) -> str:
        return "\n".join([" ".join(self.generators)] + [r.format(self.generators) for r in self.relators])


def picard_presentation() -> Presentation:
    """PSL(2, Z[i]) on generators a (alpha), l, t, u."""
    return Presentation.from_strings(
        "altu",
        ["a^2", "l^2", "(a*l)^2", "(t*l)^2", "(u*l)^2", "(a*t)^3", "(u*a*l)^3", "t*u*t^-1*u^-1"],
    )


def coxeter_presentation() -> Presentation:
    """Reflection group of the tetrahedron with linear diagram a-3-b-4-c-4-d."""
    return Presentation.from_strings(
        "abcd",
        ["a^2", "b^2", "c^2", "d^2", "(a*b)^3", "(b*c)^4", "(c*d)^4",
         "(a*c)^2", "(a*d)^2", "(b*d)^2"],
    )


def _cols(w: GroupWord) -> list[int]:
    return [2 * i + (0 if e == 1 else 1) for i, e in w]


@dataclass(frozen=True)
class CosetTable:
    """Complete standardized coset table. Column 2k is generator k, 2k+1 its inverse."""

    rows: tuple[tuple[int, ...], ...]
    generator_count: int

    @property
    def index(self) -> int:
        return len(self.rows)

    def act(self, coset: int, w: GroupWord) -> int:
        for col in _cols(w):
            coset = self.rows[coset][col]
        return coset

    def permutation(self, gen: int) -> tuple[int, ...]:
        return tuple(row[2 * gen] for row in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


class _Enumerator:
    def __init__(self, p: Presentation, subgroup: Sequence[GroupWord], cap: int):
        self.ncol = 2 * p.generator_count
        self.relators = [_cols(r) for r in p.relators]
        self.subgroup = [_cols(w) for w in subgroup if len(w)]
        self.cap = cap
        self.table: list[list[int]] = [[-1] * self.ncol]
        self.parent = [0]
        self.live = 1
        self.deductions: list[tuple[int, int]] = []

    # -- bookkeeping -------------------------------------------------

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        n = len(self.table)
        self.table.append([-1] * self.ncol)
        self.parent.append(n)
        self.live += 1
        self.table[c][x] = n
        self.table[n][x ^ 1] = c
        self.deductions.append((c, x))

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k != l:
            k, l = min(k, l), max(k, l)
            self.parent[l] = k
            self.live -= 1
            queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = self.table[e]
            for x in range(self.ncol):
                f = row[x]
                if f < 0:
                    continue
                self.table[f][x ^ 1] = -1
                mu, nu = self.rep(e), self.rep(f)
                if self.table[mu][x] >= 0:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][x ^ 1] >= 0:
                    self._merge(mu, self.table[nu][x ^ 1], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][x ^ 1] = mu
                    self.deductions.append((mu, x))

    def scan(self, a: int, w: list[int], fill: bool) -> bool:
        """Trace w from coset a; with ``fill`` define cosets to close it.

        Returns True if the table changed (deduction or coincidence).
        """
        t = self.table
        j = len(w) - 1
        f, i, b = a, 0, a
        while True:
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                    return True
                return False
            while j >= i and t[b][w[j] ^ 1] >= 0:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return True
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return True
            if not fill:
                return False
            self.define(f, w[i])

    def full_pass(self) -> bool:
        """Scan every relator at every live coset without defining."""
        changed = False
        c = 0
        while c < len(self.table):
            if self.alive(c):
                for r in self.relators:
                    if self.scan(c, r, fill=False):
                        changed = True
                    if not self.alive(c):
                        break
            c += 1
        return changed

    def check_cap(self) -> None:
        if self.live >= self.cap:
            # lookahead before giving up
            while self.full_pass():
                pass
            if self.live >= self.cap:
                raise EnumerationError(
                    f"enumeration did not complete within {self.cap} cosets")

    def subgroup_scans(self) -> None:
        for w in self.subgroup:
            self.scan(self.rep(0), w, fill=True)

    def finish(self) -> CosetTable:
        while True:
            while self.full_pass():
                pass
            gap = self._first_gap()
            if gap is None:
                break
            self.define(*gap)
        return self.standardize()

    def _first_gap(self) -> tuple[int, int] | None:
        for c, row in enumerate(self.table):
            if self.alive(c):
                for x in range(self.ncol):
                    if row[x] < 0:
                        return c, x
        return None

    def standardize(self) -> CosetTable:
        start = self.rep(0)
        order = {start: 0}
        queue = [start]
        k = 0
        while k < len(queue):
            c = queue[k]
            k += 1
            for x in range(self.ncol):
                d = self.rep(self.table[c][x])
                if d not in order:
                    order[d] = len(queue)
                    queue.append(d)
        rows = tuple(tuple(order[self.rep(self.table[c][x])] for x in range(self.ncol)) for c in queue)
        return CosetTable(rows, self.ncol // 2)

    # -- strategies --------------------------------------------------

    def run_hlt(self) -> CosetTable:
        self.subgroup_scans()
        a = 0
        while a < len(self.table):
            if self.alive(a):
                self.check_cap()
                for r in self.relators:
                    self.scan(a, r, fill=True)
                    if not self.alive(a):
                        break
                if self.alive(a):
                    for x in range(self.ncol):
                        if self.table[a][x] < 0:
                            self.define(a, x)
            a += 1
        return self.finish()

    def run_felsch(self) -> CosetTable:
        conjugates: dict[int, list[list[int]]] = {x: [] for x in range(self.ncol)}
        seen = set()
        for r in self.relators:
            for w in (r, [x ^ 1 for x in reversed(r)]):
                for k in range(len(w)):
                    cw = w[k:] + w[:k]
                    if tuple(cw) not in seen:
                        seen.add(tuple(cw))
                        conjugates[cw[0]].append(cw)
        self.subgroup_scans()
        while True:
            self._process_deductions(conjugates)
            self.check_cap()
            gap = self._first_gap()
            if gap is None:
                break
            self.define(*gap)
        return self.finish()

    def _process_deductions(self, conjugates) -> None:
        while self.deductions:
            c, x = self.deductions.pop()
            if not self.alive(c):
                continue
            for w in conjugates[x]:
                self.scan(c, w, fill=False)
                if not self.alive(c):
                    break
            d = self.table[c][x] if self.alive(c) else -1
            if d >= 0 and self.alive(d):
                for w in conjugates[x ^ 1]:
                    self.scan(d, w, fill=False)
                    if not self.alive(d):
                        break


STRATEGIES = ("hlt", "felsch")


def coset_enumerate(p: Presentation, subgroup_words: Sequence[GroupWord] = (),
                    cap: int = 1_000_000, strategy: str = "hlt") -> CosetTable:
    """Todd-Coxeter enumeration of the cosets of <subgroup_words> in p."""
    e = _Enumerator(p, subgroup_words, cap)
    if strategy == "hlt":
        return e.run_hlt()
    if strategy == "felsch":
        return e.run_felsch()
    raise ValueError(f"unknown strategy {strategy!r}")


def quotient_order(p: Presentation, extra_relators: Sequence[GroupWord] = (),
                   cap: int = 1_000_000, strategy: str = "hlt") -> int:
    """Order of p with extra relators adjoined; equals the index of their normal closure."""
    return coset_enumerate(p.with_relators(extra_relators), (), cap, strategy).index


def normal_closure_table(p: Presentation, words: Sequence[GroupWord],
                         cap: int = 1_000_000, strategy: str = "hlt") -> CosetTable:
    """Coset table of the normal closure of ``words`` in p (regular action of the quotient)."""
    return coset_enumerate(p.with_relators(words), (), cap, strategy)


def relators_hold(p: Presentation, t: CosetTable) -> bool:
    return all(t.act(c, r) == c for r in p.relators for c in range(t.index))


def subgroup_presentation(p: Presentation, t: CosetTable) -> Presentation:
    """Reidemeister-Schreier presentation of the subgroup stabilizing coset 0."""
    if any(x < 0 for row in t.rows for x in row) or not relators_hold(p, t):
        raise ValueError("coset table is not complete for this presentation")
    ngen = p.generator_count
    # spanning tree from first appearances in the standardized table
    trivial: set[tuple[int, int]] = set()
    reached = {0}
    for c, row in enumerate(t.rows):
        for col, d in enumerate(row):
            if d not in reached:
                reached.add(d)
                gen, inv = divmod(col, 2)
                trivial.add((c, gen) if not inv else (d, gen))
    schreier = [(c, g) for c in range(t.index) for g in range(ngen) if (c, g) not in trivial]
    number = {s: k for k, s in enumerate(schreier)}
    names = tuple(f"{p.generators[g]}_{c}" for c, g in schreier)

    def rewrite(start: int, w: GroupWord) -> GroupWord:
        out = []
        c = start
        for gen, e in w:
            if e == 1:
                if (c, gen) in number:
                    out.append((number[(c, gen)], 1))
                c = t.rows[c][2 * gen]
            else:
                d = t.rows[c][2 * gen + 1]
                if (d, gen) in number:
                    out.append((number[(d, gen)], -1))
                c = d
        return GroupWord(out)

    rels = []
    for c in range(t.index):
        for r in p.relators:
            w = rewrite(c, r)
            if len(w):
                rels.append(w)
    return Presentation(names, tuple(rels))


def smith_normal_form(M: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix (length min(rows, cols))."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return [abs(A[k][k]) for k in range(t)] + [0] * (min(m, n) - t)
            i, j = pivot
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                dirty |= A[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
    return [abs(A[k][k]) for k in range(min(m, n))]


@dataclass(frozen=True)
class AbelianInvariants:
    torsion: tuple[int, ...]
    rank: int

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.rank
        return " x ".join(parts) if parts else "trivial"


def relation_matrix(p: Presentation) -> list[list[int]]:
    rows = []
    for r in p.relators:
        row = [0] * p.generator_count
        for g, e in r:
            row[g] += e
        rows.append(row)
    return rows


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    n = p.generator_count
    rows = relation_matrix(p)
    diag = smith_normal_form(rows) if rows and n else []
    nonzero = [d for d in diag if d]
    return AbelianInvariants(tuple(d for d in nonzero if d > 1), n - len(nonzero))
