"""Embedding obstruction for totally geodesic surfaces via the trace criterion.

A surface attached to the circle of a form A fails to be embedded as
soon as some group element g moves the circle and satisfies
|tr(g* A g A^-1)| < 2: the circle and its translate then cross.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .datasets import ManifoldGroupData
from .gaussian import GaussianInteger
from .hermitian import (
    CanonicalCircleId,
    HermitianForm,
    act,
    canonical_ids,
    is_invariant,
    transported_base_forms,
)
from .moebius import IDENTITY, GroupWord, MoebiusElement

TWO = Fraction(2)

# Of the small canonical circles, only C_{6,3} bounds a closed surface
# (Maclachlan-Reid classification of Fuchsian subgroups of the Picard
# group); recorded here as data, not recomputed.
CLOSED_SURFACE_CIRCLE = CanonicalCircleId(6, 3)


def jr_trace(g: MoebiusElement, F: HermitianForm) -> Fraction:
    """tr(g* F g F^-1), exactly. Always real for Hermitian F."""
    det = -F.discriminant()
    if det == 0:
        raise ValueError("degenerate form")
    G = act(g, F)
    # F^-1 = adj(F) / det(F) with adj(F) = [[c, -B], [-conj(B), a]]
    num = G.a * F.c + G.c * F.a - G.B * F.B.conjugate() - G.B.conjugate() * F.B
    assert num.im == 0, "trace of a product of Hermitian matrices must be real"
    return Fraction(num.re, det)


def violates_embedding(g: MoebiusElement, F: HermitianForm) -> bool:
    if is_invariant(g, F):
        return False
    t = jr_trace(g, F)
    return -TWO < t < TWO


@dataclass(frozen=True)
class ObstructionWitness:
    word: GroupWord
    word_text: str
    element: MoebiusElement
    form_index: int
    trace_value: Fraction

    def to_json(self) -> dict:
        return {
            "word": self.word_text,
            "element": self.element.to_json(),
            "form_index": self.form_index,
            "trace": _fraction_json(self.trace_value),
        }


def _fraction_json(x: Fraction) -> dict:
    return {"numerator": x.numerator, "denominator": x.denominator}


def search_alphabet(data: ManifoldGroupData) -> tuple[tuple[MoebiusElement, ...], tuple[str, ...]]:
    """Generators g_k followed by their l-conjugates, with display names."""
    n = len(data.generators)
    elems = data.generators + data.conjugated_generators()
    names = tuple(f"g{k + 1}" for k in range(n)) + tuple(f"(l g{k + 1} l^-1)" for k in range(n))
    return elems, names


def witness_search(data: ManifoldGroupData, form_index: int, max_len: int,
                   forms: Sequence[HermitianForm] | None = None) -> ObstructionWitness | None:
    """Shortest-first search for a word violating the embedding criterion.

    Words are visited by length, then lexicographically in the letter
    order g1, g1^-1, g2, ...; a word is only extended if its element
    has not been seen before.
    """
    F = (forms or transported_base_forms())[form_index]
    elems, names = search_alphabet(data)
    if not elems:
        return None
    letters = [(k, e) for k in range(len(elems)) for e in (1, -1)]
    steps = {(k, 1): elems[k] for k in range(len(elems))}
    steps.update({(k, -1): elems[k].inverse() for k in range(len(elems))})
    seen = {IDENTITY}
    frontier: list[tuple[tuple[tuple[int, int], ...], MoebiusElement]] = [((), IDENTITY)]
    for _ in range(max_len):
        nxt = []
        for word, g in frontier:
            for letter in letters:
                if word and word[-1] == (letter[0], -letter[1]):
                    continue
                h = g * steps[letter]
                if h in seen:
                    continue
                seen.add(h)
                w = word + (letter,)
                if violates_embedding(h, F):
                    gw = GroupWord(w)
                    return ObstructionWitness(gw, gw.format(names), h, form_index, jr_trace(h, F))
                nxt.append((w, h))
        frontier = nxt
    return None


@dataclass(frozen=True)
class CandidateCircleSet:
    translation: GaussianInteger
    candidates: tuple[CanonicalCircleId, ...]
    strict: bool = False


def closed_candidates(translation, strict: bool = False) -> CandidateCircleSet:
    """Canonical circles small enough to be disjoint from their translate.

    Keeps radius <= |translation|/2 (``strict``: radius < |translation|/2).
    """
    tau = GaussianInteger.coerce(translation)
    if not tau:
        raise ValueError("translation must be nonzero")
    bound = Fraction(tau.norm(), 4)
    keep = []
    for cid in canonical_ids(tau.norm()):
        r2 = cid.radius_sq
        if r2 < bound or (r2 == bound and not strict):
            keep.append(cid)
    return CandidateCircleSet(tau, tuple(keep), strict)


@dataclass
class TableRow:
    form_index: int
    listed_word: str
    listed_element: MoebiusElement
    trace: Fraction
    invariant: bool
    search: ObstructionWitness | None
    status: str

    def to_json(self) -> dict:
        return {
            "form_index": self.form_index,
            "listed_word": self.listed_word,
            "listed_element": self.listed_element.to_json(),
            "trace": _fraction_json(self.trace),
            "invariant": self.invariant,
            "search_witness": self.search.to_json() if self.search else None,
            "status": self.status,
        }


@dataclass
class TableReport:
    manifold: str
    rows: list[TableRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.rows)

    def to_json(self) -> dict:
        return {"manifold": self.manifold, "passed": self.passed,
                "rows": [r.to_json() for r in self.rows]}


def verify_table(data: ManifoldGroupData, max_len: int = 6,
                 expected_abs: Fraction = Fraction(2, 3)) -> TableReport:
    forms = transported_base_forms()
    listed = {w.form_index: w for w in data.witnesses}
    report = TableReport(data.name)
    for k, F in enumerate(forms):
        if k not in listed:
            raise ValueError(f"{data.name}: no listed witness for form A_{k}")
        g = data.element(listed[k].word)
        t = jr_trace(g, F)
        inv = is_invariant(g, F)
        found = witness_search(data, k, max_len, forms)
        ok = abs(t) == expected_abs and not inv and found is not None
        report.rows.append(TableRow(k, listed[k].word, g, t, inv, found, "pass" if ok else "fail"))
    return report


def verify_paper_tables(datasets: Sequence[ManifoldGroupData], max_len: int = 6) -> list[TableReport]:
    return [verify_table(d, max_len) for d in datasets]
