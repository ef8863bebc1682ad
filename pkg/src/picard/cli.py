"""Command-line driver: runs each verification pipeline and reports every checked claim."""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .datasets import MANIFOLD_NAMES, DatasetError, ManifoldGroupData, load_all, load_named
from .fpgroups import (
    abelian_invariants,
    coset_enumerate,
    coxeter_presentation,
    normal_closure_table,
    picard_presentation,
    quotient_order,
    subgroup_presentation,
)
from .gaussian import GaussianIdeal, GaussianInteger
from .hermitian import fixes_form, is_invariant, transported_base_forms
from .lorentz import coxeter_relations_hold, cross_check_generators, pair_images_consistent
from .moebius import (
    T, U,
    MoebiusElement,
    congruence_quotient_index,
    in_principal_congruence,
    l_normalizes_image,
    picard_word,
    trace_class,
)
from .obstruction import closed_candidates, verify_table, witness_search
from .volume import contradiction_check

COMMANDS = ("verify-all", "tables", "group-orders", "quotient-indices", "cross-check",
            "volume-bound", "candidates", "search")

IDEAL_1I = GaussianIdeal(GaussianInteger(1, 1))
IDEAL_2_2I = GaussianIdeal(GaussianInteger(2, 2))


@dataclass
class Section:
    claim: str
    topic: str
    expected: object
    computed: object
    status: str  # pass | fail | info

    def to_json(self) -> dict:
        return {"claim": self.claim, "topic": self.topic, "expected": _plain(self.expected),
                "computed": _plain(self.computed), "status": self.status}


@dataclass
class VerificationReport:
    command: str
    sections: list[Section] = field(default_factory=list)
    datasets: dict[str, str] = field(default_factory=dict)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(s.status != "fail" for s in self.sections)

    def check(self, claim: str, topic: str, expected, computed, ok: bool | None = None) -> bool:
        if ok is None:
            ok = expected == computed
        self.sections.append(Section(claim, topic, expected, computed, "pass" if ok else "fail"))
        return ok

    def info(self, claim: str, topic: str, computed) -> None:
        self.sections.append(Section(claim, topic, None, computed, "info"))

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "tool_version": self.version,
            "datasets": dict(sorted(self.datasets.items())),
            "overall": "pass" if self.passed else "fail",
            "sections": [s.to_json() for s in self.sections],
        }

    def to_text(self) -> str:
        lines = [f"picard {self.version}  command: {self.command}"]
        for name, digest in sorted(self.datasets.items()):
            lines.append(f"  dataset {name}: sha256 {digest[:16]}")
        for s in self.sections:
            exp = "" if s.expected is None else f"  expected {_show(s.expected)}"
            lines.append(f"[{s.status.upper():4}] {s.claim}: {s.topic}{exp}  computed {_show(s.computed)}")
        n_fail = sum(s.status == "fail" for s in self.sections)
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} "
                     f"({len(self.sections) - n_fail}/{len(self.sections)} sections without failure)")
        return "\n".join(lines) + "\n"


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussianInteger):
        return x.to_json()
    if isinstance(x, MoebiusElement):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def _show(x) -> str:
    return json.dumps(_plain(x), separators=(",", ":"))


# -- pipelines -------------------------------------------------------------

def check_group_orders(rep: VerificationReport) -> None:
    P = picard_presentation()
    gamma_1i = [P.word("t*u"), P.word("t^2"), P.word("u^2")]
    for strategy in ("hlt", "felsch"):
        rep.check(f"order-6/{strategy}", "order of PSL(2,Z[i]) / <<tu, t^2, u^2>>",
                  6, quotient_order(P, gamma_1i, strategy=strategy))
    table = normal_closure_table(P, gamma_1i)
    inv = abelian_invariants(subgroup_presentation(P, table))
    rep.check("gamma(1+i)-abelian", "abelian invariants of Gamma(1+i)",
              {"torsion": [2, 2, 2, 2, 2], "rank": 0},
              {"torsion": list(inv.torsion), "rank": inv.rank})
    for strategy in ("hlt", "felsch"):
        rep.check(f"order-192/{strategy}", "order of PSL(2,Z[i]) / <<t^2 u^2, t^4>>",
                  192, quotient_order(P, [P.word("t^2*u^2"), P.word("t^4")], strategy=strategy))
    C = coxeter_presentation()
    even = coset_enumerate(C, [C.word("a*b"), C.word("a*c"), C.word("a*d")])
    so_inv = abelian_invariants(subgroup_presentation(C, even))
    rep.check("so+(3,1)-abelian", "abelianization of the rotation subgroup of the [3,4,4] Coxeter group",
              {"index": 2, "torsion": [2, 2], "rank": 0},
              {"index": even.index, "torsion": list(so_inv.torsion), "rank": so_inv.rank})


def check_quotient_indices(rep: VerificationReport, datasets: list[ManifoldGroupData]) -> None:
    rep.check("gamma(2+2i)-index", "order of PSL(2, Z[i]/(2+2i))", 192,
              congruence_quotient_index([], IDEAL_2_2I))
    rep.check("gamma(1+i)-index", "index of the normal closure of <tu, t^2, u^2> mod (2+2i)", 6,
              congruence_quotient_index([T * U, T * T, U * U], IDEAL_2_2I, normal_closure=True))
    P = picard_presentation()
    for d in datasets:
        rep.check(f"index/{d.name}", f"index of <pi_1({d.name}), Gamma(2+2i)> in PSL(2,Z[i])", 48,
                  congruence_quotient_index(d.generators, IDEAL_2_2I))
        words = [picard_word(g) for g in d.generators]
        rep.check(f"index-direct/{d.name}",
                  f"index of <pi_1({d.name})> in PSL(2,Z[i]) by coset enumeration", 48,
                  coset_enumerate(P, words).index)
        rep.check(f"gamma(1+i)/{d.name}", "every generator lies in Gamma(1+i)", True,
                  all(in_principal_congruence(g, IDEAL_1I) for g in d.generators))
        rep.check(f"l-normalizes/{d.name}", "l normalizes the image mod (2+2i)", True,
                  l_normalizes_image(d.generators, IDEAL_2_2I))
    a_plus = next((d for d in datasets if d.name == "A+"), None)
    if a_plus is not None:
        m = a_plus.element("g2^-1 g1 g3 beta")
        rep.check("beta-display", "g2^-1 g1 g3 beta in pi_1(A+)",
                  MoebiusElement(GaussianInteger(5, 8), GaussianInteger(10, -2),
                                 GaussianInteger(18, 6), GaussianInteger(13, -16)), m)
        rep.check("beta-membership", "g2^-1 g1 g3 beta lies in Gamma(2+2i)", True,
                  in_principal_congruence(m, IDEAL_2_2I))


def check_forms(rep: VerificationReport) -> None:
    printed = [(2, (1, -1), -2), (-2, (-1, -1), 2), (2, (3, -1), 2),
               (2, (-1, -1), -2), (-2, (-3, -1), -2), (-2, (1, -1), 2)]
    computed = [(F.a, (F.B.re, F.B.im), F.c) for F in transported_base_forms()]
    rep.check("transported-forms", "forms of T_k C_{6,3}, k = 0..5",
              [list(x) for x in printed], [list(x) for x in computed])


def check_tables(rep: VerificationReport, datasets: list[ManifoldGroupData], max_len: int) -> None:
    check_forms(rep)
    for d in datasets:
        table = verify_table(d, max_len)
        for row in table.rows:
            rep.check(f"table/{d.name}/A{row.form_index}",
                      f"witness {row.listed_word} for form A_{row.form_index}",
                      {"abs_trace": "2/3", "invariant": False, "search_found": True},
                      {"abs_trace": str(abs(row.trace)), "trace": str(row.trace),
                       "invariant": row.invariant,
                       "search_found": row.search is not None,
                       "search_witness": row.search.word_text if row.search else None},
                      row.status == "pass")
    a_plus = next((d for d in datasets if d.name == "A+"), None)
    if a_plus is not None:
        g1 = a_plus.generators[0]
        rep.check("g1-trace", "trace of g1 in pi_1(A+), up to sign",
                  [[0, -2], [0, 2]], sorted(z.to_json() for z in trace_class(g1)))
        rep.check("g1-noninvariant", "g1 of A+ leaves none of A_0..A_5 invariant", [False] * 6,
                  [is_invariant(g1, F) for F in transported_base_forms()])
        rep.info("g1-fixes-form", "whether g1* A_k g1 == A_k exactly (sides preserved)",
                 [fixes_form(g1, F) for F in transported_base_forms()])


def check_cross(rep: VerificationReport, datasets: list[ManifoldGroupData]) -> None:
    for d in datasets:
        for row in cross_check_generators(d):
            rep.check(f"cross/{d.name}/g{row.generator}",
                      f"reflection word {''.join(f'r{k}' for k in row.word)}",
                      row.expected, row.transported, row.passed)
    for j, ok in pair_images_consistent().items():
        rep.check(f"pair-images/r1r{j}", "r1 r_j image via ab, ac, ad images", True, ok)
    for rel, ok in coxeter_relations_hold().items():
        rep.check(f"coxeter/{rel}", "Coxeter relation on the 4x4 reflections", True, ok)


def check_candidates(rep: VerificationReport, translation: GaussianInteger) -> None:
    found = [str(c) for c in closed_candidates(translation).candidates]
    if translation == GaussianInteger(2, 2):
        expected = ["C_1", "C_2", "C_1,1", "C_1,2", "C_2,3", "C_5,1", "C_5,2", "C_6,3"]
        rep.check("candidates", "canonical circles of radius <= sqrt(2)", sorted(expected), sorted(found))
    else:
        rep.info("candidates", f"canonical circles of radius <= |{translation}|/2", found)
    strict = [str(c) for c in closed_candidates(translation, strict=True).candidates]
    rep.info("candidates-strict", f"canonical circles of radius < |{translation}|/2", strict)


def check_volume(rep: VerificationReport, copies: int, vol3: float, chi: int, tol: float) -> None:
    r = contradiction_check(copies, vol3, chi, tol)
    rep.check("volume-bound", f"{copies} collars of volume V'({vol3}) exceed (4 pi^2/3) * {chi}",
              {"contradiction": True},
              {"contradiction": r.contradiction, "collar_halfwidth": r.collar_halfwidth,
               "tube_volume": r.tube_volume, "lhs": r.lhs, "rhs": r.rhs},
              r.contradiction)


def check_search(rep: VerificationReport, datasets, forms: list[int], max_len: int) -> None:
    for d in datasets:
        for k in forms:
            w = witness_search(d, k, max_len)
            rep.check(f"search/{d.name}/A{k}", f"shortest word violating embedding (length <= {max_len})",
                      {"found": True},
                      {"found": w is not None, "word": w.word_text if w else None,
                       "trace": str(w.trace_value) if w else None}, w is not None)


# -- driver ----------------------------------------------------------------

def parse_gaussian(text: str) -> GaussianInteger:
    s = text.replace(" ", "").lower()
    m = re.fullmatch(r"(-?\d+),(-?\d+)", s)
    if m:
        return GaussianInteger(int(m[1]), int(m[2]))
    m = re.fullmatch(r"([+-]?\d+)?(?:([+-]?\d*)i)?", s)
    if not s or not m:
        raise argparse.ArgumentTypeError(f"not a Gaussian integer: {text!r}")
    re_part = int(m[1]) if m[1] else 0
    if m[2] is None:
        im_part = 0
    elif m[2] in ("", "+"):
        im_part = 1
    elif m[2] == "-":
        im_part = -1
    else:
        im_part = int(m[2])
    return GaussianInteger(re_part, im_part)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="picard", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--manifold", choices=MANIFOLD_NAMES + ("all",), default="all")
    p.add_argument("--form", type=int, choices=range(6), metavar="0..5", default=None)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--copies", type=int, default=16)
    p.add_argument("--vol3", type=float, default=0.94)
    p.add_argument("--chi", type=int, default=2)
    p.add_argument("--translation", type=parse_gaussian, default=GaussianInteger(2, 2))
    p.add_argument("--data-dir", default=None, help="directory of dataset files (or $PICARD_DATA_DIR)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    return p


NEEDS_DATA = {"verify-all", "tables", "quotient-indices", "cross-check", "search"}


def run(args: argparse.Namespace) -> tuple[int, VerificationReport]:
    rep = VerificationReport(args.command)
    datasets: list[ManifoldGroupData] = []
    if args.command in NEEDS_DATA:
        if args.manifold == "all":
            datasets = load_all(args.data_dir)
        else:
            datasets = [load_named(args.manifold, args.data_dir)]
        rep.datasets = {d.name: d.checksum for d in datasets}
    cmd = args.command
    if cmd in ("group-orders", "verify-all"):
        check_group_orders(rep)
    if cmd in ("quotient-indices", "verify-all"):
        check_quotient_indices(rep, datasets)
    if cmd in ("cross-check", "verify-all"):
        check_cross(rep, datasets)
    if cmd in ("tables", "verify-all"):
        check_tables(rep, datasets, args.max_len)
    if cmd in ("candidates", "verify-all"):
        check_candidates(rep, args.translation)
    if cmd in ("volume-bound", "verify-all"):
        check_volume(rep, args.copies, args.vol3, args.chi, args.tol)
    if cmd == "search":
        forms = list(range(6)) if args.form is None else [args.form]
        check_search(rep, datasets, forms, args.max_len)
    return (0 if rep.passed else 1), rep


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, rep = run(args)
    except DatasetError as exc:
        print(f"picard: input error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"picard: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    text = (json.dumps(rep.to_json(), indent=1, sort_keys=True) + "\n"
            if args.format == "json" else rep.to_text())
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
