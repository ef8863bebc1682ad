"""Generator data for the manifolds A+, B+, C+, D+, E+ and its loader."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .gaussian import GaussianIdeal, GaussianInteger
from .moebius import L, GroupWord, MoebiusElement, evaluate_word, in_principal_congruence

MANIFOLD_NAMES = ("A+", "B+", "C+", "D+", "E+")
DATA_DIR_ENV = "PICARD_DATA_DIR"
GAMMA_1_PLUS_I = GaussianIdeal(GaussianInteger(1, 1))


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    form_index: int
    word: str
    trace_abs: str


@dataclass(frozen=True)
class ManifoldGroupData:
    name: str
    generators: tuple[MoebiusElement, ...]
    reflection_words: tuple[tuple[int, ...], ...]
    auxiliary: dict[str, MoebiusElement] = field(default_factory=dict)
    witnesses: tuple[Witness, ...] = ()
    checksum: str = ""

    @property
    def names(self) -> tuple[str, ...]:
        """Names of the elements usable in witness words: g1..g5, l, auxiliaries."""
        return tuple(f"g{k + 1}" for k in range(len(self.generators))) + ("l",) + tuple(self.auxiliary)

    @property
    def elements(self) -> tuple[MoebiusElement, ...]:
        return self.generators + (L,) + tuple(self.auxiliary.values())

    def word(self, text: str) -> GroupWord:
        return GroupWord.parse(text, self.names)

    def element(self, text: str) -> MoebiusElement:
        return evaluate_word(self.elements, self.word(text))

    def conjugated_generators(self) -> tuple[MoebiusElement, ...]:
        """l g_k l^-1 for each generator; l normalizes the group."""
        return tuple(g.conjugate_by(L) for g in self.generators)


def _matrix(raw, where: str) -> MoebiusElement:
    try:
        (a, b), (c, d) = raw
        entries = [GaussianInteger(int(x[0]), int(x[1])) for x in (a, b, c, d)]
    except (TypeError, ValueError, IndexError) as exc:
        raise DatasetError(f"{where}: malformed matrix {raw!r}") from exc
    det = entries[0] * entries[3] - entries[1] * entries[2]
    if det != 1:
        raise DatasetError(f"{where}: determinant is {det}, expected 1")
    return MoebiusElement(*entries)


def parse_dataset(text: str, source: str = "<string>") -> ManifoldGroupData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{source}: not valid JSON: {exc}") from exc
    name = doc.get("name")
    if name not in MANIFOLD_NAMES:
        raise DatasetError(f"{source}: unknown manifold name {name!r}")
    gens = []
    for k, raw in enumerate(doc.get("generators", []), start=1):
        g = _matrix(raw, f"{source}: {name} generator g{k}")
        if not in_principal_congruence(g, GAMMA_1_PLUS_I):
            raise DatasetError(f"{source}: {name} generator g{k} is not in Gamma(1+i)")
        gens.append(g)
    if len(gens) != 5:
        raise DatasetError(f"{source}: expected 5 generators, found {len(gens)}")
    words = tuple(tuple(int(x) for x in w) for w in doc.get("reflection_words", []))
    if len(words) != len(gens):
        raise DatasetError(f"{source}: {len(words)} reflection words for {len(gens)} generators")
    for k, w in enumerate(words, start=1):
        if any(not 1 <= x <= 6 for x in w):
            raise DatasetError(f"{source}: reflection word {k} uses an index outside 1..6")

    data = ManifoldGroupData(name, tuple(gens), words)
    aux: dict[str, MoebiusElement] = {}
    for aname, spec in doc.get("auxiliary", {}).items():
        local = {k: _matrix(v, f"{source}: {aname}.{k}")
                 for k, v in spec.items() if k not in ("definition", "note")}
        names = data.names + tuple(aux) + tuple(local)
        elems = data.elements + tuple(aux.values()) + tuple(local.values())
        try:
            aux[aname] = evaluate_word(elems, GroupWord.parse(spec["definition"], names))
        except (KeyError, ValueError) as exc:
            raise DatasetError(f"{source}: bad definition for auxiliary {aname!r}: {exc}") from exc
    witnesses = tuple(Witness(int(w["form"]), str(w["word"]), str(w.get("trace_abs", "")))
                      for w in doc.get("witnesses", []))
    data = ManifoldGroupData(name, tuple(gens), words, aux, witnesses,
                             hashlib.sha256(text.encode()).hexdigest())
    for w in witnesses:
        try:
            data.word(w.word)
        except ValueError as exc:
            raise DatasetError(f"{source}: witness for form {w.form_index}: {exc}") from exc
    return data


def load_dataset(path) -> ManifoldGroupData:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read dataset {path}: {exc}") from exc
    return parse_dataset(text, str(path))


def _filename(name: str) -> str:
    return f"{name[0]}_plus.json"


def dataset_path(name: str, data_dir=None) -> Path | None:
    """Location of a dataset file; None means the bundled copy."""
    data_dir = data_dir or os.environ.get(DATA_DIR_ENV)
    if data_dir:
        return Path(data_dir) / _filename(name)
    return None


def load_named(name: str, data_dir=None) -> ManifoldGroupData:
    if name not in MANIFOLD_NAMES:
        raise DatasetError(f"unknown manifold {name!r}; choose from {', '.join(MANIFOLD_NAMES)}")
    path = dataset_path(name, data_dir)
    if path is not None:
        return load_dataset(path)
    text = resources.files("picard.data").joinpath(_filename(name)).read_text(encoding="utf-8")
    return parse_dataset(text, f"bundled:{_filename(name)}")


def load_all(data_dir=None) -> list[ManifoldGroupData]:
    return [load_named(n, data_dir) for n in MANIFOLD_NAMES]
