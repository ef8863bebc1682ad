"""Integral Lorentz matrices: reflections generating O+(3,1; Z), level two, and transport to PSL(2, Z[i])."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gaussian import I
from .moebius import IDENTITY, MoebiusElement

Matrix = tuple[tuple[int, ...], ...]

J: Matrix = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1))
ID4: Matrix = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

REFLECTIONS: dict[str, Matrix] = {
    "a": ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    "b": ((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1)),
    "c": ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1)),
    "d": ((0, -1, -1, 1), (-1, 0, -1, 1), (-1, -1, 0, 1), (-1, -1, -1, 2)),
}

# Level-two reflections as words in a, b, c, d.
R_WORDS = {1: "abcba", 2: "bcb", 3: "c", 4: "abdcdba", 5: "bdcdb", 6: "dcd"}

# Images in PGL(2, Z[i]) of the even products a*x.
PAIR_IMAGES = {
    "a": IDENTITY,
    "b": MoebiusElement(1, -1, 1, 0),
    "c": MoebiusElement(0, 1, -I, 0),
    "d": MoebiusElement(0, 1, 1, 0),
}

# Images in Gamma(1+i) of r1*r_j.
R1_IMAGES = {
    1: IDENTITY,
    2: MoebiusElement(-1, 1 + I, -1 + I, 1),
    3: MoebiusElement(-I, -1 + I, 0, I),
    4: MoebiusElement(-I, 2 * I, 0, I),
    5: MoebiusElement(2 - I, -1 + I, 1 - I, I),
    6: MoebiusElement(1, 1 + I, 0, 1),
}


def matmul(X: Matrix, Y: Matrix) -> Matrix:
    n = len(Y)
    return tuple(tuple(sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(len(Y[0])))
                 for i in range(len(X)))


def transpose(X: Matrix) -> Matrix:
    return tuple(zip(*X))


def det(X: Matrix) -> int:
    n = len(X)
    if n == 1:
        return X[0][0]
    return sum((-1) ** j * X[0][j] * det(tuple(row[:j] + row[j + 1:] for row in X[1:]))
               for j in range(n) if X[0][j])


def is_lorentz_plus(M: Sequence[Sequence[int]]) -> bool:
    M = tuple(tuple(r) for r in M)
    return matmul(matmul(transpose(M), J), M) == J and M[3][3] >= 1


def evaluate_letters(word: str) -> Matrix:
    result = ID4
    for ch in word:
        result = matmul(result, REFLECTIONS[ch])
    return result


def reduce_reflection_word(w: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def expand(w: Sequence[int]) -> str:
    """A word in r_1..r_6 spelled in a, b, c, d."""
    return "".join(R_WORDS[k] for k in w)


def evaluate_reflection_word(w: Sequence[int]) -> Matrix:
    if any(k not in R_WORDS for k in w):
        raise ValueError(f"reflection indices must lie in 1..6, got {list(w)}")
    return evaluate_letters(expand(w))


def in_level_two(M: Sequence[Sequence[int]]) -> bool:
    if not is_lorentz_plus(M):
        raise ValueError("not an element of O+(3,1; Z)")
    return all((M[i][j] - (i == j)) % 2 == 0 for i in range(4) for j in range(4))


def transport_to_psl(w: Sequence[int]) -> MoebiusElement:
    """Image of an even reflection word, via r_i r_j = (r_1 r_i)^-1 (r_1 r_j)."""
    if len(w) % 2:
        raise ValueError("not in the orientation-preserving subgroup: odd length")
    result = IDENTITY
    for k in range(0, len(w), 2):
        i, j = w[k], w[k + 1]
        result = result * R1_IMAGES[i].inverse() * R1_IMAGES[j]
    return result


def transport_letters(word: str) -> MoebiusElement:
    """Image of an even word in a, b, c, d, via x y = (a x)^-1 (a y)."""
    if len(word) % 2:
        raise ValueError("odd length word")
    result = IDENTITY
    for k in range(0, len(word), 2):
        result = result * PAIR_IMAGES[word[k]].inverse() * PAIR_IMAGES[word[k + 1]]
    return result


def pair_images_consistent() -> dict[int, bool]:
    """For j = 2..6, whether r1 r_j pushed through the a-pair images equals its listed image."""
    return {j: transport_letters(R_WORDS[1] + R_WORDS[j]) == R1_IMAGES[j] for j in range(2, 7)}


COXETER_RELATIONS = {"ab": 3, "bc": 4, "cd": 4, "ac": 2, "ad": 2, "bd": 2}


def coxeter_relations_hold() -> dict[str, bool]:
    out = {x: evaluate_letters(x + x) == ID4 for x in "abcd"}
    for pair, m in COXETER_RELATIONS.items():
        out[f"({pair})^{m}"] = evaluate_letters(pair * m) == ID4
    return out


@dataclass(frozen=True)
class CrossCheckRow:
    generator: int
    word: tuple[int, ...]
    expected: MoebiusElement
    transported: MoebiusElement | None
    passed: bool

    def to_json(self) -> dict:
        return {
            "generator": f"g{self.generator}",
            "word": list(self.word),
            "expected": self.expected.to_json(),
            "transported": self.transported.to_json() if self.transported else None,
            "status": "pass" if self.passed else "fail",
        }


def cross_check(generators: Sequence[MoebiusElement],
                words: Sequence[Sequence[int]]) -> list[CrossCheckRow]:
    rows = []
    for k, (g, w) in enumerate(zip(generators, words), start=1):
        try:
            img = transport_to_psl(w)
        except ValueError:
            rows.append(CrossCheckRow(k, tuple(w), g, None, False))
            continue
        rows.append(CrossCheckRow(k, tuple(w), g, img, img == g))
    return rows


def cross_check_generators(data) -> list[CrossCheckRow]:
    return cross_check(data.generators, data.reflection_words)
