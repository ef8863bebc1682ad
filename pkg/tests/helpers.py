import random

from picard.gaussian import GaussianInteger, GaussianRational
from picard.hermitian import HermitianForm
from picard.moebius import IDENTITY, PICARD_GENERATORS

SEED = 20260914


def random_gi(rng: random.Random, bound: int = 50) -> GaussianInteger:
    return GaussianInteger(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_psl(rng: random.Random, max_len: int = 8):
    g = IDENTITY
    for _ in range(rng.randint(0, max_len)):
        h = rng.choice(PICARD_GENERATORS)
        g = g * (h if rng.random() < 0.5 else h.inverse())
    return g


def random_form(rng: random.Random, bound: int = 6, circle: bool = True) -> HermitianForm:
    while True:
        a = rng.randint(-bound, bound)
        if circle and a == 0:
            continue
        F = HermitianForm(a, random_gi(rng, bound), rng.randint(-bound, bound))
        if F.discriminant() > 0:
            return F


def random_qi(rng: random.Random, bound: int = 20) -> GaussianRational:
    return GaussianRational(random_gi(rng, bound), rng.randint(1, bound))
