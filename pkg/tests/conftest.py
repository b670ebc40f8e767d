import random

import pytest

from pathbreak import GeneratorSpec, Mode, generate, parse_dimacs

# (x1 or not x2) and (x2 or x3) and (not x1 or x3)
EX3_TEXT = "p cnf 3 3\n1 -2 0\n2 3 0\n-1 3 0\n"


@pytest.fixture
def ex3():
    return parse_dimacs(EX3_TEXT)


def bits(s: str) -> list[bool]:
    """'011' -> [False, True, True] (x1=0, x2=1, x3=1)."""
    return [ch == "1" for ch in s]


def random_spec(rng: random.Random, mode: Mode, n_lo=5, n_hi=16) -> GeneratorSpec:
    """A small random instance recipe for fuzz loops."""
    k = rng.choice([2, 3])
    n = rng.randint(max(n_lo, k), n_hi)
    m = rng.randint(1, 5 * n)
    if mode is Mode.UNWEIGHTED:
        wr, hf = (1, 1), 0.0
    elif mode is Mode.WEIGHTED:
        wr, hf = (1, rng.choice([1, 5, 100])), 0.0
    else:
        wr, hf = (1, rng.choice([1, 9])), rng.choice([0.1, 0.3, 0.5])
    return GeneratorSpec(
        num_vars=n, num_clauses=m, clause_length=k, mode=mode,
        weight_range=wr, hard_fraction=hf, seed=rng.randrange(2**31),
    )


def random_formula(rng: random.Random, mode: Mode, **kw):
    return generate(random_spec(rng, mode, **kw))


ALL_MODES = (Mode.UNWEIGHTED, Mode.WEIGHTED, Mode.WEIGHTED_PARTIAL)
