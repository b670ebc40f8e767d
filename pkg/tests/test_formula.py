import random

import pytest

from pathbreak import (
    Clause,
    GeneratorSpec,
    Mode,
    ParseError,
    build_index,
    generate,
    make_formula,
    parse_dimacs,
    write_dimacs,
)
from conftest import ALL_MODES, EX3_TEXT, random_spec


def test_parse_unweighted(ex3):
    assert ex3.num_vars == 3
    assert ex3.mode is Mode.UNWEIGHTED
    assert ex3.top is None
    assert len(ex3.clauses) == 3
    assert ex3.clauses[0].lits == (1, -2)
    assert all(c.weight == 1 and not c.hard for c in ex3.clauses)
    assert ex3.tautology_count == 0


def test_parse_partial_hard_clause():
    f = parse_dimacs("p wcnf 1 1 5\n5 1 0\n")
    assert f.mode is Mode.WEIGHTED_PARTIAL
    assert f.top == 5
    assert f.clauses[0].hard
    assert f.clauses[0].weight == 0
    assert f.hard_count() == 1


def test_parse_weighted_without_top():
    f = parse_dimacs("p wcnf 2 2\n3 1 2 0\n1 -1 0\n")
    assert f.mode is Mode.WEIGHTED
    assert f.top is None
    assert [c.weight for c in f.clauses] == [3, 1]
    assert not any(c.hard for c in f.clauses)


def test_tautology_dropped_and_counted():
    f = parse_dimacs("p cnf 2 1\n1 -1 2 0\n")
    assert len(f.clauses) == 0
    assert f.tautology_count == 1


def test_duplicate_literals_deduped():
    f = parse_dimacs("p cnf 2 1\n1 1 2 0\n")
    assert f.clauses[0].lits == (1, 2)


def test_comments_and_blank_lines_ignored():
    f = parse_dimacs("c hello\n\np cnf 2 1\nc mid\n1 2 0\nc bye\n")
    assert len(f.clauses) == 1


def test_headerless_new_style():
    f = parse_dimacs("h 1 2 0\n3 -1 0\n")
    assert f.mode is Mode.WEIGHTED_PARTIAL
    assert f.num_vars == 2
    assert f.top is None
    assert f.clauses[0].hard and not f.clauses[1].hard
    assert f.clauses[1].weight == 3

    soft_only = parse_dimacs("2 1 0\n4 -1 2 0\n")
    assert soft_only.mode is Mode.WEIGHTED
    assert soft_only.num_vars == 2


def test_occurrence_index_example(ex3):
    # x3 appears positively in the second and third clause
    assert ex3.pos_occ[3] == (1, 2)
    assert ex3.neg_occ[3] == ()
    assert ex3.pos_occ[1] == (0,)
    assert ex3.neg_occ[1] == (2,)


def test_occurrence_index_matches_full_scan():
    rng = random.Random(7)
    for mode in ALL_MODES:
        f = generate(random_spec(rng, mode))
        for v in range(1, f.num_vars + 1):
            pos = tuple(ci for ci, c in enumerate(f.clauses) if v in c.lits)
            neg = tuple(ci for ci, c in enumerate(f.clauses) if -v in c.lits)
            assert f.pos_occ[v] == pos
            assert f.neg_occ[v] == neg


def test_index_length_sum_invariant():
    rng = random.Random(8)
    for mode in ALL_MODES:
        f = generate(random_spec(rng, mode))
        occ_total = sum(len(t) for t in f.pos_occ) + sum(len(t) for t in f.neg_occ)
        assert occ_total == sum(len(c.lits) for c in f.clauses)


def test_build_index_idempotent(ex3):
    assert build_index(ex3) == ex3


def test_roundtrip_all_modes():
    rng = random.Random(9)
    for mode in ALL_MODES:
        for _ in range(5):
            f = generate(random_spec(rng, mode))
            assert parse_dimacs(write_dimacs(f)) == f


def test_roundtrip_example():
    f = parse_dimacs(EX3_TEXT)
    assert write_dimacs(f) == EX3_TEXT


def test_make_formula_matches_parser(ex3):
    built = make_formula(
        3,
        [Clause((1, -2)), Clause((2, 3)), Clause((-1, 3))],
        Mode.UNWEIGHTED,
    )
    assert built == ex3


@pytest.mark.parametrize(
    "text",
    [
        "p dnf 1 1\n1 0\n",                 # unknown format word
        "p cnf x 1\n1 0\n",                 # non-integer count
        "p cnf 1\n1 0\n",                   # truncated header
        "p cnf 1 1 2 3\n1 0\n",             # oversized cnf header
        "p wcnf 1 1 2 3\n1 1 0\n",          # oversized wcnf header
        "1 0\np cnf 1 1\n",                 # header after clauses
        "p cnf 1 1\np cnf 1 1\n1 0\n",      # duplicate header
        "p cnf 1 1\n2 0\n",                 # literal out of range
        "p cnf 1 1\n-2 0\n",                # negative literal out of range
        "p cnf 1 1\n0\n",                   # zero-length clause
        "p wcnf 1 1 5\n5 0\n",              # zero-length hard clause
        "p wcnf 1 1\n0 1 0\n",              # weight 0 soft
        "p wcnf 1 1\n-3 1 0\n",             # negative weight
        "p wcnf 1 1 5\n6 1 0\n",            # weight above top
        "p cnf 1 2\n1 0\n",                 # fewer clauses than declared
        "p cnf 1 1\n1 0\n-1 0\n",           # more clauses than declared
        "p cnf 2 1\n1 0 2\n",               # tokens after the terminator
        "p cnf 2 1\n1 2\n",                 # missing terminator
        "p cnf 2 1\n1 a 0\n",               # junk literal
        "-1 2 0\n",                         # headerless but not h/weight
        "c only comments\n",                # nothing to parse
        "",                                 # empty input
        "p wcnf 1 1 0\n1 1 0\n",            # nonpositive top
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)


def test_weight_sum_overflow_rejected():
    big = 2**63
    text = f"p wcnf 1 3\n{big} 1 0\n{big} -1 0\n{big} 1 0\n"
    with pytest.raises(ParseError):
        parse_dimacs(text)
    # two of them still fit
    ok = parse_dimacs(f"p wcnf 1 2\n{big} 1 0\n{big - 1} -1 0\n")
    assert ok.soft_weight_sum() == 2**64 - 1


def test_declared_count_includes_dropped_tautologies():
    f = parse_dimacs("p cnf 2 2\n1 -1 0\n1 2 0\n")
    assert len(f.clauses) == 1
    assert f.tautology_count == 1


def test_generated_weight_and_hard_invariants():
    rng = random.Random(10)
    for mode in ALL_MODES:
        f = generate(random_spec(rng, mode))
        for c in f.clauses:
            if c.hard:
                assert f.mode is Mode.WEIGHTED_PARTIAL
                assert c.weight == 0
            else:
                assert c.weight >= 1
        if mode is Mode.WEIGHTED_PARTIAL:
            assert f.top == f.soft_weight_sum() + 1
