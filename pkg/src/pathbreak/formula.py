"""DIMACS CNF/WCNF parsing, validation, and the immutable clause database."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

# Weights live in unsigned 64-bit range. Instances whose soft weights could
# overflow that sum are rejected up front so scoring stays exact everywhere.
MAX_SOFT_WEIGHT_SUM = 2**64 - 1


class Mode(Enum):
    UNWEIGHTED = "unweighted"
    WEIGHTED = "weighted"
    WEIGHTED_PARTIAL = "weighted-partial"


class ParseError(ValueError):
    """Malformed DIMACS input."""


@dataclass(frozen=True)
class Clause:
    """Disjunction of DIMACS-encoded literals (v or -v, 1-based variables).

    Soft clauses carry weight >= 1. Hard clauses carry no soft weight;
    their stored weight is 0 and ``hard`` is set.
    """

    lits: tuple[int, ...]
    weight: int = 1
    hard: bool = False


@dataclass(frozen=True)
class Formula:
    """Clause database plus its per-variable occurrence index.

    ``pos_occ[v]`` / ``neg_occ[v]`` list the ids of clauses where variable v
    occurs positively / negatively (index 0 is unused padding). Instances are
    immutable once built; tautologies dropped during parsing are only
    remembered through ``tautology_count``.
    """

    num_vars: int
    clauses: tuple[Clause, ...]
    mode: Mode
    top: int | None
    pos_occ: tuple[tuple[int, ...], ...]
    neg_occ: tuple[tuple[int, ...], ...]
    tautology_count: int = 0

    def soft_weight_sum(self) -> int:
        return sum(c.weight for c in self.clauses if not c.hard)

    def hard_count(self) -> int:
        return sum(1 for c in self.clauses if c.hard)


def make_formula(
    num_vars: int,
    clauses: list[Clause] | tuple[Clause, ...],
    mode: Mode,
    top: int | None = None,
    tautology_count: int = 0,
) -> Formula:
    """Build a Formula, computing the occurrence index from the clauses."""
    pos: list[list[int]] = [[] for _ in range(num_vars + 1)]
    neg: list[list[int]] = [[] for _ in range(num_vars + 1)]
    for ci, clause in enumerate(clauses):
        for lit in clause.lits:
            if lit > 0:
                pos[lit].append(ci)
            else:
                neg[-lit].append(ci)
    return Formula(
        num_vars=num_vars,
        clauses=tuple(clauses),
        mode=mode,
        top=top,
        pos_occ=tuple(tuple(ids) for ids in pos),
        neg_occ=tuple(tuple(ids) for ids in neg),
        tautology_count=tautology_count,
    )


def build_index(formula: Formula) -> Formula:
    """Return the formula with its occurrence index recomputed.

    Idempotent; exists so externally constructed clause lists can be indexed
    the same way the parser does it.
    """
    return make_formula(
        formula.num_vars,
        formula.clauses,
        formula.mode,
        formula.top,
        formula.tautology_count,
    )


def _to_int(token: str, ln: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {ln}: {what} is not an integer: {token!r}") from None


def _normalize(lits: list[int], ln: int) -> tuple[int, ...] | None:
    """Drop duplicate literals; return None for tautologies."""
    if not lits:
        raise ParseError(f"line {ln}: zero-length clause")
    seen: set[int] = set()
    out: list[int] = []
    for lit in lits:
        if -lit in seen:
            return None
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


def _clause_tokens(tokens: list[str], ln: int, num_vars: int | None) -> list[int]:
    """Validate the literal span of a clause line: lits then a final 0."""
    if not tokens:
        raise ParseError(f"line {ln}: zero-length clause")
    if tokens[-1] != "0":
        raise ParseError(f"line {ln}: clause line must end with 0")
    lits = []
    for tok in tokens[:-1]:
        lit = _to_int(tok, ln, "literal")
        if lit == 0:
            raise ParseError(f"line {ln}: trailing tokens after clause terminator")
        if num_vars is not None and abs(lit) > num_vars:
            raise ParseError(
                f"line {ln}: literal {lit} out of range for {num_vars} variables"
            )
        lits.append(lit)
    if not lits:
        raise ParseError(f"line {ln}: zero-length clause")
    return lits


def parse_dimacs(text: str) -> Formula:
    """Parse classic DIMACS CNF/WCNF text into a Formula.

    Header forms and the mode they select:
      * ``p cnf V C``        -> unweighted (every clause soft, weight 1)
      * ``p wcnf V C``       -> weighted (no hard clauses)
      * ``p wcnf V C top``   -> weighted-partial (weight == top marks hard)

    Headerless input whose first significant token is ``h`` or a weight is
    accepted as the newer WCNF style: ``h <lits> 0`` for hard clauses,
    ``<weight> <lits> 0`` for soft ones, variable count inferred.

    Duplicate literals inside a clause are dropped; tautological clauses are
    removed and counted in ``tautology_count``. Everything else that is off
    (bad header, out-of-range literal, empty clause, nonpositive soft weight,
    weight above top, clause count mismatch) raises ParseError.
    """
    header: tuple[int, str] | None = None
    body: list[tuple[int, str]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        if line[0] == "p":
            if header is not None:
                raise ParseError(f"line {ln}: duplicate header")
            if body:
                raise ParseError(f"line {ln}: header after clause data")
            header = (ln, line)
            continue
        body.append((ln, line))
    if header is not None:
        return _parse_classic(header, body)
    return _parse_headerless(body)


def _parse_classic(header: tuple[int, str], body: list[tuple[int, str]]) -> Formula:
    hln, hline = header
    toks = hline.split()
    if len(toks) < 4 or toks[0] != "p" or toks[1] not in ("cnf", "wcnf"):
        raise ParseError(f"line {hln}: malformed header: {hline!r}")
    fmt = toks[1]
    if fmt == "cnf":
        if len(toks) != 4:
            raise ParseError(f"line {hln}: malformed header: {hline!r}")
        mode = Mode.UNWEIGHTED
        top = None
    elif len(toks) == 4:
        mode = Mode.WEIGHTED
        top = None
    elif len(toks) == 5:
        mode = Mode.WEIGHTED_PARTIAL
        top = _to_int(toks[4], hln, "top")
        if top < 1:
            raise ParseError(f"line {hln}: top must be positive")
    else:
        raise ParseError(f"line {hln}: malformed header: {hline!r}")
    num_vars = _to_int(toks[2], hln, "variable count")
    declared = _to_int(toks[3], hln, "clause count")
    if num_vars < 0 or declared < 0:
        raise ParseError(f"line {hln}: negative counts in header")

    clauses: list[Clause] = []
    tautologies = 0
    soft_sum = 0
    for ln, line in body:
        toks = line.split()
        if fmt == "cnf":
            weight = 1
            hard = False
            lits = _clause_tokens(toks, ln, num_vars)
        else:
            weight = _to_int(toks[0], ln, "weight")
            lits = _clause_tokens(toks[1:], ln, num_vars)
            if mode is Mode.WEIGHTED_PARTIAL and weight == top:
                hard = True
                weight = 0
            else:
                hard = False
                if weight <= 0:
                    raise ParseError(f"line {ln}: soft clause weight must be positive")
                if top is not None and weight > top:
                    raise ParseError(f"line {ln}: weight {weight} exceeds top {top}")
        norm = _normalize(lits, ln)
        if norm is None:
            tautologies += 1
            continue
        if not hard:
            soft_sum += weight
            if soft_sum > MAX_SOFT_WEIGHT_SUM:
                raise ParseError(f"line {ln}: soft weight sum exceeds 64-bit range")
        clauses.append(Clause(norm, weight, hard))

    if len(body) != declared:
        raise ParseError(
            f"declared {declared} clauses, found {len(body)} clause lines"
        )
    return make_formula(num_vars, clauses, mode, top, tautologies)


def _parse_headerless(body: list[tuple[int, str]]) -> Formula:
    if not body:
        raise ParseError("no header and no clauses")
    clauses: list[Clause] = []
    tautologies = 0
    soft_sum = 0
    any_hard = False
    num_vars = 0
    for ln, line in body:
        toks = line.split()
        if toks[0] == "h":
            hard = True
            weight = 0
            lits = _clause_tokens(toks[1:], ln, None)
        else:
            hard = False
            weight = _to_int(toks[0], ln, "weight")
            if weight <= 0:
                raise ParseError(f"line {ln}: soft clause weight must be positive")
            lits = _clause_tokens(toks[1:], ln, None)
        norm = _normalize(lits, ln)
        if norm is None:
            tautologies += 1
            continue
        num_vars = max(num_vars, max(abs(l) for l in norm))
        if hard:
            any_hard = True
        else:
            soft_sum += weight
            if soft_sum > MAX_SOFT_WEIGHT_SUM:
                raise ParseError(f"line {ln}: soft weight sum exceeds 64-bit range")
        clauses.append(Clause(norm, weight, hard))
    mode = Mode.WEIGHTED_PARTIAL if any_hard else Mode.WEIGHTED
    return make_formula(num_vars, clauses, mode, None, tautologies)


def write_dimacs(formula: Formula) -> str:
    """Serialize back to classic DIMACS text (one clause per line).

    Weighted-partial instances without a declared top get sum(soft) + 1,
    which is always strictly above every soft weight.
    """
    m = len(formula.clauses)
    lines: list[str] = []
    if formula.mode is Mode.UNWEIGHTED:
        lines.append(f"p cnf {formula.num_vars} {m}")
        for c in formula.clauses:
            lines.append(" ".join(str(l) for l in c.lits) + " 0")
    elif formula.mode is Mode.WEIGHTED:
        lines.append(f"p wcnf {formula.num_vars} {m}")
        for c in formula.clauses:
            lines.append(f"{c.weight} " + " ".join(str(l) for l in c.lits) + " 0")
    else:
        top = formula.top if formula.top is not None else formula.soft_weight_sum() + 1
        lines.append(f"p wcnf {formula.num_vars} {m} {top}")
        for c in formula.clauses:
            w = top if c.hard else c.weight
            lines.append(f"{w} " + " ".join(str(l) for l in c.lits) + " 0")
    return "\n".join(lines) + "\n"
