"""Incremental cost and per-variable make/break bookkeeping under flips."""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .formula import Formula, Mode


class Cost(NamedTuple):
    """Solution quality, compared lexicographically: falsified hard clause
    count first, falsified soft weight second."""

    hard: int
    soft: int


def is_better(a: Cost, b: Cost) -> bool:
    """True when a is strictly better (smaller) than b."""
    return a < b


def inverse(values: list[bool]) -> list[bool]:
    """The assignment with every variable negated."""
    return [not v for v in values]


class ScoreState:
    """Mutable view of one assignment over an immutable formula.

    Maintains, under single-variable flips:
      * ``sat_count[c]``: satisfied literals in clause c,
      * ``falsified_hard`` / ``falsified_soft``: the current Cost,
      * ``make_hard/break_hard`` (clause counts) and ``make_soft/break_soft``
        (weights) per variable.

    make(x) is what flipping x would newly satisfy, break(x) what it would
    newly falsify. A clause with exactly one satisfied literal keeps its
    satisfying variable cached (as a running index sum), so break updates
    stay O(1) per touched clause and a flip costs time proportional to the
    flipped variable's occurrence lists.

    All arithmetic is on plain integers; weighted instances never lose
    precision.
    """

    def __init__(self, formula: Formula, values: list[bool]):
        n = formula.num_vars
        if len(values) != n:
            raise ValueError(f"assignment length {len(values)} != {n} variables")
        self.formula = formula
        self.values = list(values)
        self._partial = formula.mode is Mode.WEIGHTED_PARTIAL

        self.sat_count: list[int] = []
        # crit_sum[c]: sum of variable indices whose literal in c is satisfied.
        # When sat_count[c] == 1 this IS the critical variable.
        self.crit_sum: list[int] = []
        self.make_hard = [0] * (n + 1)
        self.break_hard = [0] * (n + 1)
        self.make_soft = [0] * (n + 1)
        self.break_soft = [0] * (n + 1)
        self.falsified_hard = 0
        self.falsified_soft = 0
        # Diagnostic: flips that falsified at least one hard clause.
        # set_assignment() repositioning is excluded.
        self.hard_breaking_flips = 0

        self._cl_vars: list[tuple[int, ...]] = []
        self._cl_weight: list[int] = []
        self._cl_hard: list[bool] = []

        vals = self.values
        for clause in formula.clauses:
            hard = clause.hard
            w = 1 if hard else clause.weight
            cvars = tuple(abs(l) for l in clause.lits)
            sat = 0
            crit = 0
            for lit in clause.lits:
                if vals[abs(lit) - 1] == (lit > 0):
                    sat += 1
                    crit += abs(lit)
            self._cl_vars.append(cvars)
            self._cl_weight.append(w)
            self._cl_hard.append(hard)
            self.sat_count.append(sat)
            self.crit_sum.append(crit)
            if hard:
                make, brk = self.make_hard, self.break_hard
            else:
                make, brk = self.make_soft, self.break_soft
            if sat == 0:
                if hard:
                    self.falsified_hard += 1
                else:
                    self.falsified_soft += w
                for v in cvars:
                    make[v] += w
            elif sat == 1:
                brk[crit] += w

    def cost(self) -> Cost:
        return Cost(self.falsified_hard, self.falsified_soft)

    def score(self, x: int) -> int:
        """make(x) - break(x) in the active basis.

        On weighted-partial instances with a falsified hard clause the basis
        is hard clause counts; otherwise it is soft weight. A flip can
        therefore have a positive score while breaking hard clauses; callers
        can watch ``hard_breaking_flips`` for how often that happens.
        """
        if not 1 <= x <= self.formula.num_vars:
            raise IndexError(f"variable {x} out of range")
        if self._partial and self.falsified_hard > 0:
            return self.make_hard[x] - self.break_hard[x]
        return self.make_soft[x] - self.break_soft[x]

    def scores(self, xs: Iterable[int]) -> list[int]:
        """Bulk score lookup (no bounds checks; hot path)."""
        if self._partial and self.falsified_hard > 0:
            mk, bk = self.make_hard, self.break_hard
        else:
            mk, bk = self.make_soft, self.break_soft
        return [mk[x] - bk[x] for x in xs]

    def copy_values(self) -> list[bool]:
        return list(self.values)

    def flip(self, x: int) -> None:
        """Flip variable x, updating every aggregate incrementally."""
        n = self.formula.num_vars
        if not 1 <= x <= n:
            raise IndexError(f"variable {x} out of range 1..{n}")
        new = not self.values[x - 1]
        self.values[x - 1] = new
        if new:
            now_sat = self.formula.pos_occ[x]
            now_fal = self.formula.neg_occ[x]
        else:
            now_sat = self.formula.neg_occ[x]
            now_fal = self.formula.pos_occ[x]

        sat_count = self.sat_count
        crit_sum = self.crit_sum
        cl_vars = self._cl_vars
        cl_weight = self._cl_weight
        cl_hard = self._cl_hard
        make_hard, break_hard = self.make_hard, self.break_hard
        make_soft, break_soft = self.make_soft, self.break_soft
        hard_broken = False

        for c in now_sat:
            sc = sat_count[c]
            if sc == 0:
                # clause leaves the falsified set; x is now its sole satisfier
                sat_count[c] = 1
                crit_sum[c] = x
                w = cl_weight[c]
                if cl_hard[c]:
                    self.falsified_hard -= 1
                    make, brk = make_hard, break_hard
                else:
                    self.falsified_soft -= w
                    make, brk = make_soft, break_soft
                for v in cl_vars[c]:
                    make[v] -= w
                brk[x] += w
            elif sc == 1:
                # previous critical variable is no longer alone
                w = cl_weight[c]
                if cl_hard[c]:
                    break_hard[crit_sum[c]] -= w
                else:
                    break_soft[crit_sum[c]] -= w
                sat_count[c] = 2
                crit_sum[c] += x
            else:
                sat_count[c] = sc + 1
                crit_sum[c] += x

        for c in now_fal:
            sc = sat_count[c]
            if sc == 1:
                # x was critical; clause joins the falsified set
                sat_count[c] = 0
                crit_sum[c] = 0
                w = cl_weight[c]
                if cl_hard[c]:
                    self.falsified_hard += 1
                    hard_broken = True
                    make, brk = make_hard, break_hard
                else:
                    self.falsified_soft += w
                    make, brk = make_soft, break_soft
                for v in cl_vars[c]:
                    make[v] += w
                brk[x] -= w
            elif sc == 2:
                sat_count[c] = 1
                crit_sum[c] -= x
                w = cl_weight[c]
                if cl_hard[c]:
                    break_hard[crit_sum[c]] += w
                else:
                    break_soft[crit_sum[c]] += w
            else:
                sat_count[c] = sc - 1
                crit_sum[c] -= x

        if hard_broken:
            self.hard_breaking_flips += 1

    def set_assignment(self, values: list[bool]) -> None:
        """Reposition to an arbitrary assignment by flipping the differing
        variables. Excluded from the hard-break diagnostic."""
        if len(values) != self.formula.num_vars:
            raise ValueError("assignment length mismatch")
        saved = self.hard_breaking_flips
        mine = self.values
        for i, v in enumerate(values):
            if mine[i] != v:
                self.flip(i + 1)
        self.hard_breaking_flips = saved

    def snapshot(self) -> tuple:
        """Every derived field, for exact comparison against a fresh state."""
        return (
            tuple(self.values),
            tuple(self.sat_count),
            tuple(self.crit_sum),
            tuple(self.make_hard),
            tuple(self.break_hard),
            tuple(self.make_soft),
            tuple(self.break_soft),
            self.falsified_hard,
            self.falsified_soft,
        )
