"""CNF formulas, DIMACS ingestion, 3-SAT normalization, and brute-force
model counting.

The counter enumerates all 2^n assignments; it is an exactness oracle, so
exceeding its variable cap raises instead of sampling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import CapExceededError, DimacsError, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_MAX_COUNT_VARIABLES = 24


class Literal(NamedTuple):
    variable: int
    negated: bool = False

    @classmethod
    def from_dimacs(cls, value: int) -> "Literal":
        if value == 0:
            raise ValidationError("0 is a clause terminator, not a literal")
        return cls(abs(value), value < 0)

    def to_dimacs(self) -> int:
        return -self.variable if self.negated else self.variable

    def negate(self) -> "Literal":
        return Literal(self.variable, not self.negated)

    def __str__(self) -> str:
        return ("-" if self.negated else "") + f"x{self.variable}"


Clause = tuple[Literal, ...]


@dataclass(frozen=True)
class CnfFormula:
    num_variables: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.num_variables < 0:
            raise ValidationError("negative variable count")
        for clause in self.clauses:
            for lit in clause:
                if not 1 <= lit.variable <= self.num_variables:
                    raise ValidationError(
                        f"literal {lit} outside declared variables 1..{self.num_variables}"
                    )

    def variables_used(self) -> frozenset[int]:
        return frozenset(l.variable for c in self.clauses for l in c)


@dataclass(frozen=True)
class Assignment:
    """Total truth assignment: values[v-1] is the value of variable v."""

    values: tuple[bool, ...]

    def value(self, variable: int) -> bool:
        if not 1 <= variable <= len(self.values):
            raise ValidationError(f"variable {variable} outside assignment domain")
        return self.values[variable - 1]


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS cnf. Comment lines are ignored; clauses end with 0.

    Errors (bad header, literal out of declared range, clause left open at
    end of input) are reported with their 1-based line number.
    """
    num_vars: int | None = None
    clauses: list[Clause] = []
    current: list[Literal] = []
    clause_open_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError("duplicate problem header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                num_vars = int(parts[2])
                declared_clauses = int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if num_vars < 0 or declared_clauses < 0:
                raise DimacsError(f"malformed header {line!r}", lineno)
            continue
        if num_vars is None:
            raise DimacsError("clause data before 'p cnf' header", lineno)
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsError(f"not an integer: {token!r}", lineno) from None
            if value == 0:
                clauses.append(tuple(current))
                current = []
                continue
            if abs(value) > num_vars:
                raise DimacsError(
                    f"literal {value} out of range (header declares {num_vars} variables)",
                    lineno,
                )
            if not current:
                clause_open_line = lineno
            current.append(Literal.from_dimacs(value))

    if current:
        raise DimacsError("clause missing its 0 terminator", clause_open_line)
    if num_vars is None:
        raise DimacsError("no 'p cnf' header found", 1)
    return CnfFormula(num_vars, tuple(clauses))


def to_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_variables} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(l.to_dimacs()) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def normalize_3sat(formula: CnfFormula) -> CnfFormula:
    """Normalize a formula to 3-SAT form.

    Duplicate literals inside a clause are dropped, tautological clauses
    (containing x and -x) are removed (the count is logged as a warning),
    and any clause still longer than 3 literals is rejected: this tooling
    consumes 3-SAT input, it does not re-encode wider clauses.
    """
    out: list[Clause] = []
    tautologies = 0
    for idx, clause in enumerate(formula.clauses, start=1):
        if len(clause) == 0:
            raise ValidationError(f"clause {idx} is empty")
        seen: list[Literal] = []
        taut = False
        for lit in clause:
            if lit.negate() in seen:
                taut = True
                break
            if lit not in seen:
                seen.append(lit)
        if taut:
            tautologies += 1
            continue
        if len(seen) > 3:
            raise ValidationError(
                f"clause {idx} has {len(seen)} distinct literals after dedup; 3-SAT allows at most 3"
            )
        out.append(tuple(seen))
    if tautologies:
        logger.warning("normalize_3sat removed %d tautological clause(s)", tautologies)
    return CnfFormula(formula.num_variables, tuple(out))


def is_3sat_normalized(formula: CnfFormula) -> bool:
    for clause in formula.clauses:
        if not 1 <= len(clause) <= 3:
            return False
        vars_in_clause = [l.variable for l in clause]
        if len(set(vars_in_clause)) != len(vars_in_clause):
            return False
    return True


def count_satisfying(
    formula: CnfFormula, max_variables: int = DEFAULT_MAX_COUNT_VARIABLES
) -> int:
    """Exact model count over all 2^num_variables assignments.

    A formula with no clauses counts every assignment; an empty clause
    makes the count 0.
    """
    n = formula.num_variables
    if n > max_variables:
        raise CapExceededError(
            f"{n} variables exceeds the brute-force cap of {max_variables}"
        )
    # bit i of an assignment mask = value of variable i+1
    masks = []
    for clause in formula.clauses:
        pos = 0
        neg = 0
        for lit in clause:
            bit = 1 << (lit.variable - 1)
            if lit.negated:
                neg |= bit
            else:
                pos |= bit
        masks.append((pos, neg))
    full = (1 << n) - 1
    count = 0
    for m in range(1 << n):
        inv = full & ~m
        for pos, neg in masks:
            if not (m & pos) and not (inv & neg):
                break
        else:
            count += 1
    return count


def satisfying_assignments(formula: CnfFormula) -> Iterable[Assignment]:
    """Yield every satisfying assignment, in bitmask order of the values."""
    n = formula.num_variables
    for m in range(1 << n):
        values = tuple(bool(m >> i & 1) for i in range(n))
        if evaluate(formula, Assignment(values)):
            yield Assignment(values)


def evaluate(formula: CnfFormula, assignment: Assignment) -> bool:
    for clause in formula.clauses:
        if not any(assignment.value(l.variable) ^ l.negated for l in clause):
            return False
    return True
