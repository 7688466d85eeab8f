"""CNF formulas and a DIMACS reader."""

from __future__ import annotations

from dataclasses import dataclass


class DimacsError(ValueError):
    """Malformed DIMACS input; ``code`` is a short machine-readable tag."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 0:
            raise DimacsError("bad_formula", "num_vars must be nonnegative")
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for k, c in enumerate(clauses):
            if not c:
                raise DimacsError("empty_clause", f"clause {k + 1} is empty")
            for l in c:
                if l == 0 or abs(l) > self.num_vars:
                    raise DimacsError(
                        "literal_out_of_range", f"literal {l} in clause {k + 1} is outside 1..{self.num_vars}"
                    )
            if any(-l in c for l in c):
                raise DimacsError("tautological_clause", f"clause {k + 1} contains a literal and its negation")
        object.__setattr__(self, "clauses", clauses)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_3cnf(self) -> bool:
        return all(len(set(c)) == 3 for c in self.clauses)

    def evaluate(self, assignment) -> bool:
        """``assignment[v - 1]`` is the truth value of variable ``v``."""
        if len(assignment) != self.num_vars:
            raise ValueError(f"assignment has {len(assignment)} entries, formula has {self.num_vars} variables")
        return all(any((l > 0) == bool(assignment[abs(l) - 1]) for l in c) for c in self.clauses)

    def satisfying_assignments(self):
        """All satisfying assignments by brute force, in binary order with
        ``True`` first."""
        from itertools import product

        return [a for a in product((True, False), repeat=self.num_vars) if self.evaluate(a)]

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(str(l) for l in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"num_vars": self.num_vars, "clauses": [list(c) for c in self.clauses]}

    @classmethod
    def from_json(cls, data: dict) -> "CnfFormula":
        return cls(int(data["num_vars"]), tuple(tuple(c) for c in data["clauses"]))


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text, preserving clause order."""
    header = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise DimacsError("bad_header", f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError("bad_header", f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError("bad_header", f"line {lineno}: non-integer header fields") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError("bad_header", f"line {lineno}: negative header fields")
            continue
        if header is None:
            raise DimacsError("bad_header", f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError("bad_token", f"line {lineno}: not an integer: {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError("literal_out_of_range", f"line {lineno}: literal {lit} exceeds {header[0]} variables")
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("bad_header", "missing 'p cnf' header")
    if current:
        raise DimacsError("missing_terminator", "last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise DimacsError("bad_header", f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))
