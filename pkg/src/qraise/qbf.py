"""Closed quantified boolean formulas and two independent validity deciders.

``qbf_valid`` recurses on the prefix, splitting the matrix by substitution:
an existential variable is an OR over its two substituted matrices, a
universal one an AND. ``qbf_valid_by_table`` never substitutes anything: it
tabulates the matrix over all prefix assignments and folds the table one
quantifier level at a time. The two must always agree; each guards the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ContractError, ResourceLimitError
from .formulas import Formula, evaluate, substitute, truth_table, variables

# Hard cap on the prefix length for both deciders.
QBF_VAR_CAP = 16


class Quantifier(Enum):
    EXISTS = "exists"
    FORALL = "forall"


@dataclass(frozen=True, slots=True)
class Qbf:
    """A closed QBF: ordered prefix (outermost first) plus a matrix."""

    prefix: tuple[tuple[Quantifier, str], ...]
    matrix: Formula

    def __post_init__(self):
        names = [v for _, v in self.prefix]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ContractError(f"duplicate prefix variable: {', '.join(dupes)}")
        free = variables(self.matrix) - set(names)
        if free:
            raise ContractError(f"free matrix variable: {', '.join(sorted(free))}")


def _check_cap(q: Qbf) -> None:
    if len(q.prefix) > QBF_VAR_CAP:
        raise ResourceLimitError(
            f"QBF with {len(q.prefix)} prefix variables exceeds the cap of {QBF_VAR_CAP}"
        )


def qbf_valid(q: Qbf) -> bool:
    """Decide validity by recursive substitution on the outermost variable."""
    _check_cap(q)
    return _valid_rec(q.prefix, q.matrix)


def _valid_rec(prefix: tuple[tuple[Quantifier, str], ...], matrix: Formula) -> bool:
    if not prefix:
        return evaluate(matrix, {})
    (quant, name), rest = prefix[0], prefix[1:]
    on_true = _valid_rec(rest, substitute(matrix, name, True))
    if quant is Quantifier.EXISTS:
        return on_true or _valid_rec(rest, substitute(matrix, name, False))
    return on_true and _valid_rec(rest, substitute(matrix, name, False))


def qbf_valid_by_table(q: Qbf) -> bool:
    """Decide validity by tabulating the matrix and folding the table.

    Row ``j`` of the table assigns prefix variable ``i`` (outermost first)
    the bit ``(j >> (n-1-i)) & 1``, so the innermost variable varies fastest
    and each fold halves the table by combining adjacent rows.
    """
    _check_cap(q)
    n = len(q.prefix)
    order = {name: n - 1 - i for i, (_, name) in enumerate(q.prefix)}
    table = truth_table(q.matrix, order, n)
    values = [bool((table >> j) & 1) for j in range(1 << n)]
    for quant, _ in reversed(q.prefix):
        if quant is Quantifier.EXISTS:
            values = [values[2 * k] or values[2 * k + 1] for k in range(len(values) // 2)]
        else:
            values = [values[2 * k] and values[2 * k + 1] for k in range(len(values) // 2)]
    return values[0]
