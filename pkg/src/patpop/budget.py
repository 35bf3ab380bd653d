"""Work budgets.

Enumeration grows like the Catalan numbers, so every exhaustive operation
checks its request against a :class:`Budget` and refuses with
:class:`~patpop.errors.BudgetExceeded` instead of hanging.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import comb

from .errors import BudgetExceeded

ENV_CELLS = "PATPOP_BUDGET_CELLS"
DEFAULT_CELLS = 50_000_000


def _env_cells() -> int:
    raw = os.environ.get(ENV_CELLS)
    if raw is None or raw.strip() == "":
        return DEFAULT_CELLS
    try:
        cells = int(raw)
    except ValueError:
        raise BudgetExceeded(f"{ENV_CELLS} must be an integer, got {raw!r}") from None
    if cells <= 0:
        raise BudgetExceeded(f"{ENV_CELLS} must be positive, got {cells}")
    return cells


@dataclass(frozen=True)
class Budget:
    """Caps on host length, pattern length, partition size and total work.

    ``cells`` bounds the number of (host, index-set) pairs a single
    popularity computation may touch; it defaults to ``$PATPOP_BUDGET_CELLS``.
    """

    n_max: int = 10
    k_max: int = 6
    partition_n_max: int = 20
    cells: int = field(default_factory=_env_cells)

    def check_n(self, n: int) -> None:
        if n < 0:
            raise BudgetExceeded(f"length must be nonnegative, got {n}", n=n)
        if n > self.n_max:
            raise BudgetExceeded(f"n={n} exceeds budget n_max={self.n_max}", n=n, n_max=self.n_max)

    def check_k(self, k: int) -> None:
        if k > self.k_max:
            raise BudgetExceeded(f"k={k} exceeds budget k_max={self.k_max}", k=k, k_max=self.k_max)

    def check_partition_n(self, n: int) -> None:
        if n > self.partition_n_max:
            raise BudgetExceeded(
                f"n={n} exceeds partition budget {self.partition_n_max}", n=n, n_max=self.partition_n_max
            )

    def check_cells(self, n: int, k: int) -> None:
        from .perm import catalan

        cells = catalan(n) * comb(n, k)
        if cells > self.cells:
            raise BudgetExceeded(
                f"popularity at n={n}, k={k} needs {cells} cells, budget is {self.cells}",
                n=n, k=k, cells=cells, budget=self.cells,
            )


_default: Budget | None = None


def default_budget() -> Budget:
    global _default
    if _default is None:
        _default = Budget()
    return _default


def set_default_budget(budget: Budget | None) -> None:
    """Replace the process-wide default (``None`` re-reads the environment)."""
    global _default
    _default = budget
