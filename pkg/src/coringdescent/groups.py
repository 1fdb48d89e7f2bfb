"""Finite groups presented by a Cayley table."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from . import exactla as la


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on indices ``0..order-1`` with ``table[i, j] = i * j``.

    ``elements`` optionally carries a concrete realisation of each index
    (algebra vectors for unit groups, matrices for automorphism groups).
    """

    table: np.ndarray
    identity: int = 0
    elements: tuple[Any, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "table", np.asarray(self.table, dtype=np.int64))

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    @property
    def inverse(self) -> list[int]:
        inv = []
        for i in range(self.order):
            row = np.nonzero(self.table[i] == self.identity)[0]
            inv.append(int(row[0]) if row.size else -1)
        return inv

    def check(self) -> list[str]:
        """Group-axiom violations; empty iff the table is a group."""
        n = self.order
        t = self.table
        problems = []
        if n == 0:
            return ["empty table"]
        if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
            return [f"table of shape {t.shape} is not closed on {n} elements"]
        if not (0 <= self.identity < n):
            return [f"identity index {self.identity} out of range"]
        e = self.identity
        if not (np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))):
            problems.append(f"identity: element {e} is not a two-sided identity")
        # (ij)k == i(jk) over all triples
        lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        for i, j, k in bad[:5]:
            problems.append(f"associativity fails at ({i},{j},{k})")
        if len(bad) > 5:
            problems.append(f"associativity fails at {len(bad) - 5} further triples")
        for i in range(n):
            if not ((t[i] == e).any() and (t[:, i] == e).any()):
                problems.append(f"inverse: element {i} has no inverse")
        return problems

    def is_group(self) -> bool:
        return not self.check()


def group_from_elements(
    elements: Sequence[Any],
    product: Callable[[Any, Any], Any],
    keyfn: Callable[[Any], Any] = la.key,
) -> FiniteGroup:
    """Cayley table of a finite set closed under ``product``.

    The identity is expected at index 0; closure failures raise ``KeyError``.
    """
    index = {keyfn(x): i for i, x in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            table[i, j] = index[keyfn(product(x, y))]
    return FiniteGroup(table, 0, tuple(elements))


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, 0)
