import numpy as np
import pytest

from coringdescent.algmod import Algebra
from coringdescent.groups import cyclic_group
from coringdescent.partial import PartialAction
from coringdescent import workspace


def diag_algebra(p, n, name=""):
    mul = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        mul[i, i, i] = 1
    return Algebra(p, mul, np.ones(n, dtype=np.int64), name)


F2 = Algebra(2, [[[1]]], [1], "F2")
F3 = Algebra(3, [[[1]]], [1], "F3")
# F4 = F2[w]/(w^2 + w + 1), basis 1, w
F4 = Algebra(2, [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [1, 0], "F4")
# F9 = F3[i]/(i^2 + 1), basis 1, i
F9 = Algebra(3, [[[1, 0], [0, 1]], [[0, 1], [2, 0]]], [1, 0], "F9")
F2xF2 = diag_algebra(2, 2, "F2xF2")
F3xF3 = diag_algebra(3, 2, "F3xF3")
# upper triangular 2x2 over F2, basis E11, E12, E22
T2 = Algebra(
    2,
    [[[1, 0, 0], [0, 1, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 0], [0, 1, 0]], [[0, 0, 0], [0, 0, 0], [0, 0, 1]]],
    [1, 0, 1],
    "T2",
)
C2 = cyclic_group(2)
I2 = np.eye(2, dtype=np.int64)


def swap_action(alg=F2xF2):
    return PartialAction(C2, alg, [[1, 1], [1, 1]], [I2, [[0, 1], [1, 0]]], "swap")


def frobenius_action():
    return PartialAction(C2, F4, [[1, 0], [1, 0]], [I2, [[1, 0], [1, 1]]], "frobenius")


def partial_action():
    return PartialAction(C2, F2xF2, [[1, 1], [1, 0]], [I2, [[1]]], "partial")


def trivial_f3_action():
    return PartialAction(C2, F3, [[1], [1]], [[[1]], [[1]]], "trivial_f3")


@pytest.fixture(scope="session")
def corpus():
    """Every valid bundled workspace, loaded and validated once."""
    out = {}
    for path in workspace.corpus_files():
        ws = workspace.load(path, validate=False)
        if ws.doc.get("expect_valid", True):
            ws.validate()
            out[path.stem] = ws
    return out


def brute_elements(p, n):
    """All vectors of ``F_p^n`` in the library's enumeration order (first coordinate fastest)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * n).reshape(n, -1)[::-1].T
    return grids.astype(np.int64)
