"""Shared helpers for the test suite."""

import numpy as np

from latwav.intlat import IntMatrix


def random_dyadic_matrices(rng, dim: int, count: int) -> list[IntMatrix]:
    """Random integer matrices with entries in [-9, 9] and determinant +/-2.

    Rejection sampling with a float-determinant prefilter; every kept matrix
    is confirmed with the exact integer determinant.
    """
    if dim == 1:
        choices = [IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[-2]])]
        return [choices[int(rng.integers(0, 2))] for _ in range(count)]
    out: list[IntMatrix] = []
    while len(out) < count:
        batch = rng.integers(-9, 10, size=(4096, dim, dim))
        dets = np.rint(np.linalg.det(batch)).astype(np.int64)
        for raw in batch[np.abs(dets) == 2]:
            m = IntMatrix.from_rows(raw.tolist())
            if abs(m.det()) == 2:
                out.append(m)
                if len(out) == count:
                    break
    return out
