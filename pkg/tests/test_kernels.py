from __future__ import annotations

import random

import pytest

from arrcover import _purekernels, kernels


def _cases(seed, count=60):
    rng = random.Random(seed)
    for _ in range(count):
        r, c = rng.randint(0, 90), rng.randint(1, 150)
        yield rng, r, c


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")
def test_gf2_backends_agree():
    for rng, r, c in _cases(1):
        rows = [rng.getrandbits(c) for _ in range(r)]
        assert kernels.gf2_rref(rows, c) == _purekernels.gf2_rref(rows, c)
        assert kernels.gf2_rank(rows, c) == _purekernels.gf2_rank(rows, c)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")
@pytest.mark.parametrize("p", [3, 5, 101, 2147483647])
def test_fp_backends_agree(p):
    for rng, r, c in _cases(p, 30):
        rows = [[rng.randrange(p) if rng.random() < 0.6 else 0 for _ in range(c)] for _ in range(r)]
        a_rows, a_piv = kernels.fp_rref(rows, c, p)
        b_rows, b_piv = _purekernels.fp_rref(rows, c, p)
        assert list(a_piv) == list(b_piv)
        assert [list(x) for x in a_rows] == [list(x) for x in b_rows]
        assert kernels.fp_rank(rows, c, p) == len(b_piv)


def test_pure_fallback_selected_by_env(monkeypatch):
    import importlib

    monkeypatch.setenv("ARRCOVER_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.gf2_rank([0b11, 0b11], 2) == 1
    finally:
        monkeypatch.delenv("ARRCOVER_PURE_PYTHON")
        importlib.reload(kernels)
