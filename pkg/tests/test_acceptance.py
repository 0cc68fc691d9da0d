"""Acceptance suite: one test per release criterion, exact tolerances.

Criteria 1 and 2 share a single randomized pass over 1000+ matrices
spanning GF(7), GF(65521) and the rationals, sizes 1..48, planted ranks
0..n.  Every numeric bound asserted here is pinned; there is no epsilon
anywhere because the arithmetic is exact.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
PASS lines.
"""

import random
import time

import pytest

from leu import (
    DenseMatrix,
    MulCounter,
    SingularError,
    TruncPerm,
    bruhat_decompose,
    format_matrix,
    format_perm,
    invert_lower_triangular,
    invert_upper_unitriangular,
    kernel_basis,
    largest_nonsingular_block,
    leu_decompose,
    mat_inverse,
    mat_rank,
    reversal_perm,
    tp_to_dense,
)
from leu import oracle
from leu.cli import bench_matrix, main
from leu.dense import is_lower_triangular, is_upper_triangular, is_upper_unitriangular
from helpers import FIELDS, GF7, mul, planted_rank

# reps per size band, per field: (max size, repetitions)
_BANDS = ((8, 18), (16, 11), (32, 5), (48, 2))


def _case_schedule():
    cases = []
    for field in FIELDS:
        for n in range(1, 49):
            reps = next(r for hi, r in _BANDS if n <= hi)
            for k in range(reps):
                cases.append((field, n, k))
    return cases


def _rank_for(n, k, rng):
    if k == 0:
        return n
    if k == 1:
        return 0 if n > 1 else n
    return rng.randint(0, n)


def _unit_column(d, n, j, one):
    return d[j][j] == one and all(not d[i][j] for i in range(n) if i != j)


def _unit_row(d, n, i, one):
    return d[i][i] == one and all(not d[i][j] for j in range(n) if j != i)


@pytest.fixture(scope="module")
def structural_suite():
    """One decomposition pass shared by criteria 1 and 2."""
    rng = random.Random(0xACCE9701)
    cases = _case_schedule()
    assert len(cases) >= 1000
    recon_failures = []
    support_failures = []
    t0 = time.monotonic()
    for field, n, k in cases:
        r = _rank_for(n, k, rng)
        A = planted_rank(field, n, r, rng)
        res = leu_decompose(A)
        one = field.one_raw
        ld, ud = res.L._d, res.U._d

        ok = (
            is_lower_triangular(res.L)
            and all(ld[i][i] for i in range(n))
            and is_upper_unitriangular(res.U)
            and isinstance(res.E, TruncPerm)
            and res.E.n == n
            and mul(mul(res.L, A), res.U) == tp_to_dense(res.E, field)
        )
        if not ok:
            recon_failures.append((field, n, r))
            continue

        i_e = res.E.row_support().mask
        j_e = res.E.col_support().mask
        li = invert_lower_triangular(res.L)._d
        ui = invert_upper_unitriangular(res.U)._d
        ok = all(
            _unit_column(ld, n, j, one) and _unit_column(li, n, j, one)
            for j in range(n)
            if not (i_e >> j) & 1
        ) and all(
            _unit_row(ud, n, i, one) and _unit_row(ui, n, i, one)
            for i in range(n)
            if not (j_e >> i) & 1
        )
        if not ok:
            support_failures.append((field, n, r))
    elapsed = time.monotonic() - t0
    return {
        "cases": len(cases),
        "recon_failures": recon_failures,
        "support_failures": support_failures,
        "elapsed": elapsed,
    }


def test_criterion_1_reconstruction(structural_suite):
    s = structural_suite
    assert s["cases"] >= 1000
    assert s["recon_failures"] == []
    assert s["elapsed"] < 60.0, f"suite took {s['elapsed']:.1f}s"
    print(f"\nACCEPTANCE 1 (reconstruction, {s['cases']} cases, "
          f"{s['elapsed']:.1f}s): PASS")


def test_criterion_2_support_form(structural_suite):
    s = structural_suite
    assert s["support_failures"] == []
    print(f"\nACCEPTANCE 2 (support form on {s['cases']} cases): PASS")


def test_criterion_3_oracle_equivalence():
    rng = random.Random(0xACCE9703)
    checked = 0
    for trial in range(510):
        field = FIELDS[trial % 3]
        n = rng.randint(1, 32)
        r = rng.randint(0, n)
        A = planted_rank(field, n, r, rng)
        rank = oracle.gauss_rank(A)
        assert mat_rank(A) == rank, (field, n, r)
        K = kernel_basis(A)
        assert K.cols == n - rank
        assert K.cols == oracle.gauss_kernel(A).cols
        assert mul(A, K).is_zero()
        if rank == n:
            inv = mat_inverse(A)
            assert inv == oracle.gauss_inverse(A)
            assert oracle.check_inverse(A, inv)
        else:
            with pytest.raises(SingularError) as exc:
                mat_inverse(A)
            assert exc.value.rank == rank
        checked += 1
    assert checked >= 500
    print(f"\nACCEPTANCE 3 (oracle equivalence, {checked} instances): PASS")


def test_criterion_4_bruhat():
    rng = random.Random(0xACCE9704)
    checked = 0
    for trial in range(310):
        field = FIELDS[trial % 3]
        n = rng.randint(1, 16)
        r = n if trial % 4 == 0 else rng.randint(0, n)
        M = planted_rank(field, n, r, rng)
        br = bruhat_decompose(M)
        assert is_upper_triangular(br.V1)
        assert is_upper_triangular(br.V2)
        assert br.w.rank == n  # full permutation
        assert mul(mul(br.V1, tp_to_dense(br.w, field)), br.V2) == M
        if oracle.gauss_rank(M) == n:
            assert all(br.V1._d[i][i] for i in range(n))
            assert all(br.V2._d[i][i] for i in range(n))
        checked += 1
    assert checked >= 300
    print(f"\nACCEPTANCE 4 (Bruhat, {checked} instances): PASS")


def test_criterion_5_complexity():
    t0 = time.monotonic()

    # (a) every internal node adds exactly 17 half-size classical products
    for n in (16, 32, 64):
        log = []
        c = MulCounter()
        leu_decompose(bench_matrix(n, 5), c, _node_log=log)
        internal = (4 ** (n.bit_length()) - 1) // 3  # nodes of size >= 2
        assert len(log) == internal - (4 ** (n.bit_length() - 1))
        assert all(own == 17 * (size // 2) ** 3 for size, own in log)
        assert c.scalar_mults == 17 * (n**3 - n**2) // 4

    # (b) total classical count at n=128 sits at the n^3 leading coefficient
    classical_ratio = None
    for seed in (0, 1, 2):
        A = bench_matrix(128, seed)
        c = MulCounter()
        leu_decompose(A, c)
        classical_ratio = c.scalar_mults / 128**3
        assert 3.4 <= classical_ratio <= 4.6, classical_ratio

    # (c) doubling under Strassen at cutoff 1 grows by at most 7.6x
    c128 = MulCounter()
    leu_decompose(bench_matrix(128, 11), c128, method="strassen", cutoff=1)
    c256 = MulCounter()
    leu_decompose(bench_matrix(256, 11), c256, method="strassen", cutoff=1)
    ratio = c256.scalar_mults / c128.scalar_mults
    assert ratio <= 7.6, ratio

    elapsed = time.monotonic() - t0
    assert elapsed < 300.0, f"complexity suite took {elapsed:.1f}s"
    print(f"\nACCEPTANCE 5 (complexity accounting, {elapsed:.1f}s, "
          f"t(128)/128^3={classical_ratio:.3f}, strassen ratio={ratio:.3f}): PASS")


def test_criterion_6_determinism():
    rng = random.Random(0xACCE9706)
    for case in range(50):
        field = FIELDS[case % 3]
        n = rng.randint(1, 40)
        A = planted_rank(field, n, rng.randint(0, n), rng)

        def render(parallel):
            res = leu_decompose(A, parallel=parallel)
            text = format_matrix(res.L) + format_perm(res.E) + format_matrix(res.U)
            return text.encode()

        first = render(False)
        assert render(False) == first  # repeated sequential run
        assert render(True) == first  # concurrent step-4 branches
    print("\nACCEPTANCE 6 (determinism, 50 seeded cases x 3 runs): PASS")


def test_criterion_7_worked_traces():
    A = DenseMatrix(GF7, [[3, 1], [2, 5]])
    res = leu_decompose(A)
    assert res.L == DenseMatrix(GF7, [[5, 0], [2, 4]])
    assert res.E == TruncPerm(2, [(0, 0), (1, 1)])
    assert res.U == DenseMatrix(GF7, [[1, 2], [0, 1]])
    assert mat_inverse(A) == DenseMatrix(GF7, [[2, 1], [2, 4]])

    B = DenseMatrix(GF7, [[0, 1], [0, 0]])
    resb = leu_decompose(B)
    assert resb.L == DenseMatrix.identity(GF7, 2)
    assert resb.U == DenseMatrix.identity(GF7, 2)
    assert resb.E == TruncPerm(2, [(0, 1)])
    assert kernel_basis(B) == DenseMatrix(GF7, [[1], [0]])
    br = bruhat_decompose(B)
    assert br.V1 == DenseMatrix(GF7, [[1, 0], [0, 0]])
    assert br.w == reversal_perm(2)
    assert br.V2 == DenseMatrix(GF7, [[0, 0], [0, 1]])
    print("\nACCEPTANCE 7 (worked micro-traces): PASS")


def test_criterion_8_largest_nonsingular_block():
    rng = random.Random(0xACCE9708)
    checked = 0
    for trial in range(310):
        field = FIELDS[trial % 3]
        n = rng.randint(2, 20)
        r = rng.randint(0, n - 1)  # strictly singular
        A = planted_rank(field, n, r, rng)
        rows, cols = largest_nonsingular_block(A)
        rank = oracle.gauss_rank(A)
        assert len(rows) == len(cols) == rank, (field, n, r)
        if rank:
            sub = A.select(rows, cols)
            assert oracle.gauss_rank(sub) == rank, (
                f"counterexample to the support-index interpretation: "
                f"{field!r} n={n} planted={r}"
            )
        checked += 1
    assert checked >= 300
    print(f"\nACCEPTANCE 8 (largest nonsingular block, {checked} singular instances): PASS")


def test_criterion_9_cli_contract(tmp_path, capsys):
    from pathlib import Path

    data = Path(__file__).parent / "data"
    golden = Path(__file__).parent / "golden"

    # golden outputs re-parse and match byte for byte
    assert main(["leu", str(data / "gf7_worked.txt"), "--count-mults"]) == 0
    assert capsys.readouterr().out == (golden / "leu_gf7_worked.txt").read_text()
    assert main(["verify", str(data / "gf7_worked.txt")]) == 0
    assert capsys.readouterr().out == (golden / "verify_worked.txt").read_text()

    # format round trip through a file
    out = tmp_path / "inv.txt"
    assert main(["invert", str(data / "rational_3x3.txt"), "--output", str(out)]) == 0
    from leu import parse_matrix

    reparsed = parse_matrix(out.read_text())
    assert format_matrix(reparsed) == (golden / "invert_rational.txt").read_text()

    # exit codes 0 / 1 / 2
    assert main(["rank", str(data / "gf7_worked.txt")]) == 0
    capsys.readouterr()
    assert main(["leu", str(data / "bad_truncated.txt")]) == 1
    capsys.readouterr()
    assert main(["invert", str(data / "gf7_nilpotent.txt")]) == 2
    assert capsys.readouterr().err == "singular rank=1\n"

    # seeded bench emits identical bytes on identical seeds
    b1, b2 = tmp_path / "b1.csv", tmp_path / "b2.csv"
    assert main(["bench", "--seed", "3", "--output", str(b1)]) == 0
    assert main(["bench", "--seed", "3", "--output", str(b2)]) == 0
    assert b1.read_bytes() == b2.read_bytes()
    lines = b1.read_text().splitlines()
    assert lines[0] == "n,mode,mults,invs"
    assert len(lines) == 11
    print("\nACCEPTANCE 9 (CLI contract): PASS")
