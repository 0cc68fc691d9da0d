"""Command-line front end.

Reads matrices in the text format of :mod:`leu.textio`, runs the
decomposition and the operations derived from it, verifies invariants
against the elimination oracle, and benchmarks multiplication counts.

Exit codes: 0 success, 1 parse/usage error (also a failed ``verify``),
2 singular input to ``invert``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import click

from .decompose import leu_decompose, leu_verify
from .dense import DenseMatrix, MulCounter, mat_mul_classical
from .derived import (
    bruhat_decompose,
    kernel_basis,
    largest_nonsingular_block,
    mat_inverse,
    mat_rank,
)
from .errors import ParseError, ShapeError, SingularError
from .fields import GF
from .textio import format_matrix, format_perm, parse_field, parse_matrix

BENCH_SIZES = (8, 16, 32, 64, 128)
BENCH_FIELD = 65521


@dataclass
class CliConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    mul_mode: str = "classical"
    strassen_cutoff: int = 32
    count_mults: bool = False
    seed: int = 0
    debug_checks: bool = False
    field_override: str | None = None


# ---------------------------------------------------------------------------
# deterministic generator for bench matrices
#
# splitmix64: state advances by the 64-bit golden-ratio constant, the output
# is the finalizing mix of the new state.  The bench matrix of size n under
# seed s starts from state s XOR (n * 0xD1B54A32D192ED03) and is the product
# L*U of a unit lower triangular L and an upper triangular U with nonzero
# diagonal, filled row-major (L first, then U), each entry consuming one
# generator step: subdiagonal and superdiagonal entries are out % p, diagonal
# entries of U are 1 + out % (p - 1).  L*U is full rank by construction.

_M64 = (1 << 64) - 1


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _M64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return state, z ^ (z >> 31)


def bench_matrix(n: int, seed: int, p: int = BENCH_FIELD) -> DenseMatrix:
    """Seeded random full-rank n x n matrix over GF(p)."""
    field = GF(p)
    state = (seed ^ (n * 0xD1B54A32D192ED03)) & _M64
    lo = [[0] * n for _ in range(n)]
    up = [[0] * n for _ in range(n)]
    for i in range(n):
        lo[i][i] = 1
        for j in range(i):
            state, out = _splitmix64(state)
            lo[i][j] = out % p
    for i in range(n):
        state, out = _splitmix64(state)
        up[i][i] = 1 + out % (p - 1)
        for j in range(i + 1, n):
            state, out = _splitmix64(state)
            up[i][j] = out % p
    L = DenseMatrix._wrap(field, lo, n, n)
    U = DenseMatrix._wrap(field, up, n, n)
    return mat_mul_classical(L, U, MulCounter())


# ---------------------------------------------------------------------------


def _load(config: CliConfig) -> DenseMatrix:
    override = parse_field(config.field_override) if config.field_override else None
    try:
        with open(config.input_path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {config.input_path}: {exc}") from None
    return parse_matrix(text, override)


def _emit(config: CliConfig, text: str) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _counter_lines(config: CliConfig, counter: MulCounter) -> str:
    if not config.count_mults:
        return ""
    return f"mults {counter.scalar_mults}\ninvs {counter.scalar_invs}\n"


def run(config: CliConfig) -> int:
    """Execute one command; returns the process exit code."""
    if config.strassen_cutoff < 1:
        raise ParseError("cutoff must be >= 1")
    kw = dict(method=config.mul_mode, cutoff=config.strassen_cutoff)
    cmd = config.command

    if cmd == "bench":
        lines = ["n,mode,mults,invs"]
        for n in BENCH_SIZES:
            A = bench_matrix(n, config.seed)
            for mode in ("classical", "strassen"):
                c = MulCounter()
                leu_decompose(A, c, method=mode, cutoff=config.strassen_cutoff)
                lines.append(f"{n},{mode},{c.scalar_mults},{c.scalar_invs}")
        _emit(config, "\n".join(lines) + "\n")
        return 0

    A = _load(config)
    counter = MulCounter()

    if cmd == "leu":
        res = leu_decompose(A, counter, debug_checks=config.debug_checks, **kw)
        out = format_matrix(res.L) + format_perm(res.E) + format_matrix(res.U)
        out += f"rank {res.rank}\n"
        _emit(config, out + _counter_lines(config, counter))
        return 0

    if cmd == "bruhat":
        res = bruhat_decompose(A, counter, debug_checks=config.debug_checks, **kw)
        out = format_matrix(res.V1) + format_perm(res.w) + format_matrix(res.V2)
        _emit(config, out + _counter_lines(config, counter))
        return 0

    if cmd == "invert":
        inv = mat_inverse(A, counter, debug_checks=config.debug_checks, **kw)
        _emit(config, format_matrix(inv) + _counter_lines(config, counter))
        return 0

    if cmd == "rank":
        r = mat_rank(A, counter, **kw)
        _emit(config, f"rank {r}\n" + _counter_lines(config, counter))
        return 0

    if cmd == "kernel":
        K = kernel_basis(A, counter, debug_checks=config.debug_checks, **kw)
        _emit(config, format_matrix(K) + _counter_lines(config, counter))
        return 0

    if cmd == "block":
        rows, cols = largest_nonsingular_block(A, counter, verify=config.debug_checks, **kw)
        out = "rows" + "".join(f" {i}" for i in rows) + "\n"
        out += "cols" + "".join(f" {j}" for j in cols) + "\n"
        _emit(config, out + _counter_lines(config, counter))
        return 0

    if cmd == "verify":
        return _verify(config, A, counter, kw)

    raise ParseError(f"unknown command {cmd!r}")


def _verify(config: CliConfig, A: DenseMatrix, counter: MulCounter, kw) -> int:
    from . import oracle

    res = leu_decompose(A, counter, debug_checks=config.debug_checks, **kw)
    checks = list(leu_verify(A, res).checks)

    checks.append(("rank-oracle", res.rank == oracle.gauss_rank(A)))

    K = kernel_basis(A, MulCounter(), **kw)
    prod = mat_mul_classical(A, K, MulCounter())
    checks.append(("kernel-annihilation", prod.is_zero()))
    checks.append(("kernel-nullity-oracle", K.cols == oracle.gauss_kernel(A).cols))

    if res.rank == A.rows == A.cols:
        inv = mat_inverse(A, MulCounter(), **kw)
        checks.append(("inverse-oracle", inv == oracle.gauss_inverse(A)
                       and oracle.check_inverse(A, inv)))
    else:
        ok = False
        try:
            mat_inverse(A, MulCounter(), **kw)
        except SingularError as exc:
            ok = exc.rank == res.rank
        checks.append(("inverse-singular-agrees", ok))

    _emit(config, "".join(f"{name}: {'PASS' if ok else 'FAIL'}\n" for name, ok in checks))
    return 0 if all(ok for _, ok in checks) else 1


# ---------------------------------------------------------------------------
# click wiring


def _common(fn):
    for opt in (
        click.option("--output", "output_path", default=None, metavar="PATH",
                     help="Write the result to PATH instead of standard output."),
        click.option("--debug-checks", is_flag=True,
                     help="Assert internal contracts at every recursion step."),
        click.option("--count-mults", is_flag=True,
                     help="Append scalar multiplication/inversion totals."),
        click.option("--cutoff", "strassen_cutoff", type=int, default=32, show_default=True,
                     help="Strassen recursion cutoff."),
        click.option("--mul", "mul_mode", type=click.Choice(["classical", "strassen"]),
                     default="classical", show_default=True,
                     help="Dense multiplication algorithm."),
        click.option("--field", "field_override", default=None, metavar="SPEC",
                     help="Override the field declared in the file, e.g. 'gfp 7' or 'rational'."),
    ):
        fn = opt(fn)
    return fn


@click.group(name="leu")
def cli() -> None:
    """Exact pivot-free matrix decomposition over GF(p) and the rationals."""


def _register(name: str, help_text: str) -> None:
    @cli.command(name=name, help=help_text)
    @click.argument("input_path", metavar="MATRIX_FILE")
    @_common
    def _cmd(input_path, output_path, debug_checks, count_mults,
             strassen_cutoff, mul_mode, field_override):
        return run(CliConfig(
            command=name,
            input_path=input_path,
            output_path=output_path,
            mul_mode=mul_mode,
            strassen_cutoff=strassen_cutoff,
            count_mults=count_mults,
            debug_checks=debug_checks,
            field_override=field_override,
        ))


for _name, _help in (
    ("leu", "Decompose A into L, E, U with L*A*U = E; prints L, E, U and the rank."),
    ("bruhat", "Generalized Bruhat decomposition A = V1*w*V2."),
    ("invert", "Exact inverse; exits 2 with 'singular rank=<r>' if singular."),
    ("rank", "Rank of the matrix."),
    ("kernel", "Basis of the right kernel, one column per vector."),
    ("block", "Row/column indices of a nonsingular block of maximal size."),
    ("verify", "Run the decomposition and print PASS/FAIL per structural check."),
):
    _register(_name, _help)


@cli.command(name="bench", help="Multiplication-count benchmark over seeded matrices; emits CSV.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed of the deterministic matrix generator.")
@click.option("--cutoff", "strassen_cutoff", type=int, default=32, show_default=True)
@click.option("--output", "output_path", default=None, metavar="PATH")
def _bench(seed, strassen_cutoff, output_path):
    return run(CliConfig(
        command="bench",
        seed=seed,
        strassen_cutoff=strassen_cutoff,
        output_path=output_path,
    ))


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except (ParseError, ShapeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SingularError as exc:
        print(f"singular rank={exc.rank}", file=sys.stderr)
        return 2
    return int(rv or 0)


if __name__ == "__main__":
    sys.exit(main())
