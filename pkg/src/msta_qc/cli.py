"""Command-line driver: run circuit files on the multivector and matrix backends.

Circuit file grammar (one statement per line, ``#`` starts a comment)::

    qubits <n>
    init <bitstring>          # qubit 1 is the leftmost (most significant) bit
    init file <path>          # one "re im" amplitude pair per line
    gate <NAME> [key=<real> ...] <q1> [<q2> [<q3>]]

Exit codes: 0 pass, 1 backend mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import gates, oracle
from .algebra import render
from .msta import decode, encode, format_amplitudes, parse_amplitudes
from .universality import (
    Rotor,
    boykin_construct,
    euler_decompose,
    euler_recompose,
    rotor_to_su2,
    synthesize_word,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

GATE_PARAMS: dict[str, tuple[str, ...]] = {
    "X": (), "Y": (), "Z": (), "H": (), "S": (), "T": (),
    "RTHETA": ("theta",),
    "S3POW": ("alpha",),
    "CNOT": (), "CPHASE": (), "SWAP": (),
    "DEUTSCH": ("gamma",),
    "BARENCO": ("phi", "alpha", "theta"),
}
GATE_ARITY = {
    **{k: 1 for k in ("X", "Y", "Z", "H", "S", "T", "RTHETA", "S3POW")},
    "CNOT": 2, "CPHASE": 2, "SWAP": 2, "BARENCO": 2, "DEUTSCH": 3,
}
MATRIX_ONLY = {"DEUTSCH", "BARENCO"}


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Op:
    name: str
    params: tuple[tuple[str, float], ...]
    targets: tuple[int, ...]


@dataclass
class Circuit:
    n: int
    ops: list[Op] = field(default_factory=list)
    init_bits: str | None = None
    init_file: str | None = None

    def initial_state(self, base_dir: Path | None = None) -> np.ndarray:
        if self.init_file is not None:
            path = Path(self.init_file)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            v = parse_amplitudes(path.read_text())
            if len(v) != 2**self.n:
                raise CircuitError(f"{path}: {len(v)} amplitudes for {self.n} qubits")
            return v
        return oracle.basis_state(self.init_bits or "0" * self.n)


def parse_circuit(text: str) -> Circuit:
    n = None
    circuit = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def fail(msg: str):
            raise CircuitError(f"line {lineno}: {msg}: {raw.strip()!r}")

        head, *rest = line.split()
        if head == "qubits":
            if circuit is not None:
                fail("duplicate 'qubits' statement")
            if len(rest) != 1 or not rest[0].isdigit():
                fail("expected 'qubits <n>'")
            n = int(rest[0])
            if not 1 <= n <= oracle.MAX_QUBITS:
                fail(f"qubit count must be 1..{oracle.MAX_QUBITS}")
            circuit = Circuit(n)
        elif circuit is None:
            fail("'qubits <n>' must come first")
        elif head == "init":
            if circuit.init_bits is not None or circuit.init_file is not None:
                fail("duplicate 'init' statement")
            if len(rest) == 2 and rest[0] == "file":
                circuit.init_file = rest[1]
            elif len(rest) == 1 and set(rest[0]) <= {"0", "1"} and len(rest[0]) == n:
                circuit.init_bits = rest[0]
            else:
                fail(f"expected 'init <{n}-bit string>' or 'init file <path>'")
        elif head == "gate":
            if not rest:
                fail("missing gate name")
            name = rest[0].upper()
            if name not in GATE_PARAMS:
                fail(f"unknown gate {rest[0]!r}")
            params: dict[str, float] = {}
            qubits: list[int] = []
            for tok in rest[1:]:
                if "=" in tok:
                    if qubits:
                        fail("parameters must precede qubit indices")
                    key, _, val = tok.partition("=")
                    try:
                        params[key.lower()] = float(val)
                    except ValueError:
                        fail(f"bad number {val!r}")
                else:
                    try:
                        qubits.append(int(tok))
                    except ValueError:
                        fail(f"bad qubit index {tok!r}")
            if set(params) != set(GATE_PARAMS[name]):
                fail(f"gate {name} takes parameters {list(GATE_PARAMS[name])}")
            if len(qubits) != GATE_ARITY[name]:
                fail(f"gate {name} acts on {GATE_ARITY[name]} qubit(s), got {len(qubits)}")
            if any(not 1 <= q <= n for q in qubits):
                fail(f"qubit index out of range 1..{n}")
            if len(set(qubits)) != len(qubits):
                fail("gate qubits must be distinct")
            ordered = tuple((k, params[k]) for k in GATE_PARAMS[name])
            circuit.ops.append(Op(name, ordered, tuple(qubits)))
        else:
            fail(f"unknown statement {head!r}")
    if circuit is None:
        raise CircuitError("missing 'qubits <n>' statement")
    return circuit


def render_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.n}"]
    if c.init_file is not None:
        lines.append(f"init file {c.init_file}")
    elif c.init_bits is not None:
        lines.append(f"init {c.init_bits}")
    for op in c.ops:
        parts = ["gate", op.name]
        parts += [f"{k}={v!r}" for k, v in op.params]
        parts += [str(q) for q in op.targets]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


# backends -----------------------------------------------------------------


def run_matrix(c: Circuit, v0: np.ndarray) -> np.ndarray:
    v = np.asarray(v0, dtype=complex)
    for op in c.ops:
        m = oracle.gate_matrix(op.name, **dict(op.params))
        v = oracle.apply(oracle.tensor_embed(m, op.targets, c.n), v)
    return v


def run_ga(c: Circuit, v0: np.ndarray):
    for op in c.ops:
        if op.name in MATRIX_ONLY:
            raise CircuitError(f"{op.name} is a matrix-only gate; use --backend matrix")
    s = encode(v0)
    for op in c.ops:
        s = gates.catalog_gate(op.name, op.targets, **dict(op.params)).apply(s)
    return s


@dataclass
class Report:
    lines: list[str]
    exit_code: int
    deviation: float | None = None


def run(c: Circuit, backend: str = "both", tolerance: float = 1e-10, precision: int = 12,
        dump_multivector: bool = False, base_dir: Path | None = None) -> Report:
    if backend not in ("ga", "matrix", "both"):
        raise CircuitError(f"unknown backend {backend!r}")
    v0 = c.initial_state(base_dir)
    lines: list[str] = []
    mat = ga_state = None
    if backend in ("matrix", "both"):
        mat = run_matrix(c, v0)
        lines += ["[matrix] amplitudes (qubit 1 = most significant bit):",
                  format_amplitudes(mat, precision)]
    if backend in ("ga", "both"):
        spinor = run_ga(c, v0)
        ga_state = decode(spinor)
        lines += ["[ga] decoded amplitudes:", format_amplitudes(ga_state, precision)]
        if dump_multivector or backend == "ga":
            lines.append(f"[ga] multivector: {render(spinor.mv, precision)}")
    if backend != "both":
        return Report(lines, EXIT_OK)
    dev = float(np.max(np.abs(ga_state - mat)))
    ok = dev <= tolerance
    lines.append(f"max amplitude deviation: {dev:.{precision}g} "
                 f"(tolerance {tolerance:g}) {'PASS' if ok else 'FAIL'}")
    return Report(lines, EXIT_OK if ok else EXIT_MISMATCH, dev)


# universality subcommands -----------------------------------------------------


def _parse_axis(text: str) -> np.ndarray:
    try:
        v = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise CircuitError(f"bad axis {text!r}; expected x,y,z") from None
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise CircuitError(f"bad axis {text!r}; expected three numbers x,y,z")
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise CircuitError("axis must be non-zero")
    return v / norm


def target_rotor(axis: np.ndarray, angle: float) -> Rotor:
    """Rotor of exp(-i angle n.Sigma), i.e. cos(angle) - sin(angle) i n."""
    return Rotor(math.cos(angle), tuple(float(x) for x in -math.sin(angle) * axis))


def _fmt(x: float, p: int) -> str:
    return f"{x:.{p}g}"


def _vec(v, p: int) -> str:
    return "(" + ", ".join(_fmt(float(x), p) for x in v) + ")"


def cmd_boykin(precision: int) -> Report:
    d = boykin_construct()
    p = precision
    lines = [
        f"lambda = {_fmt(d.lam, p)}",
        f"cos(lambda pi) = {_fmt(math.cos(d.lam * math.pi), p)}",
        f"n1 = {_vec(d.n1, p)}",
        f"n2 = {_vec(d.n2, p)}",
        f"n1 . n2 = {_fmt(float(np.dot(d.n1, d.n2)), p)}",
        f"R1 = {render(d.r1.mv, p)}",
        f"R2 = {render(d.r2.mv, p)}",
    ]
    lines.append("checks:")
    for name, val in d.checks.items():
        lines.append(f"  {name}: {_fmt(float(val), 3)} PASS")
    return Report(lines, EXIT_OK)


def cmd_euler(axis: np.ndarray, angle: float, precision: int) -> Report:
    d = boykin_construct()
    target = target_rotor(axis, angle)
    e = euler_decompose(target, d.n1, d.n2)
    back = euler_recompose(e, d.n1, d.n2)
    err = oracle.phase_insensitive_error(rotor_to_su2(back), rotor_to_su2(target))
    p = precision
    return Report(
        [
            f"alpha = {_fmt(e.alpha, p)}",
            f"beta = {_fmt(e.beta, p)}",
            f"gamma = {_fmt(e.gamma, p)}",
            f"recomposition error = {_fmt(err, 3)}",
        ],
        EXIT_OK,
    )


def cmd_synth(axis: np.ndarray, angle: float, max_len: int, precision: int) -> Report:
    target = target_rotor(axis, angle)
    res = synthesize_word(target, max_len)
    return Report(
        [f"word = {res.word}", f"length = {len(res.word)}",
         f"error = {_fmt(res.error, precision)}", f"distinct rotors explored = {res.explored}"],
        EXIT_OK,
    )


# entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msta-qc",
        description="Multivector quantum circuits checked against a matrix simulator.",
        epilog="Bitstrings are MSB-first: qubit 1 is the leftmost bit, |q1 q2 ... qn>.",
    )
    parser.add_argument("--precision", type=int, default=12, help="significant digits (default 12)")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run", help="run a circuit file",
        epilog="Bitstrings are MSB-first: qubit 1 is the leftmost bit, |q1 q2 ... qn>.",
    )
    run_p.add_argument("circuit", help="circuit file ('-' for stdin)")
    run_p.add_argument("--backend", choices=("ga", "matrix", "both"), default="both")
    run_p.add_argument("--tolerance", type=float, default=1e-10)
    run_p.add_argument("--dump-multivector", action="store_true")
    run_p.add_argument("--precision", type=int, default=argparse.SUPPRESS)

    sub.add_parser("boykin", help="rebuild the Boykin rotors, angle and axes")

    angle_help = "target unitary is exp(-i angle n.Sigma)"
    eu = sub.add_parser("euler", help="decompose a rotation about the Boykin axes")
    eu.add_argument("--axis", required=True, help="x,y,z (normalized automatically)")
    eu.add_argument("--angle", type=float, required=True, help=angle_help)

    sy = sub.add_parser("synth", help="search {H,T} words approximating a rotation")
    sy.add_argument("--axis", required=True, help="x,y,z (normalized automatically)")
    sy.add_argument("--angle", type=float, required=True, help=angle_help)
    sy.add_argument("--max-len", type=int, default=12)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            if args.circuit == "-":
                text, base = sys.stdin.read(), None
            else:
                path = Path(args.circuit)
                text, base = path.read_text(), path.parent
            report = run(parse_circuit(text), args.backend, args.tolerance, args.precision,
                         args.dump_multivector, base)
        elif args.command == "boykin":
            report = cmd_boykin(args.precision)
        elif args.command == "euler":
            report = cmd_euler(_parse_axis(args.axis), args.angle, args.precision)
        else:
            if args.max_len < 1:
                raise CircuitError("--max-len must be at least 1")
            report = cmd_synth(_parse_axis(args.axis), args.angle, args.max_len, args.precision)
    except (CircuitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print("\n".join(report.lines))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
