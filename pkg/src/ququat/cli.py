"""Command-line front end.

Subcommands map one-to-one onto the library: state conversion and
validation, gate construction (from unitary, Kraus set or Lindblad
model), analysis, decomposition, composition, measurement, reversibility
certificates, classical four-valued logic, universality tools and circuit
simulation.  Input documents are JSON from a file argument or stdin
("-"); output is JSON on stdout (or an aligned text rendering with
``--format text``).

Exit codes: 0 success, 2 schema error, 3 numeric contract violation,
4 zero-probability post-selection.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import serialization as sz
from .circuits import parse_circuit, run_circuit
from .config import set_tolerances
from .decompositions import (
    euler_angles,
    polar_gate,
    svd_rect_gate,
)
from .errors import NumericContractError, QuquatError, SchemaError, ZeroProbabilityError
from .gates import (
    adjoint_gate,
    analyze_gate,
    apply_nonlinear,
    check_reversible,
    check_reversible_superop,
    compose,
    gate_from_kraus,
    gate_from_matrix,
    gate_from_unitary,
    measurement_gates,
    tensor_gates,
)
from .lindblad import gks_matrix, gks_propagator, liouvillian_superop
from .liouville import (
    DensityMatrix,
    PauliVector,
    density_to_pvec,
    pvec_to_density,
    validate_density,
)
from .mvlogic import (
    builtin,
    closure,
    dnf,
    synthesize_quantum,
    synthesize_unital_extended,
    unital_realizable,
    verify_realization,
)
from .universality import (
    left_mult_superop,
    lie_closure_dim,
    right_mult_superop,
    swap_pseudo_gate,
    trace_decreasing_bound,
)

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_CONTRACT = 3
EXIT_ZERO_PROBABILITY = 4


def _load_document(path: str | None):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def _state_from_json(obj, path: str = "state") -> PauliVector:
    if isinstance(obj, dict) and "entries" in obj:
        return density_to_pvec(sz.density_from_json(obj, path))
    return sz.pvec_from_json(obj, path)


def _format_complex(z: complex, precision: int) -> str:
    return f"{z.real:+.{precision}f}{z.imag:+.{precision}f}j"


def _render_text(obj, precision: int, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, dict):
        for key in obj:
            val = obj[key]
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(val, precision, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_render_scalar(val, precision)}")
    elif isinstance(obj, list):
        if _is_matrix(obj):
            for row in obj:
                cells = [_render_cell(v, precision) for v in row]
                lines.append(pad + "  ".join(cells))
        elif all(isinstance(v, (int, float, bool, str)) or _is_complex_pair(v) for v in obj):
            lines.append(pad + "  ".join(_render_cell(v, precision) for v in obj))
        else:
            for i, v in enumerate(obj):
                lines.append(f"{pad}[{i}]:")
                lines.extend(_render_text(v, precision, indent + 1))
    else:
        lines.append(pad + _render_scalar(obj, precision))
    return lines


def _is_complex_pair(v) -> bool:
    return (
        isinstance(v, list)
        and len(v) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
    )


def _is_matrix(obj) -> bool:
    return (
        isinstance(obj, list)
        and obj
        and all(
            isinstance(row, list)
            and row
            and all(
                (isinstance(v, (int, float)) and not isinstance(v, bool)) or _is_complex_pair(v)
                for v in row
            )
            for row in obj
        )
    )


def _render_cell(v, precision: int) -> str:
    if _is_complex_pair(v):
        return _format_complex(complex(v[0], v[1]), precision)
    return _render_scalar(v, precision)


def _render_scalar(v, precision: int) -> str:
    if isinstance(v, bool) or isinstance(v, (str, int)) or v is None:
        return str(v)
    return f"{v:+.{precision}f}"


def _emit(payload, args) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(_render_text(payload, args.precision)))


# -- subcommand handlers ------------------------------------------------------


def _cmd_state_convert(args):
    doc = _load_document(args.input)
    if isinstance(doc, dict) and "entries" in doc:
        pvec = density_to_pvec(sz.density_from_json(doc, "state"))
    else:
        pvec = sz.pvec_from_json(doc, "state")
    if args.to == "density":
        return sz.density_to_json(pvec_to_density(pvec))
    out = sz.pvec_to_json(pvec)
    if args.representation == "round":
        out = {"n": pvec.n, "rho": [float(x) for x in pvec.round_bracket()]}
    return out


def _cmd_state_validate(args):
    doc = _load_document(args.input)
    if isinstance(doc, dict) and "entries" in doc:
        state = sz.density_from_json(doc, "state")
    else:
        state = sz.pvec_from_json(doc, "state")
    rep = validate_density(state)
    return {
        "hermitian": rep.hermitian,
        "unit_trace": rep.unit_trace,
        "psd": rep.psd,
        "purity_in_bounds": rep.purity_in_bounds,
        "valid": rep.valid,
        "trace": rep.trace,
        "min_eigenvalue": rep.min_eigenvalue,
        "purity": rep.purity,
    }


def _cmd_gate_from_unitary(args):
    doc = _load_document(args.input)
    mat = doc["U"] if isinstance(doc, dict) and "U" in doc else doc
    return sz.gate_to_json(gate_from_unitary(sz.decode_complex_matrix(mat, "U")))


def _cmd_gate_from_kraus(args):
    doc = _load_document(args.input)
    return sz.gate_to_json(gate_from_kraus(sz.kraus_from_json(doc, "kraus")))


def _cmd_gate_from_lindblad(args):
    doc = sz._expect(_load_document(args.input), dict, "lindblad", "an object")
    if "model" in doc:
        model = sz.gks_model_from_json(doc["model"], "lindblad.model")
        tau = doc.get("tau")
        if isinstance(tau, bool) or not isinstance(tau, (int, float)):
            raise SchemaError("lindblad.tau: expected a number")
        gen = gks_matrix(model)
        out = sz.gate_to_json(gks_propagator(gen, float(tau)))
        out["generator"] = sz.encode_real_matrix(gen.matrix)
        return out
    if "H" in doc:
        from scipy.linalg import expm

        h = sz.decode_complex_matrix(doc["H"], "lindblad.H")
        ops = [
            sz.decode_complex_matrix(v, f"lindblad.V[{i}]")
            for i, v in enumerate(doc.get("V", []))
        ]
        t = doc.get("t")
        if isinstance(t, bool) or not isinstance(t, (int, float)):
            raise SchemaError("lindblad.t: expected a number")
        gen = liouvillian_superop(h, ops).to_pauli_generator()
        gate = gate_from_matrix(expm(float(t) * gen))
        out = sz.gate_to_json(gate)
        out["generator"] = sz.encode_real_matrix(gen)
        return out
    raise SchemaError("lindblad: expected 'model' or 'H'")


def _cmd_gate_analyze(args):
    gate = sz.gate_from_json(_load_document(args.input))
    rep = analyze_gate(gate)
    bound_ok, bound = trace_decreasing_bound(gate)
    return {
        "real": rep.real,
        "trace_preserving": rep.trace_preserving,
        "trace_decreasing": rep.trace_decreasing,
        "unital": rep.unital,
        "orthogonal": rep.orthogonal,
        "completely_positive": rep.completely_positive,
        "row0_deviation": rep.row0_deviation,
        "row0_sq_sum": bound,
        "row0_bound_holds": bound_ok,
        "min_choi_eigenvalue": rep.min_choi_eigenvalue,
        "t_norm": rep.t_norm,
    }


def _cmd_gate_decompose(args):
    gate = sz.gate_from_json(_load_document(args.input))
    if args.euler:
        ang = euler_angles(gate)
        return {"alpha": ang.alpha, "theta": ang.theta, "beta": ang.beta}
    if args.polar:
        pol = polar_gate(gate, side=args.side)
        return {
            "side": pol.side,
            "factors": [
                sz.gate_to_json(pol.t_part),
                sz.gate_to_json(pol.orthogonal if pol.side == "right" else pol.symmetric),
                sz.gate_to_json(pol.symmetric if pol.side == "right" else pol.orthogonal),
            ],
        }
    dec = svd_rect_gate(gate)
    return {
        "singular_values": [float(s) for s in dec.singular_values],
        "factors": [
            sz.gate_to_json(dec.t_part),
            sz.gate_to_json(dec.u1),
            sz.gate_to_json(dec.d),
            sz.gate_to_json(dec.u2),
        ],
    }


def _cmd_gate_adjoint(args):
    return sz.gate_to_json(adjoint_gate(sz.gate_from_json(_load_document(args.input))))


def _cmd_gate_compose(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    gates = [
        sz.gate_from_json(g, f"gates[{i}]") for i, g in enumerate(doc.get("gates", []))
    ]
    if len(gates) < 2:
        raise SchemaError("gates: expected at least two gates (applied right to left)")
    out = gates[-1]
    for g in reversed(gates[:-1]):
        out = compose(g, out)
    return sz.gate_to_json(out)


def _cmd_gate_tensor(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    gates = [
        sz.gate_from_json(g, f"gates[{i}]") for i, g in enumerate(doc.get("gates", []))
    ]
    if len(gates) < 2:
        raise SchemaError("gates: expected at least two gates")
    out = gates[0]
    for g in gates[1:]:
        out = tensor_gates(out, g)
    return sz.gate_to_json(out)


def _cmd_measure(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    projs = doc.get("projectors")
    if not isinstance(projs, list) or not projs:
        raise SchemaError("projectors: expected a nonempty list of matrices")
    mats = [sz.decode_complex_matrix(p, f"projectors[{i}]") for i, p in enumerate(projs)]
    gates = measurement_gates(mats)
    state = _state_from_json(doc.get("state"), "state")
    probs = [float(g.entries[0] @ state.P) for g in gates]
    out = {"probabilities": probs}
    post = doc.get("post_select")
    if post is not None:
        if isinstance(post, bool) or not isinstance(post, int) or not 0 <= post < len(gates):
            raise SchemaError("post_select: expected a projector index")
        new_state, p = apply_nonlinear(gates[post], state)
        out["post_select"] = post
        out["probability"] = p
        out["state"] = sz.pvec_to_json(new_state)
    return out


def _cmd_reversible(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    kraus = sz.kraus_from_json(doc.get("kraus"), "kraus")
    proj = sz.decode_complex_matrix(doc.get("projector"), "projector")
    cert = check_reversible(kraus, proj)
    gate = gate_from_kraus(kraus)
    gate_m = gate_from_kraus([proj])
    agree, gamma = check_reversible_superop(gate, gate_m)
    return {
        "reversible": cert.reversible,
        "mu_sq": cert.mu_sq,
        "residual": cert.residual,
        "M": sz.encode_complex_matrix(cert.m),
        "superop_check": {"reversible": agree, "gamma": gamma},
    }


def _table_digits(table) -> str:
    return "".join(str(v) for v in table.outputs)


def _cmd_mvlogic_table(args):
    table = builtin(args.name)
    if args.format == "text":
        print(_table_digits(table))
        return None
    return sz.table_to_json(table)


def _cmd_mvlogic_dnf(args):
    table = sz.table_from_json(_load_document(args.input))
    return {"table": sz.table_to_json(table), "dnf": sz.expression_to_json(dnf(table))}


def _cmd_mvlogic_closure(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    gens_raw = doc.get("generators")
    if not isinstance(gens_raw, list) or not gens_raw:
        raise SchemaError("generators: expected a nonempty list")
    gens = []
    for i, g in enumerate(gens_raw):
        if isinstance(g, str):
            gens.append(builtin(g))
        else:
            gens.append(sz.table_from_json(g, f"generators[{i}]"))
    max_arity = doc.get("max_arity", 2)
    budget = doc.get("budget", 5000)
    result = closure(gens, max_arity=max_arity, budget=budget)
    if args.format == "text":
        # one base-4 output string per discovered table
        for t in result.tables:
            print(_table_digits(t))
        return None
    return {
        "count": result.count(),
        "count_by_arity": {
            str(m): result.count(m) for m in range(1, max_arity + 1)
        },
        "complete": result.complete,
        "tables": [sz.table_to_json(t) for t in result.tables],
    }


def _cmd_mvlogic_synth(args):
    table = sz.table_from_json(_load_document(args.input))
    if args.extended:
        gate = synthesize_unital_extended(table)
    else:
        gate = synthesize_quantum(table)
    out = sz.gate_to_json(gate)
    out["unital_realizable"] = unital_realizable(table)
    return out


def _cmd_mvlogic_verify(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    gate = sz.gate_from_json(doc.get("gate"), "gate")
    mode = doc.get("mode", "plain")
    if "tables" in doc:
        tables = [
            sz.table_from_json(t, f"tables[{i}]") for i, t in enumerate(doc["tables"])
        ]
    else:
        tables = sz.table_from_json(doc.get("table"), "table")
    return {"realizes": verify_realization(gate, tables, mode=mode)}


def _cmd_universality_pseudo(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    a = sz.decode_complex_matrix(doc.get("A"), "A")
    side = doc.get("side", "left")
    if side == "left":
        return {"matrix": sz.encode_complex_matrix(left_mult_superop(a).matrix)}
    if side == "right":
        return {"matrix": sz.encode_complex_matrix(right_mult_superop(a).matrix)}
    raise SchemaError("side: expected 'left' or 'right'")


def _cmd_universality_closure_dim(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    gens_raw = doc.get("generators")
    if not isinstance(gens_raw, list) or not gens_raw:
        raise SchemaError("generators: expected a nonempty list of matrices")
    gens = [
        sz.decode_complex_matrix(g, f"generators[{i}]") for i, g in enumerate(gens_raw)
    ]
    return {"dimension": lie_closure_dim(gens, max_iter=doc.get("max_iter", 100))}


def _cmd_universality_swap(args):
    return {"matrix": sz.encode_complex_matrix(swap_pseudo_gate().matrix)}


def _cmd_simulate(args):
    doc = sz._expect(_load_document(args.input), dict, "input", "an object")
    circuit = parse_circuit(doc.get("circuit"))
    initial = _state_from_json(doc.get("initial"), "initial")
    record = run_circuit(circuit, initial)
    return {
        "cumulative_probability": record.cumulative_probability,
        "final_state": sz.pvec_to_json(record.final_state),
        "steps": [
            {
                "state": sz.pvec_to_json(s.state),
                "probabilities": list(s.probabilities) if s.probabilities else None,
                "probability": s.probability,
                "cumulative_probability": s.cumulative_probability,
            }
            for s in record.steps
        ],
    }


def _cmd_version(args):
    return {"version": __version__}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ququat",
        description="Four-valued logic gates on open n-qubit states.",
    )
    parser.add_argument("--tol", type=float, default=None, help="algebraic tolerance (default 1e-10)")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--precision", type=int, default=6, help="digits in text output")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized subcommands")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(parent, name, handler, with_input=True):
        p = parent.add_parser(name)
        if with_input:
            p.add_argument("input", nargs="?", default="-", help="JSON file or '-' for stdin")
        p.set_defaults(handler=handler)
        return p

    state = sub.add_parser("state").add_subparsers(dest="subcommand", required=True)
    convert = add(state, "convert", _cmd_state_convert)
    convert.add_argument("--to", choices=("pvec", "density"), default="pvec")
    convert.add_argument("--representation", choices=("square", "round"), default="square")
    add(state, "validate", _cmd_state_validate)

    gate = sub.add_parser("gate").add_subparsers(dest="subcommand", required=True)
    add(gate, "from-unitary", _cmd_gate_from_unitary)
    add(gate, "from-kraus", _cmd_gate_from_kraus)
    add(gate, "from-lindblad", _cmd_gate_from_lindblad)
    add(gate, "analyze", _cmd_gate_analyze)
    decompose = add(gate, "decompose", _cmd_gate_decompose)
    mode = decompose.add_mutually_exclusive_group(required=True)
    mode.add_argument("--svd", action="store_true")
    mode.add_argument("--polar", action="store_true")
    mode.add_argument("--euler", action="store_true")
    decompose.add_argument("--side", choices=("left", "right"), default="right")
    add(gate, "adjoint", _cmd_gate_adjoint)
    add(gate, "compose", _cmd_gate_compose)
    add(gate, "tensor", _cmd_gate_tensor)

    add(sub, "measure", _cmd_measure)
    add(sub, "reversible", _cmd_reversible)

    mvlogic = sub.add_parser("mvlogic").add_subparsers(dest="subcommand", required=True)
    table = add(mvlogic, "table", _cmd_mvlogic_table, with_input=False)
    table.add_argument("name")
    add(mvlogic, "dnf", _cmd_mvlogic_dnf)
    add(mvlogic, "closure", _cmd_mvlogic_closure)
    synth = add(mvlogic, "synth", _cmd_mvlogic_synth)
    synth.add_argument("--extended", action="store_true")
    add(mvlogic, "verify", _cmd_mvlogic_verify)

    uni = sub.add_parser("universality").add_subparsers(dest="subcommand", required=True)
    add(uni, "pseudo", _cmd_universality_pseudo)
    add(uni, "closure-dim", _cmd_universality_closure_dim)
    add(uni, "swap", _cmd_universality_swap, with_input=False)

    add(sub, "simulate", _cmd_simulate)
    add(sub, "version", _cmd_version, with_input=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is not None:
        set_tolerances(algebra=args.tol)
    # --seed is reserved for randomized subcommands; everything currently
    # exposed is fully deterministic, so it only participates in the
    # identical-input => identical-output contract.
    try:
        payload = args.handler(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ZeroProbabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO_PROBABILITY
    except (NumericContractError, QuquatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    if payload is not None:
        _emit(payload, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
