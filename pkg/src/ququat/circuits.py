"""Circuit documents: parse gate sequences from JSON and fold them over states.

A circuit fixes the ququat count n and lists steps.  Gate-bearing steps
hold one of: a named single-ququat gate, a unitary, a Kraus set, a
Lindblad model with an evolution time, a raw gate matrix, or a classical
table to synthesize.  Measurement steps hold a projector family and
optionally a post-selection index; without post-selection the family
must be complete and the recorded state is the nonselective mixture
(the summed, trace-preserving gate), with the branch probabilities
recorded.  Gates are constructed and analyzed eagerly so schema and
contract failures surface at parse time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .config import tolerances
from .decompositions import NAMED_GATES, named_gate
from .errors import NumericContractError, SchemaError
from .gates import (
    GateMatrix,
    GateReport,
    TRACE_PRESERVING,
    analyze_gate,
    apply_linear,
    apply_nonlinear,
    gate_from_kraus,
    gate_from_unitary,
    measurement_gates,
)
from .lindblad import gks_matrix, gks_propagator, liouvillian_superop
from .liouville import PauliVector, validate_density
from .mvlogic import synthesize_quantum
from . import serialization as sz

__all__ = [
    "Circuit",
    "CircuitStep",
    "RunRecord",
    "StepRecord",
    "embed_gate",
    "parse_circuit",
    "run_circuit",
]


def embed_gate(gate: GateMatrix, targets, n: int) -> GateMatrix:
    """Extend a square k-ququat gate to n ququats, acting on ``targets``.

    The remaining positions carry the identity; ``targets`` gives the
    circuit positions of the gate's own indices in order.
    """
    targets = tuple(int(t) for t in targets)
    if not gate.square:
        raise NumericContractError("only square gates can be embedded in a circuit")
    k = gate.n_in
    if len(targets) != k:
        raise NumericContractError(f"gate acts on {k} ququats, got targets {targets}")
    if len(set(targets)) != k or any(not 0 <= t < n for t in targets):
        raise NumericContractError(f"targets {targets} invalid for n={n}")
    if k == n and targets == tuple(range(n)):
        return gate
    rest = [p for p in range(n) if p not in targets]
    order = list(targets) + rest
    big = np.kron(gate.entries, np.eye(4 ** (n - k)))
    # perm[a] = index into `big` whose digits are a's digits read off in
    # `order`; then E_full = big[perm][:, perm].
    shifts = [2 * (n - 1 - p) for p in range(n)]
    idx = np.arange(4**n)
    perm = np.zeros(4**n, dtype=np.int64)
    for pos_in_big, p in enumerate(order):
        digit = (idx >> shifts[p]) & 3
        perm |= digit << (2 * (n - 1 - pos_in_big))
    entries = big[np.ix_(perm, perm)]
    return GateMatrix(n, n, entries, gate.kind, gate.cp_certified)


@dataclass(frozen=True)
class CircuitStep:
    """One parsed step: a linear gate or a measurement family, embedded to n."""

    kind: str  # "linear" | "measurement"
    gates: tuple[GateMatrix, ...]
    targets: tuple[int, ...]
    post_select: int | None
    report: GateReport | tuple[GateReport, ...]


@dataclass(frozen=True)
class Circuit:
    n: int
    steps: tuple[CircuitStep, ...]


@dataclass(frozen=True)
class StepRecord:
    """State after a step; branch probabilities for measurement steps."""

    state: PauliVector
    probabilities: tuple[float, ...] | None
    probability: float | None
    cumulative_probability: float


@dataclass(frozen=True)
class RunRecord:
    steps: tuple[StepRecord, ...]
    cumulative_probability: float

    @property
    def final_state(self) -> PauliVector:
        return self.steps[-1].state


_GATE_KEYS = ("named", "unitary", "kraus", "lindblad", "gate", "table")


def _build_step_gate(step: dict, path: str) -> GateMatrix:
    present = [k for k in _GATE_KEYS if k in step]
    if len(present) != 1:
        raise SchemaError(f"{path}: expected exactly one of {_GATE_KEYS}, got {present}")
    key = present[0]
    if key == "named":
        name = step["named"]
        if not isinstance(name, str) or name not in NAMED_GATES:
            raise SchemaError(f"{path}.named: unknown gate name {name!r}")
        param = step.get("param")
        return named_gate(name, param)
    if key == "unitary":
        return gate_from_unitary(sz.decode_complex_matrix(step["unitary"], f"{path}.unitary"))
    if key == "kraus":
        return gate_from_kraus(sz.kraus_from_json(step["kraus"], f"{path}.kraus"))
    if key == "lindblad":
        spec = step["lindblad"]
        if not isinstance(spec, dict):
            raise SchemaError(f"{path}.lindblad: expected an object")
        if "model" in spec:
            model = sz.gks_model_from_json(spec["model"], f"{path}.lindblad.model")
            tau = spec.get("tau")
            if isinstance(tau, bool) or not isinstance(tau, (int, float)):
                raise SchemaError(f"{path}.lindblad.tau: expected a number")
            return gks_propagator(gks_matrix(model), float(tau))
        if "H" in spec:
            h = sz.decode_complex_matrix(spec["H"], f"{path}.lindblad.H")
            vs = spec.get("V", [])
            if not isinstance(vs, list):
                raise SchemaError(f"{path}.lindblad.V: expected a list of matrices")
            ops = [
                sz.decode_complex_matrix(v, f"{path}.lindblad.V[{i}]") for i, v in enumerate(vs)
            ]
            t = spec.get("t")
            if isinstance(t, bool) or not isinstance(t, (int, float)):
                raise SchemaError(f"{path}.lindblad.t: expected a number")
            gen = liouvillian_superop(h, ops).to_pauli_generator()
            return GateMatrix(
                int(round(np.log2(h.shape[0]))),
                int(round(np.log2(h.shape[0]))),
                expm(float(t) * gen),
                TRACE_PRESERVING,
            )
        raise SchemaError(f"{path}.lindblad: expected 'model' or 'H'")
    if key == "gate":
        return sz.gate_from_json(step["gate"], f"{path}.gate")
    return synthesize_quantum(sz.table_from_json(step["table"], f"{path}.table"))


def _decode_targets(step: dict, k: int, n: int, path: str) -> tuple[int, ...]:
    if "targets" not in step:
        if k > n:
            raise NumericContractError(f"{path}: gate needs {k} ququats, circuit has {n}")
        return tuple(range(k))
    targets = step["targets"]
    if not isinstance(targets, list) or not all(
        isinstance(t, int) and not isinstance(t, bool) for t in targets
    ):
        raise SchemaError(f"{path}.targets: expected a list of integers")
    return tuple(targets)


def parse_circuit(doc) -> Circuit:
    """Validate a circuit document and construct all gates eagerly."""
    doc = sz._expect(doc, dict, "circuit", "an object")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("circuit.n: expected a positive integer")
    raw_steps = doc.get("steps")
    if not isinstance(raw_steps, list):
        raise SchemaError("circuit.steps: expected a list")
    steps = []
    for i, raw in enumerate(raw_steps):
        path = f"steps[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{path}: expected an object")
        if "measure" in raw:
            spec = raw["measure"]
            if not isinstance(spec, dict) or "projectors" not in spec:
                raise SchemaError(f"{path}.measure: expected an object with 'projectors'")
            projs = spec["projectors"]
            if not isinstance(projs, list) or not projs:
                raise SchemaError(f"{path}.measure.projectors: expected a nonempty list")
            mats = [
                sz.decode_complex_matrix(p, f"{path}.measure.projectors[{j}]")
                for j, p in enumerate(projs)
            ]
            gates = measurement_gates(mats)
            k = gates[0].n_in
            targets = _decode_targets(raw, k, n, path)
            embedded = tuple(embed_gate(g, targets, n) for g in gates)
            post = raw.get("post_select")
            if post is not None:
                if isinstance(post, bool) or not isinstance(post, int):
                    raise SchemaError(f"{path}.post_select: expected an integer")
                if not 0 <= post < len(embedded):
                    raise SchemaError(
                        f"{path}.post_select: index {post} out of range for "
                        f"{len(embedded)} projectors"
                    )
            else:
                total = np.sum([g.entries for g in embedded], axis=0)
                delta = np.zeros(4**n)
                delta[0] = 1.0
                if np.max(np.abs(total[0] - delta)) > tolerances.algebra:
                    raise NumericContractError(
                        f"{path}: projector family is incomplete; give post_select"
                    )
            steps.append(
                CircuitStep(
                    kind="measurement",
                    gates=embedded,
                    targets=targets,
                    post_select=post,
                    report=tuple(analyze_gate(g) for g in embedded),
                )
            )
        else:
            gate = _build_step_gate(raw, path)
            targets = _decode_targets(raw, gate.n_in, n, path)
            embedded = embed_gate(gate, targets, n)
            if embedded.kind != TRACE_PRESERVING:
                raise NumericContractError(
                    f"{path}: non-measurement steps need a trace-preserving gate"
                )
            steps.append(
                CircuitStep(
                    kind="linear",
                    gates=(embedded,),
                    targets=targets,
                    post_select=None,
                    report=analyze_gate(embedded),
                )
            )
    return Circuit(n=n, steps=tuple(steps))


def run_circuit(circuit: Circuit, initial: PauliVector) -> RunRecord:
    """Fold the steps over an initial state.

    Post-selected measurements renormalize the state and multiply the
    cumulative probability; zero-probability branches raise.  Every
    recorded state is checked to be a valid density matrix.
    """
    if initial.n != circuit.n:
        raise NumericContractError(
            f"initial state has n={initial.n}, circuit expects n={circuit.n}"
        )
    if not validate_density(initial).valid:
        raise NumericContractError("initial state is not a valid density matrix")
    state = initial
    cumulative = 1.0
    records = []
    for step in circuit.steps:
        if step.kind == "linear":
            state = apply_linear(step.gates[0], state)
            records.append(StepRecord(state, None, None, cumulative))
        else:
            probs = tuple(float(g.entries[0] @ state.P) for g in step.gates)
            if step.post_select is not None:
                state, p = apply_nonlinear(step.gates[step.post_select], state)
                cumulative *= p
                records.append(StepRecord(state, probs, p, cumulative))
            else:
                total = np.sum([g.entries @ state.P for g in step.gates], axis=0)
                state = PauliVector(circuit.n, total)
                records.append(StepRecord(state, probs, None, cumulative))
        if not validate_density(state).valid:
            raise NumericContractError("circuit produced an invalid state")
    return RunRecord(steps=tuple(records), cumulative_probability=cumulative)
