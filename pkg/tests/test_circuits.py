"""Circuit parsing, gate embedding and execution tests."""

import numpy as np
import pytest

from ququat import (
    NumericContractError,
    PauliIndex,
    PauliVector,
    SchemaError,
    ZeroProbabilityError,
    computational_state,
    embed_gate,
    gate_from_unitary,
    parse_circuit,
    run_circuit,
)
from ququat.liouville import SIGMA

from helpers import random_pvec, random_unitary

RNG = np.random.default_rng(23)

PURE0 = PauliVector(1, [1, 0, 0, 1])
P0_JSON = [[1, 0], [0, 0]]
P1_JSON = [[0, 0], [0, 1]]
HADAMARD = ((SIGMA[1] + SIGMA[3]) / np.sqrt(2)).real


def h_step():
    return {"unitary": [[float(x) for x in row] for row in HADAMARD]}


class TestEmbedding:
    def test_identity_embedding(self):
        g = gate_from_unitary(SIGMA[1])
        assert embed_gate(g, (0,), 1) is g

    def test_matches_unitary_route(self):
        for targets, u_factors in (
            ((0,), (SIGMA[1], np.eye(2))),
            ((1,), (np.eye(2), SIGMA[1])),
        ):
            g = embed_gate(gate_from_unitary(SIGMA[1]), targets, 2)
            ref = gate_from_unitary(np.kron(*u_factors))
            assert np.allclose(g.entries, ref.entries, atol=1e-12)

    def test_permuted_two_ququat_gate(self):
        u = random_unitary(RNG, 4)
        g = gate_from_unitary(u)
        swapped = embed_gate(g, (1, 0), 2)
        # exchanging the tensor factors of U gives the same action
        swap_u = np.zeros((4, 4))
        for a in range(2):
            for b in range(2):
                swap_u[2 * b + a, 2 * a + b] = 1.0
        ref = gate_from_unitary(swap_u @ u @ swap_u)
        assert np.max(np.abs(swapped.entries - ref.entries)) < 1e-10

    def test_three_ququat_middle_target(self):
        u = random_unitary(RNG, 2)
        g = embed_gate(gate_from_unitary(u), (1,), 3)
        ref = gate_from_unitary(np.kron(np.kron(np.eye(2), u), np.eye(2)))
        assert np.max(np.abs(g.entries - ref.entries)) < 1e-10

    def test_bad_targets(self):
        g = gate_from_unitary(SIGMA[1])
        with pytest.raises(NumericContractError):
            embed_gate(g, (2,), 2)
        with pytest.raises(NumericContractError):
            embed_gate(g, (0, 0), 2)


class TestParse:
    def test_minimal(self):
        c = parse_circuit({"n": 1, "steps": [{"named": "not"}]})
        assert c.n == 1
        assert len(c.steps) == 1
        assert c.steps[0].kind == "linear"

    def test_two_step_measure(self):
        c = parse_circuit(
            {
                "n": 1,
                "steps": [
                    h_step(),
                    {"measure": {"projectors": [P0_JSON, P1_JSON]}, "post_select": 0},
                ],
            }
        )
        assert c.steps[1].kind == "measurement"
        assert c.steps[1].post_select == 0

    def test_malformed_complex_pair(self):
        with pytest.raises(SchemaError, match=r"steps\[0\].unitary\[0\]\[0\]"):
            parse_circuit({"n": 1, "steps": [{"unitary": [[[1], 0], [0, 1]]}]})

    def test_unknown_gate_name(self):
        with pytest.raises(SchemaError, match="named"):
            parse_circuit({"n": 1, "steps": [{"named": "frobnicate"}]})

    def test_non_unitary_rejected_at_parse(self):
        with pytest.raises(NumericContractError):
            parse_circuit({"n": 1, "steps": [{"unitary": [[1, 0], [0, 0.5]]}]})

    def test_incomplete_family_needs_post_select(self):
        with pytest.raises(NumericContractError, match="incomplete"):
            parse_circuit({"n": 1, "steps": [{"measure": {"projectors": [P0_JSON]}}]})
        parse_circuit(
            {"n": 1, "steps": [{"measure": {"projectors": [P0_JSON]}, "post_select": 0}]}
        )

    def test_lindblad_step(self):
        c = parse_circuit(
            {
                "n": 1,
                "steps": [
                    {
                        "lindblad": {
                            "model": {"H": [0, 0, 0.5], "C": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]},
                            "tau": 1.0,
                        }
                    }
                ],
            }
        )
        from ququat import named_gate

        assert np.max(np.abs(c.steps[0].gates[0].entries - named_gate("rot1", 1.0).entries)) < 1e-12

    def test_table_step(self):
        c = parse_circuit(
            {"n": 1, "steps": [{"table": {"arity": 1, "outputs": [3, 2, 1, 0]}}]}
        )
        assert c.steps[0].report.trace_preserving


class TestRun:
    def test_not_fixes_maximally_mixed(self):
        c = parse_circuit({"n": 1, "steps": [{"named": "not"}]})
        rec = run_circuit(c, computational_state(PauliIndex((0,))))
        assert np.array_equal(rec.final_state.P, [1, 0, 0, 0])

    def test_born_rule_branches(self):
        c = parse_circuit(
            {"n": 1, "steps": [h_step(), {"measure": {"projectors": [P0_JSON, P1_JSON]}}]}
        )
        rec = run_circuit(c, PURE0)
        assert np.allclose(rec.steps[1].probabilities, [0.5, 0.5], atol=1e-10)
        assert rec.cumulative_probability == 1.0

    def test_post_selection_probability(self):
        c = parse_circuit(
            {
                "n": 1,
                "steps": [
                    h_step(),
                    {"measure": {"projectors": [P0_JSON, P1_JSON]}, "post_select": 0},
                ],
            }
        )
        rec = run_circuit(c, PURE0)
        assert rec.cumulative_probability == pytest.approx(0.5, abs=1e-10)
        assert np.allclose(rec.final_state.P, [1, 0, 0, 1], atol=1e-10)

    def test_luk_neg_table_step(self):
        c = parse_circuit(
            {"n": 1, "steps": [{"table": {"arity": 1, "outputs": [3, 2, 1, 0]}}]}
        )
        rec = run_circuit(c, computational_state(PauliIndex((2,))))
        assert np.array_equal(rec.final_state.P, computational_state(PauliIndex((1,))).P)

    def test_zero_probability_branch(self):
        c = parse_circuit(
            {"n": 1, "steps": [{"measure": {"projectors": [P0_JSON, P1_JSON]}, "post_select": 1}]}
        )
        with pytest.raises(ZeroProbabilityError):
            run_circuit(c, PURE0)

    def test_invalid_initial_state(self):
        c = parse_circuit({"n": 1, "steps": [{"named": "not"}]})
        with pytest.raises(NumericContractError):
            run_circuit(c, PauliVector(1, [1, 1, 1, 1]))

    def test_nonselective_state_is_branch_mixture(self):
        c = parse_circuit(
            {"n": 1, "steps": [{"measure": {"projectors": [P0_JSON, P1_JSON]}}]}
        )
        p = random_pvec(RNG, 1)
        rec = run_circuit(c, p)
        assert np.allclose(rec.final_state.P, [p.P[0], 0, 0, p.P[3]], atol=1e-12)

    def test_two_ququat_targets(self):
        c = parse_circuit(
            {"n": 2, "steps": [{"named": "not", "targets": [1]}]}
        )
        rec = run_circuit(c, computational_state(PauliIndex((0, 3))))
        expected = computational_state(PauliIndex((0, 3))).P.copy()
        expected[3] = -1.0
        assert np.allclose(rec.final_state.P, expected, atol=1e-12)

    def test_states_recorded_per_step(self):
        c = parse_circuit({"n": 1, "steps": [h_step(), {"named": "not"}]})
        rec = run_circuit(c, PURE0)
        assert len(rec.steps) == 2
        assert np.allclose(rec.steps[0].state.P, [1, 1, 0, 0], atol=1e-12)
