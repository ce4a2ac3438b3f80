"""Smoke test for the dressed_qubits extension module.

Build and install first:
    maturin build --release -m crates/py/Cargo.toml
    pip install --force-reinstall target/wheels/dressed_qubits-*.whl
"""

import json
import math
import sys

import dressed_qubits as dq


def main() -> int:
    d = dq.DMVector([0.1, 0.2, 0.3])
    assert abs(d.d_abs - math.sqrt(0.14)) < 1e-15, d
    assert d.exchange_residual() < 1e-12

    m = dq.LeakageModel(4, 1.0, [0.3 + 0.1j, -0.2j])
    assert m.h1_dressing_residual() < 1e-12
    assert m.identity_residual(2.5) < 1e-12
    assert m.phase_gate_residual() < 1e-12

    assert (1, 5) in dq.allowed_pairs(2)
    assert dq.gate_equivalence((1, 5), 0.8, d) < 1e-12
    assert dq.circuit_residual(d, 20, seed=1) < 1e-10
    try:
        dq.gate_equivalence((3, 4), 0.8, d)
    except ValueError:
        pass
    else:
        raise AssertionError("pair (3, 4) should be rejected")

    angle, _ = dq.swap_angle()
    assert abs(angle - math.pi) < 1e-12
    assert dq.relocation_residual(1.1) < 1e-12

    overlap, p_singlet, degenerate = dq.prepare_logical_zero(d)
    assert overlap > 1 - 1e-10 and p_singlet > 1 - 1e-9 and not degenerate

    r = dq.RingModel(4, 0.0).residual_scaling(0, [1e-2, 1e-3])
    assert 80 <= r[0] / r[1] <= 125

    report = json.loads(dq.run_suite(json.dumps({"suite": "su2", "trials": 5, "seed": 7})))
    assert report["schema_version"] == 1 and report["pass"], report
    try:
        dq.run_suite('{"levels": 99}')
    except ValueError as e:
        assert "levels" in str(e)
    else:
        raise AssertionError("out-of-range levels should be rejected")

    print(f"dressed_qubits {dq.__version__}: smoke test passed ({len(report['cases'])} su2 cases)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
