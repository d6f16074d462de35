"""Standard gate table invariants."""
import math

import numpy as np
import pytest

from qbridge.gates import STANDARD_GATES

from oracles import gate_matrix

THETAS = [0.0, math.pi / 7, math.pi / 2, math.pi, 2 * math.pi]


def _param_sets(gdef):
    if gdef.num_params == 0:
        return [()]
    if gdef.num_params == 1:
        return [(t,) for t in THETAS]
    if gdef.num_params == 2:
        return [(a, b) for a in THETAS[:3] for b in THETAS[2:]]
    return [(a, b, c) for a in THETAS[:2] for b in THETAS[1:3] for c in THETAS[3:]]


@pytest.mark.parametrize("name", sorted(STANDARD_GATES))
def test_unitarity(name):
    gdef = STANDARD_GATES[name]
    dim = 2**gdef.num_qubits
    for params in _param_sets(gdef):
        u = gdef.matrix(params)
        assert u.shape == (dim, dim)
        err = np.max(np.abs(u.conj().T @ u - np.eye(dim)))
        assert err <= 1e-12


def test_names_lowercase_unique():
    names = list(STANDARD_GATES)
    assert all(n == n.lower() for n in names)
    assert len(names) == len(set(names))
    assert {"id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "rx", "ry",
            "rz", "p", "u1", "u2", "u3", "cx", "cy", "cz", "ch", "swap", "crz",
            "cp", "ccx", "cswap"} <= set(names)


@pytest.mark.parametrize("name", sorted(STANDARD_GATES))
def test_matches_reference_matrices(name):
    gdef = STANDARD_GATES[name]
    for params in _param_sets(gdef):
        got = gdef.matrix(params)
        want = gate_matrix(name, params)
        assert np.max(np.abs(got - want)) <= 1e-12


def test_param_count_enforced():
    with pytest.raises(ValueError):
        STANDARD_GATES["rx"].matrix(())
    with pytest.raises(ValueError):
        STANDARD_GATES["h"].matrix((0.3,))
