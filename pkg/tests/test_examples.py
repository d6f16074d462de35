"""Built-in example catalog self-consistency."""
import pytest

from qbridge.examples_catalog import examples_catalog, get_example
from qbridge.frontends import parse
from qbridge.ir import expand_macros, validate
from qbridge.simulator import RunOptions, simulate

from oracles import collapse_tree_distribution, linf


def test_catalog_contents():
    names = [e.name for e in examples_catalog()]
    assert names == ["bell", "ghz-3", "qft-2", "teleportation"]


@pytest.mark.parametrize("example", examples_catalog(), ids=lambda e: e.name)
def test_examples_parse_and_simulate(example):
    circuit = expand_macros(parse(example.dialect, example.source))
    assert validate(circuit) == []
    needs_shots = example.name == "teleportation"
    options = RunOptions(shots=512 if needs_shots else 0, seed=3)
    result = simulate(circuit, options)
    assert abs(sum(result.distribution().values()) - 1.0) <= 1e-9


def test_bell_distribution():
    example = get_example("bell")
    result = simulate(expand_macros(parse(example.dialect, example.source)))
    assert result.probabilities == pytest.approx({"00": 0.5, "11": 0.5}, abs=1e-12)


def test_qft2_uniform():
    example = get_example("qft-2")
    result = simulate(expand_macros(parse(example.dialect, example.source)))
    dist = result.full_state_probabilities
    assert set(dist) == {"00", "01", "10", "11"}
    for p in dist.values():
        assert abs(p - 0.25) <= 1e-12


def test_teleportation_moves_the_state():
    example = get_example("teleportation")
    circuit = expand_macros(parse(example.dialect, example.source))
    exact = collapse_tree_distribution(circuit)
    # the teleported |1> always lands in the result register (global bit 2)
    assert all(key[0] == "1" for key, p in exact.items() if p > 1e-12)
    result = simulate(circuit, RunOptions(shots=2048, seed=12))
    assert linf(result.probabilities, exact) < 0.06


def test_get_example_unknown():
    with pytest.raises(KeyError):
        get_example("nothing")
