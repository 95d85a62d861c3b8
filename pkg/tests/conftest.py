from fractions import Fraction

import pytest

from wadet.model import validate


def A1_description():
    # five states, two indistinguishable branches, silent self-loops of weight 1
    return {
        "k": 1,
        "states": ["q0", "q1", "q2", "q3", "q4"],
        "initial": {"q0": [0]},
        "events": {"u": None, "a": "rho", "b": "rho"},
        "transitions": [
            ("q0", "a", "q1", [1]),
            ("q0", "a", "q2", [1]),
            ("q1", "u", "q1", [1]),
            ("q2", "u", "q2", [1]),
            ("q1", "b", "q3", [2]),
            ("q2", "b", "q3", [1]),
            ("q3", "u", "q4", [1]),
            ("q4", "a", "q4", [1]),
        ],
    }


def A0_description():
    # silent fan with a silent cycle; both observable branches loop forever
    return {
        "k": 1,
        "states": ["q0", "q1", "q2", "q3", "q4"],
        "initial": {"q0": [0]},
        "events": {"u": None, "a": "a"},
        "transitions": [
            ("q0", "u", "q1", [10]),
            ("q0", "u", "q2", [1]),
            ("q2", "u", "q2", [1]),
            ("q1", "a", "q3", [1]),
            ("q2", "a", "q4", [1]),
            ("q3", "a", "q3", [1]),
            ("q4", "a", "q4", [1]),
        ],
    }


@pytest.fixture
def aut_a1():
    return validate(A1_description())


@pytest.fixture
def aut_a0():
    return validate(A0_description())
