import json
import math
import os
import subprocess
from fractions import Fraction

import pytest

import adelent


def test_solenoid_counts_and_jensen():
    doc = adelent.solenoid(3, 2, n=3)
    assert doc["counts"] == ["1", "5", "19"]
    assert abs(doc["jensen_error"]) < 1e-6
    assert abs(adelent.jensen_quadrature(3, 2) - math.log(3)) < 1e-6
    assert adelent.periodic_count(2, 1, 100) == 2**100 - 1


def test_height_of_the_rank_one_point():
    doc = adelent.height([0, 0, 1, -1, 0], (0, 0), depth=10)
    assert abs(doc["hhat"] - 0.0511114082399688 / 2) < 1e-9
    assert abs(doc["residual"]) < 1e-4


def test_eds_terms_are_strings():
    doc = adelent.eds("0,0,1,-1,0", "0;0", N=8)
    assert doc["W"] == ["1", "1", "-1", "1", "2", "-1", "-3", "-5"]
    assert doc["square_ok"]


def test_entropy_and_morphic():
    doc = adelent.entropy("identity-index", horizon=10**5)
    assert abs(doc["estimate"] - 1) < 0.05
    m = adelent.morphic("1,0,0", Fraction(2, 3), depth=8)
    assert m["q"] == "2/3"
    assert m["heights"]["global"] == pytest.approx(math.log(3))


def test_julia_closed_form():
    doc = adelent.julia([2, 0, -1], 2, level=8)
    assert doc["closed_form"] == pytest.approx(math.log(2 + math.sqrt(3)))
    z = complex(0.3, 0.8)
    assert adelent.chebyshev_closed_form(z) - adelent.arcsine_integral(z) == pytest.approx(math.log(2), abs=1e-6)
    assert adelent.julia("1,0,-1", 2 + 1j, level=6)["level"] == 6


def test_errors_map_to_python_exceptions():
    with pytest.raises(adelent.ParseError):
        adelent.morphic("1,2", 1)
    with pytest.raises(ValueError):
        adelent.height("0,0,1", "0;0")
    with pytest.raises(adelent.ComputationError):
        adelent.julia("1,0,0", 2, level=15)


def test_run_matches_the_command_line():
    args = ["solenoid", "--a", "3", "--b", "2"]
    status, out, err = adelent.run(args)
    assert status == 0 and err == ""
    assert json.loads(out)["counts"][0] == "1"
    assert adelent.run(["bogus"])[0] == 2
    cli = os.environ.get("ADELENT_CLI")
    if cli:
        proc = subprocess.run([cli, *args], capture_output=True, text=True, check=True)
        assert proc.stdout == out
