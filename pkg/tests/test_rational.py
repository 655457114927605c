"""Exact rational arithmetic layer: construction, parsing, formatting."""

import os
import subprocess
import sys

import pytest

from convval import ParseError, Q
from convval.rational import format_rational, format_vector, parse_rational, parse_vector, rat, rat_vector


def test_construction_and_reduction():
    assert Q(3, 6) == Q(1, 2)
    assert Q(-4, 8) == Q(-1, 2)
    assert Q(7) == Q(14, 2)


def test_rat_accepts_ints_strings_and_rationals():
    assert rat(5) == Q(5)
    assert rat("3/4") == Q(3, 4)
    assert rat("-2") == Q(-2)
    assert rat(Q(9, 3)) == Q(3)
    assert rat(2, 3) == Q(2, 3)


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(TypeError):
        rat_vector([1, 0.25])


def test_parse_rational_reduces():
    assert parse_rational("3/6") == Q(1, 2)
    assert format_rational(parse_rational("3/6")) == "1/2"


def test_parse_rational_errors_carry_location():
    with pytest.raises(ParseError) as info:
        parse_rational("1/0", where="pieces[0].b")
    assert "pieces[0].b" in str(info.value)
    with pytest.raises(ParseError):
        parse_rational("abc", where="x")
    with pytest.raises(ParseError):
        parse_rational("1.5", where="x")


def test_format_rational_always_shows_denominator():
    assert format_rational(Q(2)) == "2/1"
    assert format_rational(Q(0)) == "0/1"
    assert format_rational(Q(-3, 4)) == "-3/4"


def test_vector_parse_and_format_round_trip():
    v = parse_vector("1/2, -3, 0", where="point")
    assert v == (Q(1, 2), Q(-3), Q(0))
    assert parse_vector(format_vector(v)) == v


def test_parse_vector_error_location():
    with pytest.raises(ParseError) as info:
        parse_vector("1, x, 3", where="direction")
    assert "direction" in str(info.value)


def test_backend_selection_env_override():
    # The fallback backend must produce identical arithmetic and formatting.
    code = (
        "from convval.rational import Q, format_rational, BACKEND;"
        "v = Q(3, 6) + Q(1, 3);"
        "print(BACKEND, format_rational(v))"
    )
    env = dict(os.environ, CONVVAL_RATIONAL="fraction")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    assert out.stdout.split() == ["fraction", "5/6"]


def test_backend_default_prefers_gmpy2_when_available():
    from convval.rational import BACKEND

    try:
        import gmpy2  # noqa: F401

        assert BACKEND == "gmpy2"
    except ImportError:
        assert BACKEND == "fraction"
