import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from trigspline.expr import (
    BinOp,
    Call,
    Const,
    ExprEvalError,
    ExprSyntaxError,
    Neg,
    Num,
    Var,
    bind,
    evaluate,
    parse,
    to_source,
)


@pytest.mark.parametrize(
    "source, x, constants, expected",
    [
        ("x/(1+x)", 1.0, {}, 0.5),
        ("(C-2-x^2*(1+x))/(1+x)^3", 0.0, {"C": 0.0}, -2.0),
        ("cos(x)*cos(2*x)", 0.0, {}, 1.0),
        ("1.0625*cos(x) - .4*sin(x) - .0625*cos(3*x) + .25*x*sin(x)", 0.0, {}, 1.0),
        ("2+3*4", 0.0, {}, 14.0),
        ("2^3^2", 0.0, {}, 512.0),
        ("-2^2", 0.0, {}, -4.0),
        ("-x^2", 3.0, {}, -9.0),
        ("2^-1", 0.0, {}, 0.5),
        ("--x", 2.0, {}, 2.0),
        ("8/4/2", 0.0, {}, 1.0),
        ("1-2-3", 0.0, {}, -4.0),
        ("pi", 0.0, {}, math.pi),
        ("sqrt(abs(-4))+exp(0)+log(1)+tan(0)", 0.0, {}, 3.0),
        ("1e-3*x", 2.0, {}, 0.002),
    ],
)
def test_evaluate(source, x, constants, expected):
    assert evaluate(parse(source), x, constants) == expected


def test_closed_form_solution_value():
    # sin(0.5)/sin(1) - 0.5, computed independently
    expected = 0.479425538604203 / 0.8414709848078965 - 0.5
    assert evaluate(parse("sin(x)/sin(1) - x"), 0.5) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(0.069746, abs=1e-6)


def test_tree_shape():
    assert parse("-x^2") == Neg(BinOp("^", Var(), Num(2.0)))
    assert parse("a*sin(x)") == BinOp("*", Const("a"), Call("sin", Var()))


def test_vectorised():
    out = evaluate(parse("x^2 + C"), np.array([0.0, 1.0, 2.0]), {"C": 1.0})
    np.testing.assert_array_equal(out, [1.0, 2.0, 5.0])
    assert evaluate(parse("3"), np.zeros(4)).shape == (4,)


def test_non_finite_result_reports_x():
    with pytest.raises(ExprEvalError, match="non-finite") as info:
        evaluate(parse("1/(x-1)"), 1.0)
    assert info.value.x == 1.0
    with pytest.raises(ExprEvalError) as info:
        evaluate(parse("log(x)"), np.array([1.0, 0.5, -1.0]))
    assert info.value.x == -1.0


def test_unbound_constant():
    with pytest.raises(ExprEvalError, match="unbound constant"):
        evaluate(parse("C*x"), 1.0)


@pytest.mark.parametrize(
    "source, offset",
    [("2+", 2), ("(1+x", 4), ("2 3", 2), ("x$1", 1), ("foo(x)", 0), ("sin x", 4), ("", 0), ("  ", 0), ("2*)", 2)],
)
def test_syntax_errors_carry_offset(source, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(source)
    assert info.value.offset == offset


def test_implicit_multiplication_rejected():
    with pytest.raises(ExprSyntaxError, match="expected an operator"):
        parse("2x")


def test_bind():
    f = bind("C/(1+x)", {"C": 10.0})
    assert f(1.0) == 5.0
    assert isinstance(f.expr, BinOp)


leaves = st.one_of(
    st.floats(0, 100, allow_nan=False).map(Num),
    st.just(Var()),
    st.sampled_from(["a", "b"]).map(Const),
)


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.builds(BinOp, st.sampled_from("+-*/^"), children, children),
        st.builds(Call, st.sampled_from(["sin", "cos", "exp", "abs"]), children),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(trees)
def test_print_parse_round_trip(tree):
    reparsed = parse(to_source(tree))
    assert reparsed == tree
    xs = np.random.default_rng(0).uniform(-3, 3, 100)
    env = {"a": 1.5, "b": -0.25}
    try:
        want = evaluate(tree, xs, env)
    except ExprEvalError:
        return
    np.testing.assert_array_equal(evaluate(reparsed, xs, env), want)
