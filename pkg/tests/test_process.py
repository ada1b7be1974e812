"""AST construction, validation and printing."""

import pytest

from rosa_lts import (
    INF,
    NIL,
    DefinitionEnv,
    ExtChoice,
    Infinite,
    IntChoice,
    Nil,
    Par,
    Prefix,
    ProbChoice,
    Seq,
    UnboundVariable,
    Var,
    pretty_print,
    structural_equal,
)
from rosa_lts.process import format_number, format_rate


def a(name="a", cont=NIL):
    return Prefix(name, INF, cont)


def test_rate_and_prob_coercion():
    p = Prefix("a", 1, NIL)
    assert isinstance(p.rate, float) and p.rate == 1.0
    q = ProbChoice(1, NIL, a())
    assert isinstance(q.prob, float) and q.prob == 1.0


def test_infinite_is_a_singleton_value():
    assert Infinite() == INF
    assert Prefix("a", INF, NIL) == Prefix("a", Infinite(), NIL)


@pytest.mark.parametrize(
    "build",
    [
        lambda: Prefix("a", 0, NIL),
        lambda: Prefix("a", -1.5, NIL),
        lambda: Prefix("a", float("inf"), NIL),
        lambda: Prefix("a", float("nan"), NIL),
        lambda: Prefix("a", True, NIL),
        lambda: Prefix("inf", 1.0, NIL),
        lambda: Prefix("0a", 1.0, NIL),
        lambda: Var("inf"),
        lambda: Var(""),
        lambda: ProbChoice(1.5, NIL, NIL),
        lambda: ProbChoice(-0.1, NIL, NIL),
        lambda: Par(frozenset({"not an ident"}), NIL, NIL),
    ],
)
def test_invalid_constructions_are_rejected(build):
    with pytest.raises(ValueError):
        build()


def test_par_sync_becomes_a_frozenset():
    p = Par(["b", "a", "b"], NIL, NIL)
    assert p.sync == frozenset({"a", "b"})


def test_number_formatting_round_trips():
    for value in [0.3, 1.0, 2.5, 0.25, 1e-05, 10.0, 0.1 + 0.2]:
        text = format_number(value)
        assert float(text) == value
    assert format_rate(INF) == "inf"
    assert format_rate(2.0) == "2.0"


PRINT_CASES = [
    (NIL, "0"),
    (Var("P"), "P"),
    (a(), "a.0"),
    (Prefix("a", 0.3, NIL), "<a,0.3>.0"),
    (a("a", a("b")), "a.b.0"),
    # a continuation that binds looser than prefix needs parentheses
    (Prefix("a", INF, ExtChoice(a("b"), a("c"))), "a.(b.0+c.0)"),
    (Seq(a(), Seq(a("b"), a("c"))), "a.0;b.0;c.0"),
    (Seq(Seq(a(), a("b")), a("c")), "(a.0;b.0);c.0"),
    (Par(frozenset(), Par(frozenset(), a(), a("b")), a("c")), "a.0||{}b.0||{}c.0"),
    (Par(frozenset(), a(), Par(frozenset(), a("b"), a("c"))), "a.0||{}(b.0||{}c.0)"),
    (Par(frozenset({"c", "a"}), a(), a("b")), "a.0||{a,c}b.0"),
    (IntChoice(IntChoice(a(), a("b")), a("c")), "a.0-b.0-c.0"),
    (IntChoice(a(), IntChoice(a("b"), a("c"))), "a.0-(b.0-c.0)"),
    (ExtChoice(IntChoice(a(), a("b")), a("c")), "a.0-b.0+c.0"),
    (ProbChoice(0.25, a(), a("b")), "a.0*{0.25}b.0"),
    (IntChoice(Seq(a(), a("b")), a("c")), "(a.0;b.0)-c.0"),
    (Seq(IntChoice(a(), a("b")), a("c")), "a.0-b.0;c.0"),
    (Par(frozenset(), ExtChoice(a(), a("b")), a("c")), "a.0+b.0||{}c.0"),
    (Par(frozenset(), a("c"), ExtChoice(a(), a("b"))), "c.0||{}a.0+b.0"),
    (Seq(a(), Par(frozenset(), a("b"), a("c"))), "a.0;b.0||{}c.0"),
]


@pytest.mark.parametrize("process,expected", PRINT_CASES)
def test_pretty_print(process, expected):
    assert pretty_print(process) == expected


def test_structural_equality_is_order_sensitive():
    left = ExtChoice(a(), a("b"))
    right = ExtChoice(a("b"), a())
    assert structural_equal(left, ExtChoice(a(), a("b")))
    assert not structural_equal(left, right)


def test_definition_env_lookup():
    env = DefinitionEnv(bindings={"P": a()}, root="P")
    assert env.lookup("P") == a()
    assert env.root_process() == a()
    with pytest.raises(UnboundVariable):
        env.lookup("Q")


def test_for_process_wraps_under_main():
    env = DefinitionEnv.for_process(NIL)
    assert env.root == "main"
    assert isinstance(env.root_process(), Nil)
