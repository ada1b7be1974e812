"""Tokenizer and parser behaviour, including error positions."""

import random

import pytest

from rosa_lts import (
    INF,
    NIL,
    DuplicateDefinition,
    ExtChoice,
    IntChoice,
    LexError,
    Par,
    ParseError,
    Prefix,
    ProbChoice,
    Seq,
    ValidationError,
    Var,
    parse_process,
    parse_process_text,
    parse_program,
    pretty_print,
    structural_equal,
    tokenize,
)
from gen import gen_process


def kinds(source):
    return [t.kind for t in tokenize(source)]


def test_tokenize_rated_prefix():
    toks = tokenize("<a,0.3>.0")
    assert [(t.kind, t.lexeme) for t in toks] == [
        ("LANGLE", "<"),
        ("IDENT", "a"),
        ("COMMA", ","),
        ("NUMBER", "0.3"),
        ("RANGLE", ">"),
        ("DOT", "."),
        ("ZERO", "0"),
    ]


def test_tokenize_prob_choice():
    assert kinds("P*{0.25}Q") == ["IDENT", "STAR", "LBRACE", "NUMBER", "RBRACE", "IDENT"]


def test_tokenize_empty_and_comments():
    assert tokenize("") == []
    assert tokenize("  # only a comment") == []
    assert kinds("a.0 # trailing") == ["IDENT", "DOT", "ZERO"]


def test_tokenize_operators_and_keywords():
    assert kinds("0;a||{b}c-d+e*{1}inf=()") == [
        "ZERO", "SEMI", "IDENT", "PARBAR", "LBRACE", "IDENT", "RBRACE",
        "IDENT", "MINUS", "IDENT", "PLUS", "IDENT", "STAR", "LBRACE",
        "NUMBER", "RBRACE", "INF", "EQUALS", "LPAREN", "RPAREN",
    ]


def test_tokenize_distinguishes_zero_from_numbers():
    assert kinds("0") == ["ZERO"]
    assert kinds("0.5") == ["NUMBER"]
    assert kinds("10") == ["NUMBER"]
    assert [t.lexeme for t in tokenize("2e3 1.5e-2")] == ["2e3", "1.5e-2"]


def test_token_positions_are_one_based():
    toks = tokenize("a\n  b")
    assert toks[0].position == (1, 1)
    assert toks[1].position == (2, 3)


def test_lex_error_position():
    with pytest.raises(LexError) as err:
        tokenize("a.0 @ b")
    assert err.value.position == (1, 5)


def test_single_pipe_is_not_a_token():
    with pytest.raises(LexError):
        tokenize("a.0|b.0")


def test_parse_parallel_with_sync_set():
    p = parse_process_text("<a,0.3>.0||{a,c}<b,inf>.0")
    assert p == Par(
        frozenset({"a", "c"}),
        Prefix("a", 0.3, NIL),
        Prefix("b", INF, NIL),
    )


def test_parse_prefix_right_nests():
    assert parse_process_text("a.b.0") == Prefix("a", INF, Prefix("b", INF, NIL))


def test_parse_seq_binds_loosest():
    p = parse_process_text("E;(C*{0.25}L)||{i}R")
    assert p == Seq(
        Var("E"),
        Par(
            frozenset({"i"}),
            ProbChoice(0.25, Var("C"), Var("L")),
            Var("R"),
        ),
    )


def test_parse_choices_share_one_level_left_assoc():
    p = parse_process_text("a.P-b.Q+c.R")
    assert p == ExtChoice(
        IntChoice(
            Prefix("a", INF, Var("P")),
            Prefix("b", INF, Var("Q")),
        ),
        Prefix("c", INF, Var("R")),
    )


def test_parse_seq_is_right_associative():
    p = parse_process_text("a.0;b.0;c.0")
    assert p == Seq(
        Prefix("a", INF, NIL),
        Seq(Prefix("b", INF, NIL), Prefix("c", INF, NIL)),
    )


def test_parse_par_is_left_associative():
    p = parse_process_text("a.0||{x}b.0||{y}c.0")
    left = Par(frozenset({"x"}), Prefix("a", INF, NIL), Prefix("b", INF, NIL))
    assert p == Par(frozenset({"y"}), left, Prefix("c", INF, NIL))


def test_parse_empty_sync_set():
    p = parse_process_text("a.0||{}b.0")
    assert isinstance(p, Par) and p.sync == frozenset()


def test_bare_rated_atom_gets_nil_continuation():
    assert parse_process_text("<k,0.8>") == Prefix("k", 0.8, NIL)


def test_zero_accepted_as_probability():
    p = parse_process_text("a.0*{0}b.0")
    assert isinstance(p, ProbChoice) and p.prob == 0.0


def test_parentheses_override_priorities():
    p = parse_process_text("(a.0;b.0)-c.0")
    assert p == IntChoice(
        Seq(Prefix("a", INF, NIL), Prefix("b", INF, NIL)),
        Prefix("c", INF, NIL),
    )


PARSE_ERRORS = [
    ("", "a process"),
    ("a.", "a process"),
    ("<a,>", "a rate"),
    ("<a,0.3.0", "'>'"),
    ("a.0-", "a process"),
    ("a.0)", "an operator or end of input"),
    ("(a.0", "')'"),
    ("0.a", "an operator or end of input"),
    ("(a.0).b", "an operator or end of input"),
    ("a.0*{inf}b.0", "a probability"),
    ("a.0||b.0", "'{' after '||'"),
    ("a.0||{1}b.0", "'}' closing the synchronization set"),
]


@pytest.mark.parametrize("source,expected_fragment", PARSE_ERRORS)
def test_parse_errors(source, expected_fragment):
    with pytest.raises(ParseError) as err:
        parse_process_text(source)
    assert expected_fragment in err.value.expected


def test_parse_error_position_points_into_source():
    with pytest.raises(ParseError) as err:
        parse_process_text("a.0 - ;")
    line, column = err.value.position
    assert line == 1 and 1 <= column <= len("a.0 - ;") + 1


def test_validation_errors_for_out_of_range_literals():
    with pytest.raises(ValidationError):
        parse_process_text("a.0*{1.5}b.0")
    with pytest.raises(ValidationError):
        parse_process_text("<a,0>.0")
    # a probability of exactly 1 is fine
    assert parse_process_text("a.0*{1}b.0").prob == 1.0


def test_parse_program_binds_and_picks_root():
    env = parse_program(
        """
        # two definitions, no main
        P = a.0
        Q = P;b.0
        """
    )
    assert list(env.bindings) == ["P", "Q"]
    assert env.root == "Q"
    assert env.lookup("Q") == Seq(Var("P"), Prefix("b", INF, NIL))


def test_parse_program_bare_line_becomes_main_root():
    env = parse_program("Q = a.0\n0\n")
    assert env.root == "main"
    assert env.lookup("main") == NIL


def test_parse_program_duplicate_definition():
    with pytest.raises(DuplicateDefinition) as err:
        parse_program("P = a.0\nP = b.0\n")
    assert err.value.name == "P"
    assert err.value.line == 2


def test_parse_program_error_positions_use_file_lines():
    with pytest.raises(ParseError) as err:
        parse_program("P = a.0\nQ = b.\n")
    assert err.value.line == 2


def test_parse_program_empty_input_is_an_error():
    with pytest.raises(ParseError):
        parse_program("# nothing but comments\n\n")


def test_undefined_names_become_action_constants():
    env = parse_program("P = x.f\nmain = P;f\n")
    # f is never defined: both uses mean the action constant f.0
    assert env.lookup("P") == Prefix("x", INF, Prefix("f", INF, NIL))
    assert env.lookup("main") == Seq(Var("P"), Prefix("f", INF, NIL))


def test_forward_references_stay_variables():
    env = parse_program("main = A;A\nA = a.0\n")
    assert env.lookup("main") == Seq(Var("A"), Var("A"))


def test_round_trip_on_random_asts():
    rng = random.Random(20210)
    for _ in range(300):
        p = gen_process(rng, depth=3, allow_var=True)
        again = parse_process(tokenize(pretty_print(p)))
        assert structural_equal(again, p), pretty_print(p)
