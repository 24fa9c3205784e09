import json

import pytest

from invgalois.builders import non_inductive_groupoid, group_regular_example, named_group
from invgalois.cli import main
from invgalois.errors import InvalidStructure, ParseError
from invgalois.formats import (correspondence_dot, emit_act, emit_isg, groupoid_hasse_dot, load_act,
                               parse_act, parse_isg, semigroup_hasse_dot)
from invgalois.sgrp import InverseSemigroup

# -- formats -------------------------------------------------------------------------------


def same_semigroup(S, T):
    return S.names == T.names and S.mul == T.mul and S.inv == T.inv


def test_isg_partial_maps_round_trip(order28):
    S = order28[0]
    text = emit_isg(S)
    assert text.startswith("kind partial_maps\nground 3\n")
    assert same_semigroup(parse_isg(text), S)


def test_isg_table_round_trip():
    G = named_group("S3")
    text = emit_isg(G)
    assert text.startswith("kind table")
    assert same_semigroup(parse_isg(text), G)


def test_isg_table_without_inverse_line():
    S = parse_isg("kind table\nelements e a\nrow e: e a\nrow a: a e\n")
    assert list(S.inv) == [0, 1] and len(S) == 2


def test_isg_closes_generators():
    text = """kind partial_maps   # three rank-2 maps
ground 3
element D12^13 map 1:1 2:3
element S12 map 1:2 2:1
element D12^23 map 1:3 2:2
"""
    assert len(parse_isg(text)) == 28


def test_single_idempotent():
    S = parse_isg("kind table\nelements e\nrow e: e\n")
    assert len(S) == 1 and list(S.idempotents) == [0]


@pytest.mark.parametrize("text,line", [
    ("kind table\nelements e a\nrow e: e a\nrow a: a x\n", 4),
    ("kind partial_maps\nground 3\nelement f map 1:2 2:2\n", 3),
    ("kind partial_maps\nelement f map 1:2\n", 2),
    ("kind groups\n", 1),
    ("kind partial_maps\nground three\n", 2),
    ("kind table\nelements e e\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_isg(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_non_associative_table_is_rejected():
    # a·a = b, b·a = a but a·(a·a) = a·b = b ≠ (a·a)·a = b·a = a
    text = "kind table\nelements a b\nrow a: b b\nrow b: a b\n"
    with pytest.raises(InvalidStructure):
        parse_isg(text)


def test_act_round_trip(order28):
    S, _, a = order28
    b = parse_act(emit_act(a), S)
    assert [set(x) for x in b.supports] == [set(x) for x in a.supports]
    assert [dict(x) for x in b.maps] == [dict(x) for x in a.maps]


def test_act_from_displayed_maps(order28):
    S, _, a = order28
    text = "idempotents 6\nideal I12 = 1 2\nideal I13 = 3 4\nideal I23 = 5 6\n" \
        "map D12^13 : 1>3 2>4\nmap D12^23 : 1>6 2>5\nmap S12 : 1>2 2>1\n"
    b = parse_act(text, S)
    assert [dict(x) for x in b.maps] == [dict(x) for x in a.maps]


def test_act_empty_ideal():
    S = InverseSemigroup(["e"], [[0]], [0])
    b = parse_act("idempotents 0\n", S)
    assert b.algebra.n == 0 and set(b.supports[0]) == set()


def test_act_map_outside_ideal(order28):
    S = order28[0]
    with pytest.raises(InvalidStructure):
        parse_act("idempotents 6\nideal I12 = 1 2\nideal I13 = 3 4\nmap D12^13 : 1>5 2>4\n", S)


def test_act_errors(order28):
    S = order28[0]
    with pytest.raises(ParseError, match="line 2"):
        parse_act("idempotents 6\nideal NOPE = 1\n", S)
    with pytest.raises(ParseError, match="idempotents"):
        parse_act("ideal I12 = 1 2\n", S)
    with pytest.raises(InvalidStructure):
        parse_act("idempotents 2\nideal I12 = 1 7\n", S)


def test_load_act_resolves_semigroup_file(tmp_path, order28):
    S, _, a = order28
    (tmp_path / "s.isg").write_text(emit_isg(S))
    (tmp_path / "s.act").write_text(emit_act(a, "s.isg"))
    S2, b = load_act(tmp_path / "s.act")
    assert same_semigroup(S2, S) and b.supports == a.supports


def test_dot_output(order28):
    S = order28[0]
    dot = semigroup_hasse_dot(S)
    assert dot.startswith('digraph "natural order"') and '"I1" -> "I12";' in dot
    assert '"I12" -> "I1";' not in dot
    G, _ = non_inductive_groupoid()
    assert '"x" -> "z";' in groupoid_hasse_dot(G)


def test_correspondence_dot():
    from invgalois.corr import correspondence
    rep = correspondence(group_regular_example("Z2")[2])
    dot = correspondence_dot(rep)
    assert dot.count("->") == 1 and "|T| = 2" in dot


# -- CLI -------------------------------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("cmd", ["validate", "esn", "subsemigroups", "crossed-product", "galois-checks"])
def test_commands_pass_on_order28(capsys, cmd):
    code, out, _ = run(capsys, cmd, "--example", "paper")
    assert code == 0 and out.rstrip().endswith("result: pass")


def test_correspondence_command(capsys):
    code, out, _ = run(capsys, "correspondence", "--example", "paper", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["counts"]["pairs"] == 31
    labels = [p["label"] for p in data["pairs"]]
    assert labels[0] == "A" and labels[-1] == "R" and len(set(labels)) == 31


def test_json_is_byte_stable(capsys):
    _, first, _ = run(capsys, "galois-checks", "--example", "group:Z2", "--format", "json")
    _, second, _ = run(capsys, "galois-checks", "--example", "group:Z2", "--format", "json")
    assert first == second
    assert json.loads(first)["items"] == {"ii": "pass", "iv": "pass", "v": "pass", "vi": "pass"}


def test_mod_p_scalars(capsys):
    code, out, _ = run(capsys, "galois-checks", "--example", "bounded-rank:3:2", "--scalar", "mod-p",
                       "--prime", "7")
    assert code == 0
    assert run(capsys, "galois-checks", "--example", "paper", "--scalar", "mod-p")[0] == 2


def test_quotient_command(capsys):
    code, out, _ = run(capsys, "quotient", "--example", "group:Z2xZ2", "--normal", "00,01",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["quotient action"]["galois"] and len(data["classes"]) == 2
    assert run(capsys, "quotient", "--example", "paper")[0] == 2
    assert run(capsys, "quotient", "--example", "paper", "--normal", "NOPE")[0] == 2


def test_esn_on_non_inductive_groupoid_fails(capsys):
    code, out, _ = run(capsys, "esn", "--example", "ordered-groupoid")
    assert code == 1 and "inductive: False" in out
    code, out, _ = run(capsys, "validate", "--example", "ordered-groupoid")
    assert code == 0


def test_usage_errors(capsys):
    assert run(capsys, "validate", "--example", "nope")[0] == 2
    assert run(capsys, "validate")[0] == 2
    assert run(capsys, "galois-checks", "--example", "group:Z2", "--format", "dot")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_bad_file_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.isg"
    bad.write_text("kind table\nelements a b\nrow a: b b\nrow b: a b\n")
    code, _, err = run(capsys, "validate", "--isg", str(bad))
    assert code == 1 and "InvalidStructure" in err
    bad.write_text("kind table\nelements a\nrow a: z\n")
    code, _, err = run(capsys, "validate", "--isg", str(bad))
    assert code == 1 and "line 3" in err


def test_non_galois_checks_exit_one(tmp_path, capsys):
    (tmp_path / "z2.isg").write_text(emit_isg(named_group("Z2")))
    (tmp_path / "z2.act").write_text("semigroup z2.isg\nidempotents 1\nideal 0 = 1\nmap 1 : 1>1\n")
    code, out, _ = run(capsys, "galois-checks", "--act", str(tmp_path / "z2.act"))
    assert code == 1 and "items agree with (i): True" in out


def test_example_emit_and_reload(tmp_path, capsys):
    assert run(capsys, "example", "paper", "--out", str(tmp_path))[0] == 0
    assert (tmp_path / "order28.isg").exists()
    code, out, _ = run(capsys, "correspondence", "--act", str(tmp_path / "order28.act"))
    assert code == 0 and "31 pairs" in out
    code, out, _ = run(capsys, "example", "bounded-rank", "3", "1")
    assert code == 0 and "kind partial_maps" in out and "idempotents 3" in out


def test_dot_format(capsys):
    code, out, _ = run(capsys, "correspondence", "--example", "group:Z2xZ2", "--format", "dot")
    assert code == 0 and out.startswith('digraph "correspondence"')


def test_command_alias(capsys):
    code, out, _ = run(capsys, "theorem5", "--example", "group:Z2")
    assert code == 0 and out.rstrip().endswith("result: pass")
