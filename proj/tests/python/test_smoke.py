"""Smoke tests for the Python bindings.

Structured results come back as JSON artifacts; ``quiverhom.payload``
unwraps them.  The DOT renders are validated against a grammar for the DOT
language built with pyparsing, standing in for an external checker.
"""
import json
import os

import pyparsing as pp
import pytest

import quiverhom as qh

ALGEBRAS = os.path.join(os.path.dirname(__file__), "..", "..", "algebras")


def load(stem):
    return qh.load(os.path.join(ALGEBRAS, stem + ".alg"))


# ---- presentation surface -------------------------------------------------


def test_algebra_dimension():
    assert qh.algebra_dimension(os.path.join(ALGEBRAS, "string12.alg")) == 38


def test_presentation_properties():
    a = load("string12")
    assert a.name == "string12"
    assert len(a.vertices) == 12
    assert a.dimension() == 38
    assert ("a7_6", "v7", "v6") in a.arrows
    assert "Algebra string12" in repr(a)
    b = qh.from_text(a.text())
    assert b.dimension() == a.dimension()


def test_classification_gates():
    gates = {
        "string12": (True, False),
        "string17": (True, False),
        "gp22": (True, False),
        "a3_linear": (True, True),
        "serial14": (False, True),
        "biserial10": (False, False),
    }
    for stem, (is_string, is_left_serial) in gates.items():
        a = load(stem)
        assert a.is_string() == is_string, stem
        assert a.is_left_serial() == is_left_serial, stem
    c = load("biserial10").classify()
    assert c["special_biserial"] and not c["string_algebra"] and not c["monomial"]


# ---- pdims and syzygies ---------------------------------------------------


def test_pdims():
    g = load("gp22")
    r = g.simple_pdim("e")
    assert not r["finite"] and r["value"] is None and "alpha" in r["cycle"]
    s = load("serial14")
    assert s.simple_pdim("v2") == {"finite": True, "value": 1, "cycle": []}
    a = load("string12")
    assert a.word_pdim("a7_6 a6_3")["finite"]
    rp = a.path_pdim("a7_6")
    assert not rp["finite"] and rp["cycle"]
    assert load("a3_linear").path_pdim("a")["finite"]


def test_string_syzygy_and_oracle_agree():
    a = load("string12")
    words = a.words(4)
    assert len(words) > 20
    checked = 0
    for w in words[::7]:
        comb = a.word_pdim(w)
        orac = a.oracle_word_pdim(w)
        if orac["kind"] == "finite":
            assert comb["finite"] and comb["value"] == orac["value"], w
        if comb["finite"]:
            assert orac["kind"] == "finite" and orac["value"] == comb["value"], w
        for part in a.string_syzygy(w):
            assert part["kind"] in ("path", "word") and part["text"]
        checked += 1
    assert checked >= 5


# ---- characteristic modules ----------------------------------------------


def test_phantom_payloads():
    a = load("string12")
    fin = qh.payload(a.phantom("v7"))
    assert fin["finite"] and fin["anchor"] == "v7"
    assert a.minimal_approximation("v7") == "a7_6 a6_3"

    inf = qh.payload(a.phantom("v1"))
    assert not inf["finite"]
    assert inf["left"]["terminated"] and not inf["right"]["terminated"]
    assert inf["phantom"]["right"]["period"] == ["a1_3", "a6_3~", "a6_2", "a1_2~"]
    assert a.minimal_approximation("v1") is None


def test_decisions():
    a = load("string12")
    d = qh.payload(a.top_embeddable("a7_6 a6_3"))
    assert d["verdict"] in ("yes", "no", "undecided_at_bound")
    s = qh.payload(a.socle_coverable("v7"))
    assert s["verdict"] in ("yes", "no", "undecided_at_bound")


def test_findim_reports():
    a = load("string12")
    assert not a.contravariantly_finite()
    rep = qh.payload(a.findim())
    assert not rep["contravariantly_finite"]
    assert rep["lower_bound_only"] and rep["lfindim"] == 1

    g = load("gp22")
    assert g.contravariantly_finite()
    grep_ = qh.payload(g.findim())
    assert grep_["lfindim"] == 0 and not grep_["lower_bound_only"]

    s = load("serial14")
    srep = qh.payload(s.serial_findim())
    assert srep["lfindim"] == 3


def test_witness():
    a = load("string12")
    w = qh.payload(a.witness("v1", 8))
    assert w["vertices"] == ["v1", "v6"]
    assert load("gp22").witness("e", 8) is None


def test_saguaro():
    s = load("serial14")
    d3 = qh.payload(s.saguaro("v1", 3))
    assert len(d3["nodes"]) == 9 and d3["pdim"] == 3
    text = s.saguaro_render("v1", 1)
    assert text.startswith("layer 0:") and "edges:" in text


def test_band_search():
    assert load("gp22").band_search() == []
    finds = load("string12").band_search()
    assert finds and all(f["pdim"] == 1 for f in finds)
    assert finds[0]["band"] == "(a1_2 a6_2~ a6_3 a1_3~)@v1"


# ---- renders and the DOT grammar -----------------------------------------


def dot_grammar():
    """A grammar for the DOT language subset used by the renderers."""
    ident = pp.Word(pp.alphas + "_", pp.alphanums + "_")
    number = pp.Word(pp.nums)
    quoted = pp.QuotedString('"', esc_char="\\")
    atom = quoted | ident | number
    lbrace, rbrace, lbrack, rbrack, semi, eq = map(pp.Suppress, "{}[];=")

    attr = pp.Group(atom + eq + atom)
    attr_list = lbrack + pp.Opt(pp.DelimitedList(attr, delim=pp.Opt(pp.one_of(", ;")))) + rbrack
    stmt = pp.Forward()
    block = lbrace + pp.ZeroOrMore(stmt) + rbrace
    subgraph = pp.Keyword("subgraph") + pp.Opt(ident) + block
    edge = atom + pp.Suppress(pp.Literal("->")) + atom + pp.Opt(attr_list)
    node = atom + pp.Opt(attr_list)
    stmt <<= pp.Group((subgraph | block | edge | attr | node) + pp.Opt(semi))
    return pp.Keyword("digraph") + pp.Opt(ident) + block


GRAMMAR = dot_grammar()


def assert_valid_dot(text):
    assert text.startswith("digraph")
    GRAMMAR.parse_string(text, parse_all=True)


def test_dot_outputs_parse():
    a = load("string12")
    assert_valid_dot(a.word_render("a7_6 a6_3", dot=True))
    assert_valid_dot(a.phantom_render("v1", window=2, dot=True))
    assert_valid_dot(a.phantom_render("v7", dot=True))
    s = load("serial14")
    assert_valid_dot(s.saguaro_render("v1", 3, dot=True))
    assert_valid_dot(s.saguaro_render("v14", -1, dot=True))
    h = load("string17")
    assert_valid_dot(h.phantom_render("v0", window=3, dot=True))


def test_dot_grammar_rejects_garbage():
    with pytest.raises(pp.ParseException):
        GRAMMAR.parse_string("digraph { n0 -> }", parse_all=True)
    with pytest.raises(pp.ParseException):
        GRAMMAR.parse_string("graph layered { }", parse_all=True)


def test_ascii_render_golden():
    a = load("string12")
    assert a.word_render("a7_6 a6_3") == (
        "layer 0:  #0=v7\n"
        "layer 1:  #1=v6\n"
        "layer 2:  #2=v3\n"
        "edges:\n"
        "  #0 -a7_6-> #1\n"
        "  #1 -a6_3-> #2\n"
    )


# ---- artifacts ------------------------------------------------------------


def test_artifact_round_trips():
    a = load("string12")
    s = load("serial14")
    artifacts = [
        (a, a.encode()),
        (a, a.phantom("v1")),
        (a, a.phantom("v7")),
        (a, a.top_embeddable("a7_6 a6_3")),
        (a, a.witness("v1", 8)),
        (a, a.findim()),
        (s, s.saguaro("v1", 2)),
        (s, s.serial_findim()),
    ]
    seen = set()
    for owner, art in artifacts:
        seen.add(qh.artifact_type(art))
        assert owner.reencode(art) == art
        env = json.loads(art)
        assert env["format"] == "qh-artifact" and env["version"] == 1
    assert {"presentation", "phantom", "decision", "witness", "findim",
            "saguaro", "serial_findim"} <= seen
    b = qh.decode_presentation(a.encode())
    assert b.encode() == a.encode()


def test_payload_rejects_non_artifacts():
    with pytest.raises(ValueError):
        qh.payload("{}")
    with pytest.raises(ValueError):
        qh.payload(json.dumps({"format": "qh-artifact", "version": 2, "payload": {}}))


# ---- error mapping --------------------------------------------------------


def test_domain_errors_surface_as_value_errors():
    b = load("biserial10")
    with pytest.raises(ValueError):
        b.phantom("v1")
    a = load("string12")
    with pytest.raises(ValueError):
        a.word_pdim("a7_6 nonsense")
    with pytest.raises(ValueError):
        a.simple_pdim("v99")
    with pytest.raises(ValueError):
        qh.from_text("algebra broken\nvertex v1\narrow x: v1 -> v9\n")
