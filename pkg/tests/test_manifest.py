import json
from fractions import Fraction

import pytest

from spirality import (ParseError, Slope, parse_manifest, dumps_manifest,
                       gen_twist_family, gen_matched_slopes, TwistFamilyParams,
                       parse_rational, format_rational, validate)
from spirality.graph import NON_INTEGRAL_H, NON_POSITIVE_H
from spirality.manifest import FdtcInput, loop_to_list, flow_to_dict

GRAPH_DOC = """
{
  "graph": {
    "vertices": [
      {"id": "a", "kind": "horizontal", "orientable": true},
      {"id": "b", "kind": "geometrically_infinite", "orientable": true,
       "internal_omega_generators": 1}
    ],
    "edges": [
      {"id": "e1", "from": "a", "to": "b", "h_ini": 2, "h_ter": 3, "omega": 1},
      {"id": "e2", "from": "b", "to": "a", "h_ini": 3, "h_ter": 2, "omega": -1}
    ]
  }
}
"""


class TestRationalFormat:
    def test_parse(self):
        assert parse_rational("3/2") == Fraction(3, 2)
        assert parse_rational("-3/2") == Fraction(-3, 2)
        assert parse_rational("7") == 7
        assert parse_rational(7) == 7
        assert parse_rational("4/6") == Fraction(2, 3)

    def test_reject_garbage(self):
        for bad in ("3.5", "a", "1/0", "", "1/2/3", None, True):
            with pytest.raises(ParseError):
                parse_rational(bad)

    def test_format(self):
        assert format_rational(Fraction(3, 2)) == "3/2"
        assert format_rational(Fraction(-3, 2)) == "-3/2"
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(5) == "5"


class TestGraphSection:
    def test_parse_graph(self):
        parsed = parse_manifest(GRAPH_DOC)
        g = parsed.graph
        assert [v.id for v in g.vertices] == ["a", "b"]
        assert g.vertex("b").internal_omega_generators == 1
        assert g.edge("e2").omega == -1
        assert validate(g) == []

    def test_unknown_field_strict(self):
        doc = json.loads(GRAPH_DOC)
        doc["graph"]["vertices"][0]["color"] = "red"
        with pytest.raises(ParseError):
            parse_manifest(doc)

    def test_unknown_field_lenient(self):
        doc = json.loads(GRAPH_DOC)
        doc["graph"]["vertices"][0]["color"] = "red"
        parsed = parse_manifest(doc, strict=False)
        assert any("color" in w for w in parsed.warnings)

    def test_unknown_kind(self):
        doc = json.loads(GRAPH_DOC)
        doc["graph"]["vertices"][0]["kind"] = "vertical"
        with pytest.raises(ParseError):
            parse_manifest(doc)

    def test_zero_h_parses_but_fails_validation(self):
        doc = json.loads(GRAPH_DOC)
        doc["graph"]["edges"][0]["h_ini"] = 0
        parsed = parse_manifest(doc)
        assert NON_POSITIVE_H in {d.code for d in validate(parsed.graph)}

    def test_rational_h_needs_flag(self):
        doc = json.loads(GRAPH_DOC)
        doc["graph"]["edges"][0]["h_ini"] = "3/2"
        with pytest.raises(ParseError):
            parse_manifest(doc)
        parsed = parse_manifest(doc, allow_rational_h=True)
        assert parsed.graph.edge("e1").h_ini == Fraction(3, 2)
        diagnostics = validate(parsed.graph)
        assert NON_INTEGRAL_H in {d.code for d in diagnostics}
        assert not any(d.is_error for d in diagnostics)

    def test_malformed_json_reports_position(self):
        with pytest.raises(ParseError) as info:
            parse_manifest("{\n  \"graph\": {,}\n}")
        assert info.value.line == 2

    def test_non_object_rejected(self):
        with pytest.raises(ParseError):
            parse_manifest("[1, 2]")


class TestSlopeField:
    def doc_with_slope(self, slope):
        inst = gen_twist_family(TwistFamilyParams(k=1, p=1, q=1, r_minus=2, r_plus=1))
        doc = json.loads(dumps_manifest(flow_manifest=inst.manifest, loop=inst.loop))
        doc["pieces"][0]["boundaries"][0]["degeneracy_slope"] = slope
        return doc

    def test_plain_pair(self):
        parsed = parse_manifest(self.doc_with_slope([2, 4]))
        slope = parsed.flow.pieces[0].boundaries[0].degeneracy_slope
        assert slope == Slope((1, 2), 2)

    def test_object_with_mult(self):
        parsed = parse_manifest(self.doc_with_slope({"vector": [1, 2], "mult": 3}))
        slope = parsed.flow.pieces[0].boundaries[0].degeneracy_slope
        assert slope == Slope((1, 2), 3)

    def test_zero_vector_rejected(self):
        with pytest.raises(ParseError):
            parse_manifest(self.doc_with_slope([0, 0]))

    def test_wrong_arity_rejected(self):
        with pytest.raises(ParseError):
            parse_manifest(self.doc_with_slope([1, 2, 3]))

    def test_bad_side_rejected(self):
        doc = self.doc_with_slope([1, 1])
        doc["loop"][0]["from_side"] = "left"
        with pytest.raises(ParseError):
            parse_manifest(doc)


class TestRoundTrip:
    def test_flow_manifest_round_trip(self):
        inst = gen_twist_family(TwistFamilyParams(k=-2, p=2, q=3, r_minus=1, r_plus=3, d=2))
        text = dumps_manifest(flow_manifest=inst.manifest, loop=inst.loop,
                              fdtc=FdtcInput(inst.l_plus, inst.l_minus,
                                             inst.reduction_curve, 1),
                              expected=inst.expected)
        parsed = parse_manifest(text)
        assert parsed.expected == inst.expected
        assert parsed.fdtc.m == 1
        again = dumps_manifest(flow_manifest=parsed.flow, loop=parsed.loop,
                               fdtc=parsed.fdtc, expected=parsed.expected)
        assert again == text

    def test_matched_manifest_round_trip(self):
        m, loop = gen_matched_slopes(3, 5)
        text = dumps_manifest(flow_manifest=m, loop=loop)
        parsed = parse_manifest(text)
        assert flow_to_dict(parsed.flow) == flow_to_dict(m)
        assert loop_to_list(parsed.loop) == loop_to_list(loop)

    def test_graph_round_trip(self):
        parsed = parse_manifest(GRAPH_DOC)
        text = dumps_manifest(graph=parsed.graph)
        assert dumps_manifest(graph=parse_manifest(text).graph) == text

    def test_leaf_length_accepts_integers(self):
        inst = gen_twist_family(TwistFamilyParams(k=1, p=1, q=1, r_minus=2, r_plus=1))
        doc = json.loads(dumps_manifest(flow_manifest=inst.manifest, loop=inst.loop))
        doc["pieces"][0]["boundaries"][0]["leaf_length"] = 2
        parsed = parse_manifest(doc)
        assert parsed.flow.pieces[0].boundaries[0].leaf_length == 2
