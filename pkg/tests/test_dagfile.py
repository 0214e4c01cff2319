"""Text format round-trips and parse errors with line numbers."""
import pytest

from causeway import dagfile
from causeway.errors import ParseError
from tests.conftest import make_dag

SAMPLE = """\
dagfile v1
# a comment
var A levels=lo,hi ref=lo
var B levels=0,1,2
edge A -> B
"""


class TestParse:
    def test_basic(self):
        g = dagfile.parse(SAMPLE).graph()
        assert g.variable_names == ("A", "B")
        assert g.variable("A").reference_level == "lo"
        assert g.variable("B").levels == ("0", "1", "2")
        assert g.variable("B").reference_level == "0"
        assert g.edges == frozenset({("A", "B")})

    def test_leading_digit_names_allowed(self):
        g = dagfile.parse("dagfile v1\nvar 1stThing levels=a,b\n").graph()
        assert "1stThing" in g

    def test_missing_header(self):
        with pytest.raises(ParseError, match="line 1"):
            dagfile.parse("var A levels=a,b\n")

    def test_bad_line_number_reported(self):
        text = "dagfile v1\nvar A levels=a,b\nedge A ->\n"
        with pytest.raises(ParseError, match="line 3"):
            dagfile.parse(text)

    def test_duplicate_var(self):
        text = "dagfile v1\nvar A levels=a,b\nvar A levels=a,b\n"
        with pytest.raises(ParseError, match="line 3"):
            dagfile.parse(text)

    def test_unknown_ref_level(self):
        with pytest.raises(ParseError):
            dagfile.parse("dagfile v1\nvar A levels=a,b ref=c\n")

    def test_cpt_lines(self):
        text = (
            "dagfile v1\nvar A levels=a,b\nvar B levels=x,y\nedge A -> B\n"
            "cpt A : 0.3,0.7\ncpt B | a : 0.5,0.5\ncpt B | b : 0.2,0.8\n"
        )
        parsed = dagfile.parse(text)
        assert len(parsed.cpt_lines) == 3
        assert parsed.graph().edges == frozenset({("A", "B")})

    def test_malformed_probability(self):
        text = "dagfile v1\nvar A levels=a,b\ncpt A : 0.3,nope\n"
        with pytest.raises(ParseError, match="line 3"):
            dagfile.parse(text)


class TestFormat:
    def test_round_trip(self, final_graph):
        text = dagfile.format_graph(final_graph)
        assert dagfile.parse(text).graph() == final_graph

    def test_comment_included_and_ignored(self):
        g = make_dag("AB", [("A", "B")])
        text = dagfile.format_graph(g, comment="two\nlines")
        assert "# two" in text and "# lines" in text
        assert dagfile.parse(text).graph() == g

    def test_deterministic(self, final_graph):
        assert dagfile.format_graph(final_graph) == dagfile.format_graph(final_graph)


class TestFingerprint:
    def test_stable_and_structure_sensitive(self, final_graph):
        fp = dagfile.fingerprint(final_graph)
        assert fp == dagfile.fingerprint(final_graph)
        assert len(fp) == 16
        edge = sorted(final_graph.edges)[0]
        assert dagfile.fingerprint(final_graph.without_edge(*edge)) != fp

    def test_insensitive_to_declaration_order(self):
        g1 = make_dag(["A", "B"], [("A", "B")])
        g2 = make_dag(["B", "A"], [("A", "B")])
        assert dagfile.fingerprint(g1) == dagfile.fingerprint(g2)
