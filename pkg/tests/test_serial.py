"""Lossless text formats for polynomials, graphs, certificates, and reports."""
from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import ffc.serial as serial
from ffc import (
    MatchingUnion,
    ParameterError,
    Permutation,
    QuadScalar,
    SplitMix64,
    certify,
    mfold_root_bound_table,
    rejection_search,
    sample_bipartite,
    sample_nonbipartite,
)
from support import fractions_st, real_rooted_st


class TestScalars:
    @given(fractions_st(max_num=1000, max_den=999))
    def test_fraction_round_trip(self, x):
        assert serial.parse_fraction(str(x)) == x

    @pytest.mark.parametrize(
        "text",
        ["0", "3/2", "-7", "2*sqrt(2)", "-sqrt(5)", "1/2+3*sqrt(2)", "-1/3-5/7*sqrt(3)", "2+sqrt(7)"],
    )
    def test_quad_round_trip(self, text):
        assert str(serial.parse_quad(text)) == text

    @given(
        st.fractions(max_denominator=40),
        st.fractions(max_denominator=40),
        st.sampled_from([0, 2, 3, 5, 7, 8]),
    )
    def test_random_quad_round_trip(self, a, b, r):
        v = QuadScalar(a, b, r)
        assert serial.parse_quad(str(v)) == v

    def test_malformed_quads_are_rejected(self):
        for bad in ("sqrt(-2)", "1+", "2**sqrt(2)", "sqrt(two)", ""):
            with pytest.raises(ParameterError):
                serial.parse_quad(bad)

    def test_decimal_rendering(self):
        assert serial.decimal_str(Fraction(1, 2)) == "0.5"
        assert serial.decimal_str(QuadScalar.sqrt_int(8)) == "2.82842712474619"


class TestPolyDocuments:
    @given(real_rooted_st())
    def test_round_trip(self, p):
        assert serial.parse_poly(serial.poly_to_obj(p)) == p

    def test_coefficients_are_exact_strings(self):
        from ffc import RatPoly

        obj = serial.poly_to_obj(RatPoly.from_roots([Fraction(1, 3)]))
        assert obj["coeffs"] == ["-1/3", "1"]


class TestGraphDocuments:
    def test_round_trip_random_samples(self):
        rng = SplitMix64(8)
        for _ in range(50):
            g = sample_bipartite(3, 2, rng)
            assert serial.parse_graph(serial.graph_to_obj(g)) == g
        for _ in range(50):
            g = sample_nonbipartite(4, 3, rng)
            assert serial.parse_graph(serial.graph_to_obj(g)) == g

    def test_version_mismatch_is_rejected(self):
        g = sample_bipartite(2, 2, SplitMix64(1))
        obj = serial.graph_to_obj(g)
        obj["version"] = 99
        with pytest.raises(ParameterError, match="version"):
            serial.parse_graph(obj)

    def test_wrong_kind_is_rejected(self):
        with pytest.raises(ParameterError, match="kind"):
            serial.parse_graph({"kind": "bound-table", "version": 1})

    def test_non_bijective_permutation_is_rejected(self):
        g = sample_bipartite(2, 2, SplitMix64(1))
        obj = serial.graph_to_obj(g)
        obj["perms"] = [[0, 0], [0, 1]]
        with pytest.raises(ParameterError):
            serial.parse_graph(obj)


class TestCertificateDocuments:
    def test_round_trip(self):
        g = MatchingUnion("bipartite", 2, 3, (Permutation((0, 1)), Permutation((0, 1)), Permutation((1, 0))))
        cert = certify(g)
        obj = serial.certificate_to_obj(cert)
        assert serial.parse_certificate(obj) == cert
        assert obj["bound"]["exact"] == "2*sqrt(2)"
        assert obj["bound"]["decimal"].startswith("2.8284271")


class TestSearchReportDocuments:
    def test_graph_can_be_extracted_from_either_document(self):
        report = rejection_search("bipartite", 2, 3, 50, seed=4)
        report_obj = serial.search_report_to_obj(report, seed=4)
        graph_obj = serial.graph_to_obj(report.graph, seed=4)
        assert serial.graph_from_document(report_obj) == report.graph
        assert serial.graph_from_document(graph_obj) == report.graph

    def test_serialization_is_byte_deterministic(self):
        a = rejection_search("bipartite", 3, 3, 50, seed=12)
        b = rejection_search("bipartite", 3, 3, 50, seed=12)
        assert serial.dumps(serial.search_report_to_obj(a, 12)) == serial.dumps(
            serial.search_report_to_obj(b, 12)
        )


class TestTables:
    def test_table_round_trip_shape(self):
        rows = mfold_root_bound_table([3], [4, 6], "sym")
        obj = serial.table_to_obj(rows)
        assert obj["kind"] == "bound-table"
        assert len(obj["rows"]) == 2
        tsv = serial.table_to_tsv(rows)
        lines = tsv.strip().split("\n")
        assert lines[0] == serial.TABLE_TSV_HEADER
        assert len(lines) == 3
        assert lines[1].split("\t")[3] == "true"


class TestFiles:
    def test_dumps_is_sorted_and_newline_terminated(self):
        text = serial.dumps({"b": 1, "a": 2})
        assert text == '{\n  "a": 2,\n  "b": 1\n}\n'

    def test_write_then_read(self, tmp_path):
        path = tmp_path / "doc.json"
        digest = serial.write_text(path, serial.dumps({"kind": "x"}))
        assert len(digest) == 64
        assert serial.read_json(path) == {"kind": "x"}

    def test_unreadable_json_reports_position(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope}")
        with pytest.raises(ParameterError, match="line"):
            serial.read_json(path)

    def test_manifest_sits_next_to_the_output(self, tmp_path):
        out = tmp_path / "graph.json"
        assert serial.manifest_path(out) == tmp_path / "graph.json.manifest.json"

    def test_manifest_contents(self):
        from ffc import DEFAULT_BUDGETS

        obj = serial.manifest_obj(["ffc", "bound", "--m", "3"], 7, DEFAULT_BUDGETS, {"out.json": "ab" * 32}, 0.25)
        assert obj["kind"] == "run-manifest"
        assert obj["argv"] == ["ffc", "bound", "--m", "3"]
        assert obj["seed"] == 7
        assert json.dumps(obj)  # JSON-serializable throughout
