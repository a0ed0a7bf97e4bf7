"""Deterministic report rendering: JSON and CSV writers."""

import csv
import io
import json
import math

import pytest

from collapse_spectra.errors import NonFinite
from collapse_spectra.reports import render_csv, render_json


class TestJson:
    def test_floats_round_trip_exactly(self):
        values = [math.pi, 5.78318596294678452118, -6.08710830044022195,
                  1e-300, 2.2250738585072014e-308, 9.9e15, 1.23e16]
        text = render_json({"values": values})
        back = json.loads(text)
        assert back["values"] == values

    def test_integral_floats_keep_decimal_point(self):
        text = render_json({"a": 2.0, "b": -14.0, "c": 0.0})
        assert '"a": 2.0' in text
        assert '"b": -14.0' in text
        assert '"c": 0.0' in text

    def test_ints_and_floats_distinguishable(self):
        text = render_json({"n": 7, "x": 7.0})
        assert '"n": 7' in text and '"x": 7.0' in text

    def test_key_order_preserved(self):
        text = render_json({"zeta": 1, "alpha": 2, "mid": 3})
        assert text.index("zeta") < text.index("alpha") < text.index("mid")

    def test_output_is_valid_json_with_trailing_newline(self):
        payload = {"command": "limit",
                   "results": [{"lam": 0.0, "bc": "neumann"}],
                   "flags": {"ok": True, "skip": None},
                   "empty_list": [], "empty_map": {}}
        text = render_json(payload)
        assert text.endswith("\n") and not text.endswith("\n\n")
        assert json.loads(text) == payload

    def test_two_space_indentation(self):
        text = render_json({"outer": {"inner": [1]}})
        assert text == ('{\n  "outer": {\n    "inner": [\n'
                        '      1\n    ]\n  }\n}\n')

    def test_deterministic(self):
        payload = {"results": [{"x": 0.1 + 0.2}], "n": 3}
        assert render_json(payload) == render_json(payload)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(NonFinite):
            render_json({"x": bad})

    def test_unserializable_type_rejected(self):
        with pytest.raises(TypeError):
            render_json({"x": {1, 2}})

    def test_booleans_lowercase(self):
        text = render_json({"yes": True, "no": False, "nil": None})
        assert '"yes": true' in text
        assert '"no": false' in text
        assert '"nil": null' in text


class TestCsv:
    def test_crlf_line_endings(self):
        text = render_csv(["a", "b"], [[1, 2], [3, 4]])
        assert text == "a,b\r\n1,2\r\n3,4\r\n"

    def test_floats_use_shortest_round_trip(self):
        text = render_csv(["x"], [[0.1], [5.783185962946785]])
        lines = text.split("\r\n")
        assert lines[1] == "0.1"
        assert float(lines[2]) == 5.783185962946785

    def test_booleans_render_lowercase_words(self):
        text = render_csv(["flag"], [[True], [False]])
        assert text.split("\r\n")[1:3] == ["true", "false"]

    def test_quoting_of_separator_and_quotes(self):
        text = render_csv(["name"], [["a,b"], ['say "hi"']])
        parsed = list(csv.reader(io.StringIO(text)))
        assert parsed == [["name"], ["a,b"], ['say "hi"']]

    def test_ints_have_no_decimal_point(self):
        text = render_csv(["n"], [[12]])
        assert text.split("\r\n")[1] == "12"

    def test_non_finite_rejected(self):
        with pytest.raises(NonFinite):
            render_csv(["x"], [[math.nan]])

    def test_header_only(self):
        assert render_csv(["a", "b", "c"], []) == "a,b,c\r\n"

    def test_json_and_csv_agree_numerically(self):
        values = [5.78318596294678452118, -1.85551565486709124, 0.25]
        jtext = render_json({"v": values})
        ctext = render_csv(["v"], [[x] for x in values])
        from_json = json.loads(jtext)["v"]
        from_csv = [float(line) for line
                    in ctext.split("\r\n")[1:-1]]
        assert from_json == from_csv == values
