import random

from hypothesis import given
from hypothesis import strategies as st

from privlens.cleartext import (
    MAX_LITERAL_SCAN_CHARS,
    email_syntax_ok,
    luhn_ok,
    mask_match,
    scan_literals,
)

from oracles import luhn_oracle, make_luhn_valid


def scan_src(parse_js, rules, src, mask=True, warnings=None):
    return scan_literals(parse_js(src), rules, mask=mask, warnings=warnings)


class TestScanLiterals:
    def test_email_in_literal(self, parse_js, rules):
        out = scan_src(parse_js, rules, 'const m = "contact me at john.doe@example.com";')
        assert [(o.category, o.pattern) for o in out] == [("contact", "email")]

    def test_luhn_pass(self, parse_js, rules):
        out = scan_src(parse_js, rules, 'const c = "4111 1111 1111 1111";')
        assert [(o.category, o.pattern) for o in out] == [("financial", "card_number")]
        assert luhn_oracle("4111 1111 1111 1111")

    def test_luhn_fail_drops_match(self, parse_js, rules):
        assert not luhn_oracle("4111 1111 1111 1112")
        out = scan_src(parse_js, rules, 'const c = "4111 1111 1111 1112";')
        assert out == []

    def test_no_pattern_no_finding(self, parse_js, rules):
        assert scan_src(parse_js, rules, 'const w = "the weather is sunny";') == []

    def test_comment_scanned(self, parse_js, rules):
        out = scan_src(parse_js, rules, "// ping 10.1.2.3 if down\nlet a = 1;")
        assert [(o.category, o.context) for o in out] == [("online_id", "comment")]

    def test_ordered_by_line_then_pattern(self, parse_js, rules):
        src = '\n'.join(
            [
                'const b = "192.168.3.4";',
                'const a = "bob@x.example";',
            ]
        )
        out = scan_src(parse_js, rules, src)
        assert [(o.span.start_line, o.pattern) for o in out] == [(1, "ipv4"), (2, "email")]

    def test_finding_spans_inside_literal_spans(self, parse_js, rules):
        src = 'const a = "mail to jo@x.example today";\n// 10.0.0.7\n'
        unit = parse_js(src)
        out = scan_literals(unit, rules)
        assert out
        lit_spans = [(l.span.start_line, l.span.end_line) for l in unit.literals]
        for o in out:
            assert any(s <= o.span.start_line and o.span.end_line <= e for s, e in lit_spans)

    def test_determinism(self, parse_js, rules):
        src = 'const a = "jo@x.example"; // 10.0.0.7 and SSN 123-45-6789\n'
        assert scan_src(parse_js, rules, src) == scan_src(parse_js, rules, src)

    def test_budget_warning_on_huge_literal(self, parse_js, rules):
        filler = "y" * (MAX_LITERAL_SCAN_CHARS + 50)
        warnings: list[str] = []
        out = scan_src(parse_js, rules, f'const a = "{filler}";', warnings=warnings)
        assert out == []
        assert any("truncated" in w for w in warnings)

    def test_no_mask_reveals(self, parse_js, rules):
        out = scan_src(parse_js, rules, 'const m = "jo@x.example";', mask=False)
        assert out[0].matched_text == "jo@x.example"


class TestMasking:
    def test_email_masked_by_default(self, parse_js, rules):
        out = scan_src(parse_js, rules, 'const m = "john.doe@example.com";')
        assert out[0].matched_text == "joh***om"

    @given(st.text(min_size=0, max_size=60))
    def test_mask_reveals_bounded_prefix_suffix(self, raw):
        masked = mask_match(raw)
        if len(raw) <= 5:
            assert set(masked) <= {"*"}
        else:
            assert masked == raw[:3] + "***" + raw[-2:]
        # Never leaks more than first 3 + last 2 characters.
        if len(raw) > 5:
            middle = raw[3:-2]
            if middle and all(c != "*" for c in middle):
                for c in set(middle) - set(raw[:3] + raw[-2:]) - {"*"}:
                    assert c not in masked


class TestValidators:
    def test_luhn_matches_oracle_on_randoms(self):
        rng = random.Random(20240601)
        for _ in range(300):
            digits = "".join(str(rng.randrange(10)) for _ in range(rng.randrange(12, 20)))
            assert luhn_ok(digits) == luhn_oracle(digits)

    def test_generated_valids_pass(self):
        rng = random.Random(7)
        for _ in range(50):
            assert luhn_ok(make_luhn_valid(rng))

    def test_email_syntax(self):
        assert email_syntax_ok("a.b@x.example")
        assert not email_syntax_ok("a@@x.example")
        assert not email_syntax_ok("a@example")
        assert not email_syntax_ok("a@x.42")
