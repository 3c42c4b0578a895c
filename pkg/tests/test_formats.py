"""Round trips through the text schemas and diagnostics on bad input."""

import pytest

from cocat import abgp, chain, fincat, finset
from cocat.core import check_cocategory
from cocat.formats import ParseError, parse_document, write_document


EXAMPLES = {
    "finset": lambda: finset.cokernel_pair_cocategory(
        finset.subset_mono([0], finset.FinSetObj(2))),
    "abgp": abgp.group_example_cocategory,
    "chain": chain.chain_example_cocategory,
    "cat": fincat.interval_cocategory,
}

HOSTS = {
    "finset": finset.FINSET,
    "abgp": abgp.ABGP,
    "chain": chain.CH,
    "cat": fincat.CAT,
}


class TestRoundTrips:
    @pytest.mark.parametrize("category", sorted(EXAMPLES))
    def test_write_then_parse(self, category):
        data = EXAMPLES[category]()
        text = write_document(category, data)
        parsed_category, parsed = parse_document(text)
        assert parsed_category == category
        assert parsed == data

    @pytest.mark.parametrize("category", sorted(EXAMPLES))
    def test_parsed_structure_is_valid(self, category):
        text = write_document(category, EXAMPLES[category]())
        _, parsed = parse_document(text)
        assert check_cocategory(HOSTS[category], parsed).ok

    def test_comments_and_blanks_ignored(self):
        text = write_document("finset", EXAMPLES["finset"]())
        noisy = "# a comment\n\n" + text.replace("\nq1:", "\n# noise\nq1:")
        _, parsed = parse_document(noisy)
        assert parsed == EXAMPLES["finset"]()

    def test_presented_group_round_trip(self):
        from cocat.core import cokernel_pair
        from cocat.intmatrix import IntMatrix

        z_mod_2 = abgp.FgAbGroup(1, IntMatrix.from_rows([[2]]))
        data = cokernel_pair(abgp.ABGP, abgp.ab_identity(z_mod_2))
        text = write_document("abgp", data)
        assert "q0-relations" in text
        _, parsed = parse_document(text)
        assert parsed == data


class TestDiagnostics:
    def test_unknown_category(self):
        with pytest.raises(ParseError, match="unknown host"):
            parse_document("category: sheaves\n")

    def test_category_mismatch(self):
        text = write_document("finset", EXAMPLES["finset"]())
        with pytest.raises(ParseError, match="asked for"):
            parse_document(text, expected_category="abgp")

    def test_missing_field_named(self):
        with pytest.raises(ParseError, match="'l'"):
            parse_document("category: finset\nq0: 1\nq1: 1\n")

    def test_wrong_arity_named_with_line(self):
        text = "category: finset\nq0: 2\nq1: 2\nl: 0\nr: 0 1\ni: 0 1\nq: 0 1\n"
        with pytest.raises(ParseError, match="'l'"):
            parse_document(text)

    def test_out_of_range_entry(self):
        text = "category: finset\nq0: 1\nq1: 2\nl: 0\nr: 1\ni: 0 0\nq: 9 9\n"
        with pytest.raises(ParseError, match="'q'"):
            parse_document(text)

    def test_non_integer(self):
        text = "category: finset\nq0: x\n"
        with pytest.raises(ParseError, match="non-integer"):
            parse_document(text)

    def test_duplicate_field(self):
        text = "category: finset\nq0: 1\nq0: 2\n"
        with pytest.raises(ParseError, match="duplicate"):
            parse_document(text)

    def test_matrix_dimension_mismatch(self):
        text = ("category: abgp\nq0: 1\nq1: 3\n"
                "l:\n3 1\n1\n0\n"  # promises 3 rows, gives 2
                "r:\n3 1\n0\n0\n1\ni:\n1 3\n1 0 1\nq:\n5 3\n")
        with pytest.raises(ParseError, match="'l'"):
            parse_document(text)

    def test_ill_defined_group_map(self):
        # a matrix that does not respect the domain relations
        text = ("category: abgp\n"
                "q0: 1\nq0-relations:\n1 1\n2\n"
                "q1: 1\n"
                "l:\n1 1\n1\n"
                "r:\n1 1\n1\ni:\n1 1\n1\nq:\n1 1\n1\n")
        with pytest.raises(ParseError, match="'l'"):
            parse_document(text)

    def test_invalid_category_laws(self):
        text = ("category: cat\n"
                "q0-objects: 1\nq0-morphisms:\n0 0\nq0-identities: 0\n"
                "q1-objects: 2\nq1-morphisms:\n0 0\n1 1\n0 1\n1 0\n"
                "q1-identities: 0 1\n"
                # composition of the two non-identities is missing
                "l-obj: 0\nl-mor: 0\nr-obj: 1\nr-mor: 1\n"
                "i-obj: 0 0\ni-mor: 0 0 0 0\n"
                "q-obj: 0 0\nq-mor: 0 0 0 0\n")
        with pytest.raises(ParseError, match="q1"):
            parse_document(text)

    def test_corrupted_q_still_parses_but_fails_axioms(self):
        # in-range corruption is not a parse error; the checker
        # reports the failed diagram instead
        data = EXAMPLES["finset"]()
        text = write_document("finset", data)
        corrupted = text.replace(f"q: {' '.join(map(str, data.q.table))}",
                                 "q: 0 0 0")
        _, parsed = parse_document(corrupted)
        report = check_cocategory(finset.FINSET, parsed)
        assert not report.ok
        assert report.failures
