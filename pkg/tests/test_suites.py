from __future__ import annotations

import pytest

from complexcf.algorithms import even_gaussian, hurwitz, parse_algorithm
from complexcf.corpus import fixtures, parse_corpus_spec, surd_corpus
from complexcf.errors import ComplexCFError
from complexcf.rings import E, G
from complexcf.suites import run_geometry, run_suite


def test_corpus_is_seeded_and_distinct():
    a = surd_corpus(G, 25, seed=3)
    b = surd_corpus(G, 25, seed=3)
    assert [x.surd.key() for x in a] == [x.surd.key() for x in b]
    assert len({x.surd.key() for x in a}) == 25
    assert [x.surd.key() for x in surd_corpus(G, 25, seed=4)] != [x.surd.key() for x in a]
    for it in a:
        assert all(c.norm() <= 20 for c in it.poly)


def test_fixtures_and_spec_parsing():
    assert len(fixtures(G)) == 4 and len(fixtures(E)) == 3
    assert parse_corpus_spec("surds:100:seed=7") == (100, 7)
    assert parse_corpus_spec("surds:12") == (12, 0)
    with pytest.raises(ComplexCFError):
        parse_corpus_spec("balls:3")


@pytest.mark.parametrize("suite", ["identities", "monotone", "neat", "forms"])
def test_small_suites_pass_for_hurwitz(suite):
    rep = run_suite(suite, hurwitz(), 8, 1)
    assert rep.passed, rep.violations
    assert rep.items == 8


def test_condition_h_suite_reports_even_violations():
    rep = run_suite("conditionH", even_gaussian(), 20, 0)
    assert not rep.passed
    assert all(v["check"] == "conditionH" for v in rep.violations)
    assert run_suite("monotone", even_gaussian(), 20, 0).passed


def test_workers_do_not_change_the_report():
    one = run_suite("identities", parse_algorithm("eisenstein"), 6, 2, workers=1).to_json()
    two = run_suite("identities", parse_algorithm("eisenstein"), 6, 2, workers=2).to_json()
    assert one == two


def test_geometry_suites():
    assert run_geometry("invert-disc", samples=300).passed
    assert run_geometry("h-inverse", samples=500).passed
    bad = run_geometry("h-perturb", "0.35", mesh=40)
    assert not bad.passed and bad.violations[0]["witness"]
    with pytest.raises(ValueError):
        run_geometry("nope")
