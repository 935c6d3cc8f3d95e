import pytest
from hypothesis import given, settings, strategies as st

from helpers import make_transcript
from nuggetbank.analysis import (
    ADD_CITATION,
    EXPAND_CLAIM,
    FIX_CITATION,
    Discrepancy,
    Omission,
    build_refinement_report,
    compare_summaries,
    segment_summary,
    summary_id_for,
    verify_summary_citations,
)
from nuggetbank.errors import IncompleteAlignment, MissingVerdicts
from nuggetbank.judge import HeuristicJudge
from nuggetbank.judge.base import AlignmentResult, CitationVerdict
from nuggetbank.nuggets import Importance, Nugget, NuggetBank
from nuggetbank.transcript import CitationSpan


def span(page, line):
    return CitationSpan(page, line, page, line)


def nugget(nid, text="a distinct fact", cite=None, importance=Importance.UNLABELED):
    return Nugget(id=nid, text=text, citations=(cite or span(1, 1),), importance=importance)


def aligned(nid, score, segment=(0, 10), explanation=""):
    if score == 0:
        segment = None
    return AlignmentResult(nugget_id=nid, score=score, matched_segment=segment, explanation=explanation)


def verdict(accurate=True, covered=True, sufficient=True, rationale=""):
    return CitationVerdict(accurate=accurate, covered=covered, sufficient=sufficient, rationale=rationale)


# -- summary segmentation -----------------------------------------------------


def test_segment_with_single_citation():
    doc = segment_summary("The deponent signed. (12:05-12:18)")
    assert len(doc.segments) == 1
    seg = doc.segments[0]
    assert seg.citations == (CitationSpan(12, 5, 12, 18),)
    assert seg.claim_text == "The deponent signed."
    assert seg.bad_refs == ()


def test_segment_without_references():
    doc = segment_summary("First fact here. Second fact there.")
    assert [s.citations for s in doc.segments] == [(), ()]
    assert [s.claim_text for s in doc.segments] == ["First fact here.", "Second fact there."]


def test_segment_multiple_refs_in_one_group():
    doc = segment_summary("Both pages agree. (1:2, 3:4-3:5)")
    assert doc.segments[0].citations == (CitationSpan(1, 2, 1, 2), CitationSpan(3, 4, 3, 5))


def test_segment_refs_in_separate_groups():
    doc = segment_summary("He testified (1:2) and later confirmed it (2:3).")
    assert doc.segments[0].citations == (span(1, 2), span(2, 3))
    assert doc.segments[0].claim_text == "He testified and later confirmed it ."


def test_segment_bad_ref_recorded_not_raised():
    doc = segment_summary("Shaky support. (3:0)")
    seg = doc.segments[0]
    assert seg.citations == ()
    assert seg.bad_refs == ("3:0",)


def test_segment_inverted_ref_is_bad():
    doc = segment_summary("Backwards. (2:5-1:1)")
    assert doc.segments[0].bad_refs == ("2:5-1:1",)


def test_segment_plain_parenthetical_stays_in_claim():
    doc = segment_summary("He denied it (emphasis added).")
    seg = doc.segments[0]
    assert seg.citations == ()
    assert seg.claim_text == "He denied it (emphasis added)."


def test_segments_tile_original_text():
    text = " ".join(f"Sentence number {i} talks about item {i}. ({i}:1)" for i in range(1, 11))
    doc = segment_summary(text)
    assert len(doc.segments) == 10
    position = 0
    for seg in doc.segments:
        assert text[position : seg.start].strip() == ""
        assert text[seg.start : seg.end] == seg.text
        position = seg.end
    assert text[position:].strip() == ""
    assert [s.index for s in doc.segments] == list(range(10))


def test_summary_id_stable_and_overridable():
    text = "Some summary."
    doc = segment_summary(text)
    assert doc.id == summary_id_for(text)
    assert doc.id.startswith("s") and len(doc.id) == 13
    assert segment_summary(text, summary_id="s-custom").id == "s-custom"


def test_segment_blank_summary_rejected():
    with pytest.raises(ValueError):
        segment_summary("   \n")


# -- comparison ----------------------------------------------------------------


def three_nugget_bank():
    return NuggetBank(
        "t1",
        (
            nugget("n1", "first fact", span(1, 1)),
            nugget("n2", "second fact", span(1, 2)),
            nugget("n3", "third fact", span(1, 3)),
        ),
    )


def test_compare_three_nugget_example():
    bank = three_nugget_bank()
    align_a = {"n1": aligned("n1", 2), "n2": aligned("n2", 1), "n3": aligned("n3", 0)}
    align_b = {"n1": aligned("n1", 0), "n2": aligned("n2", 1), "n3": aligned("n3", 0)}
    report = compare_summaries(bank, align_a, align_b)
    assert report.unique_a == ("n1",)
    assert report.matched == ("n2",)
    assert report.missing == ("n3",)
    assert report.unique_b == ()
    assert report.stats.coverage_a == pytest.approx(3 / 6)
    assert report.stats.coverage_b == pytest.approx(1 / 6)
    assert (report.stats.matched, report.stats.unique_a, report.stats.unique_b, report.stats.missing) == (1, 1, 0, 1)


def test_compare_swapping_inputs_swaps_unique_sets():
    bank = three_nugget_bank()
    align_a = {"n1": aligned("n1", 2), "n2": aligned("n2", 1), "n3": aligned("n3", 0)}
    align_b = {"n1": aligned("n1", 0), "n2": aligned("n2", 2), "n3": aligned("n3", 0)}
    fwd = compare_summaries(bank, align_a, align_b)
    rev = compare_summaries(bank, align_b, align_a)
    assert fwd.unique_a == rev.unique_b
    assert fwd.unique_b == rev.unique_a
    assert fwd.matched == rev.matched
    assert fwd.missing == rev.missing
    assert fwd.stats.coverage_a == rev.stats.coverage_b


def test_compare_all_scores_zero():
    bank = three_nugget_bank()
    zeros = {nid: aligned(nid, 0) for nid in bank.ids()}
    report = compare_summaries(bank, zeros, dict(zeros))
    assert report.missing == ("n1", "n2", "n3")
    assert report.stats.coverage_a == 0.0
    assert report.stats.coverage_b == 0.0


def test_compare_requires_exact_id_cover():
    bank = three_nugget_bank()
    full = {nid: aligned(nid, 0) for nid in bank.ids()}
    missing_one = {nid: full[nid] for nid in ("n1", "n2")}
    with pytest.raises(IncompleteAlignment):
        compare_summaries(bank, missing_one, full)
    extra = dict(full, n9=aligned("n9", 0))
    with pytest.raises(IncompleteAlignment):
        compare_summaries(bank, full, extra)


def test_compare_empty_bank():
    bank = NuggetBank("t1", ())
    report = compare_summaries(bank, {}, {})
    assert report.matched == report.missing == ()
    assert report.stats.coverage_a == 0.0


@settings(max_examples=200, deadline=None)
@given(data=st.data(), size=st.integers(1, 20))
def test_partition_property(data, size):
    ids = [f"n{i}" for i in range(1, size + 1)]
    bank = NuggetBank("t1", tuple(nugget(nid, f"fact {nid}", span(1, i + 1)) for i, nid in enumerate(ids)))
    score_list_a = data.draw(st.lists(st.integers(0, 2), min_size=size, max_size=size))
    score_list_b = data.draw(st.lists(st.integers(0, 2), min_size=size, max_size=size))
    align_a = {nid: aligned(nid, s) for nid, s in zip(ids, score_list_a)}
    align_b = {nid: aligned(nid, s) for nid, s in zip(ids, score_list_b)}
    report = compare_summaries(bank, align_a, align_b)
    groups = [set(report.matched), set(report.unique_a), set(report.unique_b), set(report.missing)]
    union = set().union(*groups)
    assert union == set(ids)
    assert sum(len(g) for g in groups) == size
    expected_cov = (2 * score_list_a.count(2) + score_list_a.count(1)) / (2 * size)
    assert report.stats.coverage_a == pytest.approx(expected_cov)


# -- refinement ------------------------------------------------------------------


def doc_and_bank():
    """Two-sentence summary; n1 matched in sentence 1, n2 and n3 elsewhere."""
    text = "The policy was valued at ten million. (2:14) The claim was approved later. (3:21)"
    doc = segment_summary(text)
    bank = NuggetBank(
        "t1",
        (
            nugget("n1", "policy valued ten million", span(2, 14)),
            nugget("n2", "claim approved benefit wired", span(3, 21)),
            nugget("n3", "beneficiary was the adult daughter", span(2, 16)),
        ),
    )
    return doc, bank


def full_alignments(doc):
    seg0, seg1 = doc.segments
    return {
        "n1": aligned("n1", 2, (seg0.start, seg0.end)),
        "n2": aligned("n2", 1, (seg1.start, seg1.end), "missing: benefit, wired"),
        "n3": aligned("n3", 0, explanation="missing: beneficiary, adult, daughter"),
    }


def all_true_verdicts(doc):
    return {seg.index: [verdict() for _ in seg.citations] for seg in doc.segments if seg.citations}


def test_clean_summary_yields_empty_report():
    doc, bank = doc_and_bank()
    alignments = {
        "n1": aligned("n1", 2),
        "n2": aligned("n2", 2),
        "n3": aligned("n3", 2),
    }
    report = build_refinement_report(doc, bank, alignments, all_true_verdicts(doc))
    assert report.omissions == ()
    assert report.flagged_segments == ()
    assert report.discrepancies == ()
    assert report.transcript_id == "t1"
    assert report.summary_id == doc.id


def test_omissions_include_partial_scores():
    doc, bank = doc_and_bank()
    report = build_refinement_report(doc, bank, full_alignments(doc), all_true_verdicts(doc))
    # same importance rank, so first-citation position decides: n3 cites 2:16, n2 cites 3:21
    assert [o.nugget_id for o in report.omissions] == ["n3", "n2"]
    assert [o.score for o in report.omissions] == [0, 1]
    assert report.omissions[1].explanation == "missing: benefit, wired"


def test_omission_rejects_full_score():
    with pytest.raises(ValueError):
        Omission("n1", 2, "")


def test_vital_omissions_come_first():
    doc, _ = doc_and_bank()
    bank = NuggetBank(
        "t1",
        (
            nugget("n1", "policy valued ten million", span(2, 14)),
            nugget("n2", "unlabeled early fact", span(1, 1)),
            nugget("n3", "vital late fact", span(3, 9), importance=Importance.VITAL),
            nugget("n4", "okay middle fact", span(2, 2), importance=Importance.OKAY),
        ),
    )
    alignments = {
        "n1": aligned("n1", 2),
        "n2": aligned("n2", 0),
        "n3": aligned("n3", 1),
        "n4": aligned("n4", 0),
    }
    report = build_refinement_report(doc, bank, alignments, all_true_verdicts(doc))
    assert [o.nugget_id for o in report.omissions] == ["n3", "n4", "n2"]


def test_same_rank_orders_by_first_citation():
    doc = segment_summary("A summary without any citations.")
    bank = NuggetBank(
        "t1",
        (
            nugget("n1", "cited later in the document", span(3, 5)),
            nugget("n2", "cited earlier in the document", span(1, 2)),
        ),
    )
    alignments = {"n1": aligned("n1", 0), "n2": aligned("n2", 0)}
    report = build_refinement_report(doc, bank, alignments, {})
    assert [o.nugget_id for o in report.omissions] == ["n2", "n1"]


def test_non_relevant_nuggets_never_listed():
    doc = segment_summary("A summary without any citations.")
    bank = NuggetBank(
        "t1",
        (nugget("n1", "noise", span(1, 1), importance=Importance.NON_RELEVANT),),
    )
    report = build_refinement_report(doc, bank, {"n1": aligned("n1", 0)}, {})
    assert report.omissions == ()


def test_insufficient_verdict_flags_segment_with_add_citation():
    doc, bank = doc_and_bank()
    verdicts = all_true_verdicts(doc)
    verdicts[0] = [verdict(sufficient=False, rationale="content tokens missing from span: life, insurance")]
    report = build_refinement_report(doc, bank, full_alignments(doc), verdicts)
    assert len(report.flagged_segments) == 1
    flagged = report.flagged_segments[0]
    assert flagged.segment_index == 0
    assert flagged.suggestion_kind == ADD_CITATION
    assert flagged.suggestion.startswith("Cite an additional span")
    assert flagged.verdict.sufficient is False


def test_inaccurate_verdict_wins_over_uncovered():
    doc, bank = doc_and_bank()
    verdicts = all_true_verdicts(doc)
    verdicts[0] = [verdict(accurate=False, covered=False, sufficient=False, rationale="r")]
    report = build_refinement_report(doc, bank, full_alignments(doc), verdicts)
    assert report.flagged_segments[0].suggestion_kind == FIX_CITATION


def test_uncovered_verdict_suggests_rework():
    doc, bank = doc_and_bank()
    verdicts = all_true_verdicts(doc)
    verdicts[0] = [verdict(covered=False, sufficient=False, rationale="r")]
    report = build_refinement_report(doc, bank, full_alignments(doc), verdicts)
    assert report.flagged_segments[0].suggestion_kind == EXPAND_CLAIM


def test_first_failing_verdict_reported():
    doc, bank = doc_and_bank()
    text = "Doubly cited claim. (2:14, 3:21)"
    doc2 = segment_summary(text)
    verdicts = {0: [verdict(), verdict(sufficient=False, rationale="second one fails")]}
    alignments = {nid: aligned(nid, 2) for nid in bank.ids()}
    report = build_refinement_report(doc2, bank, alignments, verdicts)
    assert report.flagged_segments[0].verdict.rationale == "second one fails"


def test_bad_refs_alone_flag_fix_citation():
    bank = three_nugget_bank()
    doc = segment_summary("Shaky support for this statement. (3:0)")
    alignments = {nid: aligned(nid, 2) for nid in bank.ids()}
    report = build_refinement_report(doc, bank, alignments, {})
    flagged = report.flagged_segments[0]
    assert flagged.verdict is None
    assert flagged.suggestion_kind == FIX_CITATION
    assert "3:0" in flagged.suggestion


def test_missing_verdicts_detected():
    doc, bank = doc_and_bank()
    verdicts = all_true_verdicts(doc)
    del verdicts[1]
    with pytest.raises(MissingVerdicts):
        build_refinement_report(doc, bank, full_alignments(doc), verdicts)


def test_discrepancies_point_at_matched_segment():
    doc, bank = doc_and_bank()
    report = build_refinement_report(doc, bank, full_alignments(doc), all_true_verdicts(doc))
    assert len(report.discrepancies) == 1
    item = report.discrepancies[0]
    assert item.nugget_id == "n2"
    assert item.segment_index == 1
    assert item.note == "missing: benefit, wired"


def test_discrepancy_requires_explanation():
    doc, bank = doc_and_bank()
    alignments = full_alignments(doc)
    alignments["n2"] = aligned("n2", 1, alignments["n2"].matched_segment, "")
    report = build_refinement_report(doc, bank, alignments, all_true_verdicts(doc))
    assert report.discrepancies == ()


def test_refinement_accounting_invariant(bank, transcript, judge, summary_a):
    doc = segment_summary(summary_a)
    alignments = judge.align_bank(bank, summary_a)
    verdicts = verify_summary_citations(doc, transcript, judge)
    report = build_refinement_report(doc, bank, alignments, verdicts)
    listed = {o.nugget_id for o in report.omissions}
    for nugget_obj in bank.nuggets:
        if alignments[nugget_obj.id].score == 2 or nugget_obj.importance is Importance.NON_RELEVANT:
            assert nugget_obj.id not in listed
        else:
            assert nugget_obj.id in listed


def test_refinement_requires_alignment_cover():
    doc, bank = doc_and_bank()
    with pytest.raises(IncompleteAlignment):
        build_refinement_report(doc, bank, {"n1": aligned("n1", 2)}, all_true_verdicts(doc))


# -- citation verification over a summary -------------------------------------------


def test_verify_summary_citations_keys_and_fallback(judge):
    transcript = make_transcript(
        [["Q. Value?", "A. The policy was valued at ten million dollars."]]
    )
    text = (
        "The policy was valued at ten million dollars. (1:2) "
        "Uncited side remark. "
        "Phantom support claimed here. (9:9)"
    )
    doc = segment_summary(text)
    verdicts = verify_summary_citations(doc, transcript, judge)
    assert sorted(verdicts) == [0, 2]
    assert verdicts[0][0].covered is True
    phantom = verdicts[2][0]
    assert (phantom.accurate, phantom.covered, phantom.sufficient) == (False, False, False)
    assert phantom.rationale.startswith("cited span does not exist")


def test_verify_summary_citations_one_verdict_per_citation(judge, transcript):
    doc = segment_summary("Twice supported. (1:8, 2:14)")
    verdicts = verify_summary_citations(doc, transcript, judge)
    assert len(verdicts[0]) == 2
