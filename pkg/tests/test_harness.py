import pytest

from src.exceptions import MalformedInputError
from src.harness import STATEMENTS, build_instance, check_instance, default_corpus, demo_staircase, run_suite
from src.harness.statements import InstanceContext
from src.generators import cycle_metric, staircase
from src.schemas import CorpusSpec, GeneratorSpec


def _corpus(*specs):
    return CorpusSpec(name="small", instances=list(specs))


SMALL = _corpus(
    GeneratorSpec(family="path", params={"n": 3, "lengths": ["1", "5"]}),
    GeneratorSpec(family="hypercube", params={"k": 2}),
    GeneratorSpec(family="tripod"),
)


class TestRegistry:
    def test_statement_ids(self):
        assert list(STATEMENTS)[0] == "Validate"
        for statement_id in ("Helly", "GatesForPairs1", "DilworthForDifferences", "TheoremA", "DoubleDual", "ZeroCompletion"):
            assert statement_id in STATEMENTS

    def test_default_corpus(self):
        corpus = default_corpus()
        ids = [spec.instance_id for spec in corpus.instances]
        assert len(ids) == len(set(ids))
        assert "staircase(k=5)" in ids
        assert "tripod()" in ids

    def test_seeded_corpus(self):
        reference = {spec.instance_id for spec in default_corpus().instances}
        seeded = default_corpus(seed=3).instances
        ids = [spec.instance_id for spec in seeded]
        assert len(ids) == len(set(ids))
        assert len(seeded) == len(reference)
        assert "staircase(k=5,seed=3)" in ids
        assert "random_tree(n=3,seed=300)" in ids
        assert not reference & set(ids)

    def test_seeded_corpus_is_deterministic(self):
        assert default_corpus(seed=7) == default_corpus(seed=7)

    def test_negative_corpus_seed(self):
        with pytest.raises(MalformedInputError):
            default_corpus(seed=-1)


class TestSuite:
    def test_small_corpus_passes(self):
        scorecard = run_suite(SMALL, show_progress=False)
        assert scorecard.ok
        assert len(scorecard.entries) == 3 * len(STATEMENTS)
        assert all(entry.status == "pass" for entry in scorecard.entries)
        assert all(entry.elapsed_ms is None for entry in scorecard.entries)

    def test_canonical_order(self):
        entries = run_suite(SMALL, show_progress=False).entries
        keys = [(entry.instance, entry.statement) for entry in entries]
        assert keys == sorted(keys)

    def test_reproducible(self):
        corpus = _corpus(GeneratorSpec(family="random_subalgebra", params={"n": 5, "m": 4}, seed=9))
        first = run_suite(corpus, show_progress=False).model_dump()
        assert run_suite(corpus, show_progress=False).model_dump() == first

    def test_filter(self):
        scorecard = run_suite(SMALL, ["TheoremA", "Validate"], show_progress=False)
        assert {entry.statement for entry in scorecard.entries} == {"TheoremA", "Validate"}

    def test_unknown_statement(self):
        with pytest.raises(MalformedInputError):
            run_suite(SMALL, ["NoSuchLemma"], show_progress=False)

    def test_corrupted_instance_is_caught(self):
        corpus = _corpus(GeneratorSpec(family="hypercube", params={"k": 3}, corrupt_seed=1))
        scorecard = run_suite(corpus, show_progress=False)
        assert not scorecard.ok
        statuses = {entry.statement: entry.status for entry in scorecard.entries}
        assert statuses.pop("Validate") == "fail"
        assert set(statuses.values()) == {"skipped"}
        (failure,) = scorecard.failures()
        assert failure.witness[0] == "symmetry"

    def test_guard_refusal_is_skipped(self, monkeypatch):
        from config.settings import settings

        monkeypatch.setattr(settings, "MAX_COMPLETION_POINTS", 2)
        scorecard = check_instance(build_instance(GeneratorSpec(family="hypercube", params={"k": 2})), ["ZeroCompletion"])
        (entry,) = [e for e in scorecard.entries if e.statement == "ZeroCompletion"]
        assert entry.status == "skipped"
        assert "completion points" in entry.witness[0]


class TestSingleInstance:
    def test_non_median_metric_fails_validation(self):
        scorecard = check_instance(InstanceContext("c5", cycle_metric(5)))
        assert not scorecard.ok
        (failure,) = scorecard.failures()
        assert failure.statement == "Validate"
        assert failure.witness[0] == "unique-median"

    def test_staircase(self):
        assert check_instance(InstanceContext("stairs", staircase(3))).ok


class TestStaircaseDemo:
    def test_projection_is_stable(self):
        report = demo_staircase(5)
        assert report.projections == ["(1,-1)"] * 5
        assert report.stabilized_at == 1
        assert report.ok

    def test_needs_a_step(self):
        with pytest.raises(MalformedInputError):
            demo_staircase(0)
