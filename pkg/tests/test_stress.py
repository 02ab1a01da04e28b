import pytest

from src.errors import PreconditionError
from src.services.drivers import DRIVERS, prepare, run_driver
from src.services.graph import Graph
from src.services.instances import (
    Instance,
    clique_union_host,
    disjoint_k4s,
    make_instance,
    planted_independent_set,
    random_bipartite,
    random_graph,
    random_instances,
)
from src.services.k4star import find_k4star
from src.services.patterns import K4STAR, cycle
from src.services import stress
from src.services.stress import CRASHED, REJECTED, TrialOutcome, collect, report_csv, run_stress, run_trial
from src.services.structure import maximum_independent_set, triangle_count
from src.types import Config, InstanceSpec

SMALL = InstanceSpec(vertices=24, density=0.15)


# --- instances ---


@pytest.mark.parametrize("driver", sorted(DRIVERS))
def test_instances_are_reproducible(driver):
    first = make_instance(driver, SMALL, 11)
    again = make_instance(driver, SMALL, 11)
    assert first == again


def test_random_graph_depends_on_the_seed():
    assert random_graph(30, 0.3, 1) == random_graph(30, 0.3, 1)
    assert random_graph(30, 0.3, 1) != random_graph(30, 0.3, 2)


def test_planted_independent_set():
    g = planted_independent_set(40, 0.9, 10, seed=5)
    assert g.is_independent(range(10))


def test_special_hosts():
    assert len(maximum_independent_set(clique_union_host(3, 10))) == 3
    k4s = disjoint_k4s(10)
    assert (k4s.n, k4s.edge_count) == (10, 12)
    assert find_k4star(k4s) is None
    assert triangle_count(random_bipartite(30, 0.5, 3)) == 0


def test_named_patterns_override_the_catalog():
    inst = make_instance("tw", InstanceSpec(vertices=12, pattern="C4"), 0)
    assert inst.pattern == cycle(4)
    assert inst.n == 3


def test_planted_treewidth_host_has_small_alpha():
    inst = make_instance("tw", InstanceSpec(vertices=30, n=4, planted=True), 0)
    assert len(maximum_independent_set(inst.host)) == 3


def test_biclique_hosts_meet_the_size_requirement():
    inst = make_instance("biclique", InstanceSpec(n=2), 3)
    assert inst.host.n in {4 * 2, 9 * 4, 16 * 4}


def test_instance_stream_uses_xor_seeds():
    stream = random_instances("k4star", SMALL, 6)
    assert [next(stream) for _ in range(3)] == [make_instance("k4star", SMALL, 6 ^ i) for i in range(3)]


def test_unknown_driver():
    with pytest.raises(PreconditionError):
        make_instance("nope", SMALL, 0)
    with pytest.raises(PreconditionError):
        run_stress("nope", 1, 0)


# --- drivers ---


def test_prepare_fills_the_fixed_pattern():
    inst = prepare("k4star-clique", Instance(Graph.empty(5), n=3))
    assert inst.pattern == K4STAR


def test_prepare_reports_missing_fields():
    with pytest.raises(PreconditionError, match="target"):
        prepare("k4star", Instance(Graph.empty(5)))


def test_run_driver_verifies():
    result, verified = run_driver("k4star-clique", Instance(Graph.empty(6), n=3), Config())
    assert str(result.tag) == "INDEPENDENT_SET"
    assert verified


# --- stress campaigns ---


@pytest.mark.parametrize("driver", sorted(DRIVERS))
def test_small_campaigns_pass(driver):
    report = run_stress(driver, 4, 7, SMALL)
    assert report.passed
    assert report.witness_failures == 0
    assert sum(report.per_tag.values()) == 4


def test_block_embedding_campaign_never_fails():
    report = run_stress("biclique", 10, 7, InstanceSpec(n=2, density=0.5))
    assert report.passed
    assert "FAILURE" not in report.per_tag
    assert REJECTED not in report.per_tag


def test_campaigns_are_reproducible():
    one = run_stress("k4star", 6, 3, SMALL)
    two = run_stress("k4star", 6, 3, SMALL)
    assert one.model_dump(exclude={"wall_seconds"}) == two.model_dump(exclude={"wall_seconds"})


def test_worker_processes_do_not_change_the_counts():
    serial = run_stress("k4star-biclique", 6, 9, SMALL)
    parallel = run_stress("k4star-biclique", 6, 9, SMALL, jobs=2)
    assert serial.per_tag == parallel.per_tag
    assert serial.witness_failures == parallel.witness_failures


def test_rejected_trials_are_not_witness_failures():
    outcome = run_trial("subdivision", InstanceSpec(vertices=12, pattern="K4STAR"), 0, 0, Config())
    assert outcome.tag == REJECTED
    assert outcome.verified


def test_glued_patterns_on_sparse_hosts_finish():
    report = run_stress("theorem12", 5, 0, InstanceSpec(pattern="BOWTIE", vertices=20, density=0.1, n=12))
    assert report.passed
    assert sum(report.per_tag.values()) == 5
    assert CRASHED not in report.per_tag


def test_crashed_trials_are_counted(monkeypatch):
    def boom(*args):
        raise RecursionError("maximum recursion depth exceeded")

    monkeypatch.setattr(stress, "run_driver", boom)
    report = run_stress("tw", 3, 0, SMALL)
    assert report.per_tag == {CRASHED: 3}
    assert report.witness_failures == 3
    assert not report.passed
    assert report.failure_reasons == {"RecursionError: maximum recursion depth exceeded": 3}


def test_collect_and_csv():
    outcomes = [
        TrialOutcome(0, "PATTERN_COPY", True),
        TrialOutcome(1, "FAILURE", True, "too small"),
        TrialOutcome(2, "PATTERN_COPY", False),
    ]
    report = collect("tw", 3, 5, outcomes, 0.5)
    assert report.per_tag == {"FAILURE": 1, "PATTERN_COPY": 2}
    assert report.witness_failures == 1
    assert not report.passed
    assert report.failure_reasons == {"too small": 1}
    assert report_csv(report).splitlines() == [
        "driver,seed,tag,count",
        "tw,5,FAILURE,1",
        "tw,5,PATTERN_COPY,2",
    ]
