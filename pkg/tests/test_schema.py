import json

import pytest

from fast_robber.errors import PreconditionError
from fast_robber.schema import SCHEMA_VERSION, SimulationSpec, Transcript, Verdict
from fast_robber.types import Actor, MoveRecord


def test_transcript_serialization_roundtrip():
    transcript = Transcript(
        spec=SimulationSpec(graph="catalog:mcgee", speed=2, cop_count=2, cop_strategy="random", seed=9),
        cops=[3, 1],
        robber=7,
        rounds=[
            MoveRecord(actor=Actor.COPS, cop_moves=((1, 2), (3, 3))),
            MoveRecord(actor=Actor.ROBBER, path=(7, 8, 9)),
        ],
        verdict=Verdict.robber_survived(1),
    )

    payload = json.loads(transcript.json())
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["placements"] == {"cops": [1, 3], "robber": 7}
    assert payload["rounds"][0] == {"actor": "cops", "detail": [[1, 2], [3, 3]]}
    assert payload["rounds"][1] == {"actor": "robber", "detail": [7, 8, 9]}
    assert payload["verdict"] == {"kind": "RobberSurvived", "rounds": 1}
    assert payload["spec"]["script"] == []
    assert Transcript.loads(transcript.json()).json() == transcript.json()


def test_transcript_missing_optional_fields():
    payload = {"spec": {"graph": "catalog:heawood"}}
    transcript = Transcript.from_dict(payload)
    assert transcript.schema_version == SCHEMA_VERSION
    assert transcript.spec.cop_strategy == "greedy"
    assert transcript.rounds == []
    assert transcript.robber is None
    assert transcript.verdict is None
    with pytest.raises(PreconditionError):
        transcript.validate()


def test_transcript_rejects_other_major_version():
    with pytest.raises(PreconditionError):
        Transcript.from_dict({"schema_version": "2.0", "spec": {"graph": "catalog:mcgee"}})
    assert Transcript.from_dict({"schema_version": "1.3", "spec": {"graph": "catalog:mcgee"}}).schema_version == "1.3"


def test_verdict_payloads():
    assert Verdict.captured(4).to_dict() == {"kind": "Captured", "round": 4}
    failure = Verdict.strategy_failure({"kind": "NoSafeSuccessor", "controlled": {"3": 4}})
    assert Verdict.from_dict(failure.to_dict()) == failure
    with pytest.raises(PreconditionError):
        Verdict(kind="Draw")


@pytest.mark.parametrize(
    "kwargs",
    [
        {"cop_strategy": "teleport"},
        {"max_rounds": 0},
        {"cop_strategy": "random"},
        {"seed": -1},
    ],
)
def test_simulation_spec_validation(kwargs):
    with pytest.raises(PreconditionError):
        SimulationSpec(graph="catalog:mcgee", **kwargs)


def test_simulation_spec_sorts_script_entries():
    spec = SimulationSpec(graph="catalog:mcgee", cop_strategy="script", script=[[4, 1], [2, 2]])
    assert spec.script == [[1, 4], [2, 2]]


@pytest.mark.parametrize(
    "payload",
    [
        {"schema_version": "1.0"},
        {"spec": {"graph": "catalog:mcgee", "colour": "red"}},
        {"spec": {"graph": "catalog:mcgee"}, "rounds": [{"actor": "referee"}]},
        {"spec": {"graph": "catalog:mcgee"}, "placements": {"cops": ["a"]}},
        ["not", "an", "object"],
    ],
)
def test_malformed_transcripts_raise_precondition_errors(payload):
    with pytest.raises(PreconditionError):
        Transcript.from_dict(payload)


def test_loads_rejects_invalid_json():
    with pytest.raises(PreconditionError):
        Transcript.loads("{")


@pytest.mark.parametrize("kwargs", [{"speed": 0}, {"cop_count": 0}, {"script": [3]}])
def test_simulation_spec_rejects_bad_counts_and_scripts(kwargs):
    with pytest.raises(PreconditionError):
        SimulationSpec(graph="catalog:mcgee", **kwargs)
