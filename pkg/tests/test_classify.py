import json

import pytest

from quasicross.classify import (
    ContradictionError,
    Registry,
    TilesSource,
    classify_range,
    default_certificates_path,
    default_registry,
    load_certificates,
    load_registry,
    report_csv,
    report_json,
    report_text,
    store_certificate,
    summarize,
)
from quasicross.criteria import CRITERION_ORDER, VerdictStatus
from quasicross.splitting import Splitting

Q25_CERT = Splitting(25, 3, 1, (1, 5, 6, 11, 16, 21))


def statuses(run):
    return {v.n: v.status for v in run.verdicts}


def attributions(run):
    return {v.n: v.criterion_id for v in run.verdicts if v.status is VerdictStatus.NO_TILING}


def test_dimension_one_is_trivial_tiles():
    run = classify_range(3, 2, 1)
    assert run.verdicts[0].status is VerdictStatus.TILES
    assert run.verdicts[0].source is TilesSource.TRIVIAL


def test_31_small_range_attribution():
    run = classify_range(3, 1, 10)
    attr = attributions(run)
    assert attr[2] == "geometry"
    assert attr[3] == "quadratic_balance"
    assert attr[4] == "vandermonde"
    assert attr[5] == "power_square"
    assert attr[7] == "char4_literal"
    assert attr[8] == "power_square"
    assert attr[9] == "quadratic_balance"
    assert attr[10] == "vandermonde"
    assert statuses(run)[6] is VerdictStatus.UNKNOWN
    assert statuses(run)[1] is VerdictStatus.TILES


def test_32_small_range_attribution():
    run = classify_range(3, 2, 6, registry=Registry(3, 2, (1,)))
    attr = attributions(run)
    assert attr[2] == "geometry"
    assert attr[3] == "arm_gcd"
    assert attr[4] == "divisors"
    assert attr[5] == "arm_gcd"
    assert attr[6] == "arm_gcd"


def test_registry_marks_tiles():
    reg = Registry(3, 1, (1, 6), "test")
    run = classify_range(3, 1, 6, registry=reg)
    v = run.verdicts[5]
    assert v.status is VerdictStatus.TILES and v.source is TilesSource.REGISTRY


def test_certificates_mark_tiles():
    run = classify_range(3, 1, 6, certificates=[Q25_CERT])
    v = run.verdicts[5]
    assert v.status is VerdictStatus.TILES and v.source is TilesSource.CERTIFICATE


def test_registry_shape_mismatch_rejected():
    with pytest.raises(ValueError, match="registry is for shape"):
        classify_range(3, 1, 5, registry=Registry(3, 2, (1,)))


def test_unverified_certificate_rejected():
    with pytest.raises(ValueError, match="does not verify"):
        classify_range(3, 1, 5, certificates=[Splitting(13, 3, 1, (1, 2, 3))])


def test_contradiction_aborts():
    reg = Registry(3, 1, (1, 3), "bogus: 3 is ruled out")
    with pytest.raises(ContradictionError) as exc_info:
        classify_range(3, 1, 5, registry=reg)
    err = exc_info.value
    assert err.n == 3
    assert err.outcome.criterion_id == "quadratic_balance"
    assert "registry" in str(err) and "witness" in str(err)


def test_verdicts_independent_of_criterion_order():
    # Attribution aside, the ruled-out set only depends on which criteria
    # fire, so recomputing statuses from reversed outcome order must agree.
    run = classify_range(3, 1, 80, registry=default_registry(3, 1))
    for v in run.verdicts:
        fired_any = any(o.fired for o in reversed(run.outcomes[v.n]))
        assert (v.status is VerdictStatus.NO_TILING) == (
            fired_any and v.status is not VerdictStatus.TILES
        )
        if v.status is VerdictStatus.TILES:
            assert not fired_any


def test_registry_validation():
    with pytest.raises(ValueError):
        Registry(3, 1, (5, 5))
    with pytest.raises(ValueError):
        Registry(3, 1, (0, 2))
    assert Registry(3, 1, (6, 1)).dimensions == (1, 6)


def test_load_registry(tmp_path):
    path = tmp_path / "reg.json"
    path.write_text(json.dumps({"k_plus": 3, "k_minus": 1, "dimensions": [6, 1], "source": "t"}))
    reg = load_registry(path)
    assert reg.dimensions == (1, 6) and reg.source == "t"
    path.write_text(json.dumps({"k_plus": 3, "dimensions": []}))
    with pytest.raises(ValueError, match="missing fields"):
        load_registry(path)


def test_default_registries_ship():
    reg31 = default_registry(3, 1)
    assert reg31 is not None
    assert set(reg31.dimensions) == {1, 6, 31, 156} | {37, 43, 97, 102, 115, 139, 163, 169, 186, 199, 216}
    reg32 = default_registry(3, 2)
    assert reg32 is not None and reg32.dimensions == (1,)
    assert default_registry(9, 4) is None


def test_shipped_certificates_verify():
    certs = load_certificates(default_certificates_path())
    assert Q25_CERT in certs


def test_store_certificate_roundtrip(tmp_path):
    path = tmp_path / "certs.jsonl"
    assert store_certificate(Q25_CERT, path) is True
    first = path.read_bytes()
    assert store_certificate(Q25_CERT, path) is False
    assert path.read_bytes() == first
    (loaded,) = load_certificates(path)
    assert loaded == Q25_CERT
    assert store_certificate(loaded, path) is False
    assert path.read_bytes() == first


def test_store_rejects_unverified(tmp_path):
    with pytest.raises(ValueError, match="refusing to store"):
        store_certificate(Splitting(13, 3, 1, (1, 2, 3)), tmp_path / "c.jsonl")


def test_load_certificates_errors(tmp_path):
    path = tmp_path / "certs.jsonl"
    path.write_text('{"q": 25, "k_plus": 3, "k_minus": 1, "splitters": [1, 5]}\n')
    with pytest.raises(ValueError, match="line 1"):
        load_certificates(path)
    path.write_text('{"q": 13, "k_plus": 3, "k_minus": 1, "splitters": [1, 2, 3]}\n')
    with pytest.raises(ValueError, match="collision at 2"):
        load_certificates(path)
    path.write_text("{broken\n")
    with pytest.raises(ValueError, match="line 1"):
        load_certificates(path)


def test_summarize_counts():
    run = classify_range(3, 1, 10)
    summary = summarize(run)
    assert summary.status_counts == {"tiles": 1, "no_tiling": 8, "unknown": 1}
    assert summary.unknown_dims == (6,)
    assert summary.first_fired["power_square"] == 2
    # Independent counts can only exceed first-fired counts.
    for cid in CRITERION_ORDER:
        assert summary.independent_fired[cid] >= summary.first_fired[cid]
    text = summary.to_text()
    assert "surviving residues mod 36" in text
    assert "n = 2 (mod 3)" in text


def test_summarize_32_survivor_residues():
    run = classify_range(3, 2, 120, registry=default_registry(3, 2))
    summary = summarize(run)
    survivors = [v.n for v in run.verdicts if v.n >= 2 and v.status is not VerdictStatus.NO_TILING]
    assert survivors, "expected some survivors below 120"
    assert all(n % 36 in (1, 13) for n in survivors)
    assert "surviving residues mod 36 (n >= 2): 1 13" in summary.to_text()


def test_reports_are_stable_and_ordered():
    run = classify_range(3, 1, 12, registry=default_registry(3, 1))
    for render in (report_csv, report_json, report_text):
        assert render(run) == render(run)
    csv_lines = report_csv(run).splitlines()
    assert csv_lines[0] == "n,q,status,criterion,witness"
    assert [int(line.split(",")[0]) for line in csv_lines[1:]] == list(range(1, 13))
    payload = json.loads(report_json(run))
    assert [item["n"] for item in payload] == list(range(1, 13))
    assert payload[5]["status"] == "tiles" and payload[5]["source"] == "registry"
    text = report_text(run)
    assert text.splitlines()[0].split() == ["n", "q", "status", "criterion", "witness"]


def test_report_csv_row_content():
    run = classify_range(3, 1, 5)
    lines = report_csv(run).splitlines()
    assert lines[1] == "1,5,tiles,,trivial"
    assert lines[2] == "2,9,no_tiling,geometry,lhs=11 rhs=8"
    assert lines[3] == "3,13,no_tiling,quadratic_balance,qr=3 qnr=1"
    assert lines[4] == "4,17,no_tiling,vandermonde,q=17 powers_checked=4"
    assert lines[5] == "5,21,no_tiling,power_square,k=1 kn_mod_9=5"


def test_summarize_empty_rejected():
    from quasicross.classify import ClassificationRun

    with pytest.raises(ValueError):
        summarize(ClassificationRun(3, 1, 0, (), {}))
