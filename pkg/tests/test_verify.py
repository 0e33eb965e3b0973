import json

import httpx

from toruscalc.verify import (
    betti_methods,
    known_discrepancies,
    registered_discrepancy,
    run_all,
    surgered_orbit_space,
)


def test_registry_contents():
    entries = known_discrepancies()
    assert len(entries) == 1
    assert registered_discrepancy(2, 2) is not None
    assert registered_discrepancy(3, 2) is None


def test_betti_methods_shape():
    m = betti_methods(4, 2)
    assert set(m) == {"closed", "mv", "model"}
    assert all(len(v) == 9 for v in m.values())


def test_surgered_orbit_space_counts():
    for n in (2, 3, 4):
        for k in range(1, n + 1):
            lattice = surgered_orbit_space(n, k)
            assert lattice.vertex_count() == 4
            assert len(lattice.facet_ids) == n + k


def test_run_all_small_is_clean():
    report = run_all(max_n=3)
    assert report.failures == []
    assert len(report.discrepancies) == 1
    assert not report.ok(allow_known_discrepancies=False)
    assert report.ok(allow_known_discrepancies=True)
    names = {c["name"] for c in report.checks}
    assert any(name.startswith("cdga-") for name in names)
    assert any(name.startswith("ring-") for name in names)


def test_report_json_shape():
    report = run_all(max_n=2)
    obj = report.to_json_obj(allow_known_discrepancies=True)
    text = json.dumps(obj, sort_keys=True)
    assert json.loads(text)["ok"] is True


def test_cli_remote_dispatch_uses_http(monkeypatch):
    # the thin client must post the same request models the service accepts
    from click.testing import CliRunner
    from fastapi.testclient import TestClient

    from toruscalc.cli import main
    from toruscalc.service import create_app

    test_client = TestClient(create_app())
    calls = {}

    def fake_post(url, json=None, timeout=None):
        calls["url"] = url
        path = url.replace("http://fake", "")
        return test_client.post(path, json=json)

    monkeypatch.setattr(httpx, "post", fake_post)
    runner = CliRunner()
    res = runner.invoke(
        main,
        ["betti", "conn-sum", "--n", "3", "--k", "2", "--server", "http://fake"],
    )
    assert res.exit_code == 0, res.output
    assert calls["url"] == "http://fake/betti/conn-sum"
    body = json.loads(res.output)
    assert body["results"]["mv"] == [1, 0, 2, 2, 2, 0, 1]

    res = runner.invoke(
        main,
        ["betti", "conn-sum", "--n", "3", "--k", "9", "--server", "http://fake"],
    )
    assert res.exit_code == 2
