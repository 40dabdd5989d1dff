import pytest

import run


def test_pick_port_skips_taken_ports(monkeypatch):
    monkeypatch.setattr(run, "port_is_free", lambda host, port: port >= 8767)
    assert run.pick_port("127.0.0.1", 8765, 5) == 8767


def test_pick_port_reports_the_searched_range(monkeypatch):
    monkeypatch.setattr(run, "port_is_free", lambda host, port: False)
    with pytest.raises(RuntimeError, match="no free port in 8765-8766"):
        run.pick_port("127.0.0.1", 8765, 2)
