import boundex
import pytest


def test_distance_primitives():
    assert boundex.compressed_size(b"") == 14
    assert boundex.compressed_size(b"a" * 1000, "zlib:9") == 17
    assert boundex.ncd(b"a" * 1000, b"a" * 1000) == 0.0
    assert boundex.edit_distance("kitten", "sitting") == 3


def test_date_construct():
    assert boundex.date_construct(252522163911150, 12, 31) == (
        "ok", "-252522163911150-6028347736506387-28")
    assert boundex.date_construct(2020, 12, 32) == (
        "error", "Day: 32 out of range (1:31)")
    assert boundex.total_days(1, 1, 1) == 1


def test_detect_typemax():
    body = boundex.detect(sut="julia-date", entrance="typemax")
    assert body["steps_taken"] == 281
    assert body["pair"] == [[252522163911150, 10, 7], [252522163911150, 10, 8]]
    assert body["config"]["codec"] == "bzip2:9"


def test_scan_csv_and_grid():
    code, csv = boundex.request(
        "scan", {"sut": "const", "steps": 5, "format": "csv"})
    assert code == 0
    assert len(csv.splitlines()) == 6
    body = boundex.grid(sut="julia-date", region={
        "sweep": [{"name": "month", "lo": 1, "hi": 2},
                  {"name": "day", "lo": 1, "hi": 2}],
        "fix": {"year": 2020}})
    assert len(body["walls"]) == 4


def test_errors():
    with pytest.raises(boundex.BoundexError) as info:
        boundex.detect(sut="nope")
    assert info.value.status == 404
    assert info.value.exit_code == 2
    small = boundex.Service(budget=10)
    with pytest.raises(boundex.BoundexError) as info:
        boundex.request("grid", {"sut": "const", "region": {
            "sweep": [{"name": "x", "lo": 0, "hi": 99}]}}, service=small)
    assert info.value.status == 422
    assert info.value.error["required"] == 100


def test_suts():
    assert [s["id"] for s in boundex.suts()] == ["julia-date", "step100", "const"]
