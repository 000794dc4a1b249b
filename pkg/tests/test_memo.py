import threading
from fractions import Fraction

import pytest

from tmcorr.memo import HEADER, CacheFormatError, MemoStore, parse_record
from tmcorr.npoint import canonicalize, eta_n
from tmcorr.pair import eta_pair

F = Fraction


def filled(store):
    for m in range(1, 60):
        eta_pair(m, store)
    for lags in ([1, 2, 3], [4, 9, 30], [3, 8, 8, 15, 21]):
        eta_n(canonicalize(lags), store)
    return store


def test_round_trip(tmp_path, store):
    filled(store)
    path = tmp_path / "cache.txt"
    store.save(path)
    other = MemoStore()
    assert other.load(path) == len(store)
    assert dict(other.items()) == dict(store.items())


def test_file_layout(tmp_path, store):
    eta_n(canonicalize([1, 2, 3]), store)
    path = tmp_path / "c"
    store.save(path)
    lines = path.read_text().splitlines()
    assert lines[0] == HEADER
    assert "4;1,2,3;1/3" in lines
    assert not list(tmp_path.glob("*.tmp"))


def test_loaded_values_are_reused(tmp_path, store):
    filled(store)
    store.save(tmp_path / "c")
    warm = MemoStore()
    warm.load(tmp_path / "c")
    before = len(warm)
    assert eta_n(canonicalize([4, 9, 30]), warm) == eta_n(canonicalize([4, 9, 30]))
    assert len(warm) == before


def test_conflicting_insert_raises(store):
    store.insert((5,), F(0))
    store.insert((5,), F(0))
    with pytest.raises(RuntimeError):
        store.insert((5,), F(1, 3))


@pytest.mark.parametrize(
    "line",
    ["3;1;1/3", "2;1;x/3", "2;3,1;0/1", "2;-1;0/1", "garbage", "2;1;1/3;4"],
)
def test_malformed_records(line):
    with pytest.raises(CacheFormatError):
        parse_record(line)


def test_bad_header(tmp_path):
    p = tmp_path / "c"
    p.write_text("tmcorr-cache v0\n2;1;-1/3\n")
    with pytest.raises(CacheFormatError):
        MemoStore().load(p)


def test_concurrent_inserts_are_idempotent():
    shared = MemoStore()
    errors = []

    def work(offset):
        try:
            for m in range(offset, 3000, 3):
                eta_pair(m, shared)
            eta_n(canonicalize([7, 19, 40]), shared)
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=work, args=(k,)) for k in range(6)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert not errors
    fresh = MemoStore()
    for key, value in shared.items():
        assert eta_n(key, fresh) == value
