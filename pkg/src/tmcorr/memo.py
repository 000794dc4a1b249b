"""Shared exact-value cache for correlation recursions, with text persistence.

Keys are canonical lag tuples (the implicit base lag 0 is not stored), so the
correlation order of a key is ``len(key) + 1``.  On disk every entry is one
line ``n;lag,lag,...;num/den`` below a version header.
"""

from __future__ import annotations

import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Iterator

HEADER = "tmcorr-cache v1"


class CacheFormatError(ValueError):
    pass


class MemoStore:
    """Map from canonical lag tuples to exact values.

    Inserts go through ``dict.setdefault``, which is atomic under the GIL, so
    concurrent writers racing on one key all end up seeing the same value.
    """

    def __init__(self) -> None:
        self._data: dict[tuple[int, ...], Fraction] = {}

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: tuple[int, ...]) -> bool:
        return key in self._data

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(list(self._data))

    def get(self, key: tuple[int, ...]) -> Fraction | None:
        return self._data.get(key)

    def insert(self, key: tuple[int, ...], value: Fraction) -> Fraction:
        stored = self._data.setdefault(key, value)
        if stored != value:
            raise RuntimeError(f"conflicting cache values for {key}: {stored} vs {value}")
        return stored

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return list(self._data.items())

    def clear(self) -> None:
        self._data.clear()

    def save(self, path: str | os.PathLike) -> None:
        """Write all entries, replacing ``path`` atomically."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [HEADER]
        for key, value in sorted(self._data.items(), key=lambda kv: (len(kv[0]), kv[0])):
            lags = ",".join(str(x) for x in key)
            lines.append(f"{len(key) + 1};{lags};{value.numerator}/{value.denominator}")
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                fh.write("\n".join(lines) + "\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def load(self, path: str | os.PathLike) -> int:
        """Merge entries from ``path``; returns the number of records read."""
        count = 0
        with open(path, encoding="ascii") as fh:
            first = fh.readline().rstrip("\n")
            if first != HEADER:
                raise CacheFormatError(f"{path}: expected header {HEADER!r}, got {first!r}")
            for lineno, line in enumerate(fh, start=2):
                line = line.strip()
                if not line:
                    continue
                key, value = parse_record(line, where=f"{path}:{lineno}")
                self.insert(key, value)
                count += 1
        return count


def parse_record(line: str, where: str = "") -> tuple[tuple[int, ...], Fraction]:
    try:
        order_s, lags_s, value_s = line.split(";")
        key = tuple(int(x) for x in lags_s.split(",")) if lags_s else ()
        num_s, den_s = value_s.split("/")
        value = Fraction(int(num_s), int(den_s))
    except ValueError as exc:
        raise CacheFormatError(f"{where}: malformed record {line!r}") from exc
    if int(order_s) != len(key) + 1:
        raise CacheFormatError(f"{where}: order {order_s} does not match {len(key)} lags")
    if any(x < 0 for x in key) or list(key) != sorted(key):
        raise CacheFormatError(f"{where}: lags are not canonical: {key}")
    return key, value


_default = MemoStore()


def default_store() -> MemoStore:
    return _default
