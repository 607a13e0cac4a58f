"""Persistent store for quartic search outcomes.

One JSON record per line.  Records are only ever appended; when several
exist for the same key the one with the largest height wins on load.  A
solved record is never superseded, since its witness stays valid forever.
"""

from __future__ import annotations

import fcntl
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .descent.quartic import (
    ExhaustedToHeight,
    LocallyExcluded,
    QuarticProblem,
    SearchOutcome,
    Side,
    Solved,
    outcome_from_json,
)

ENV_VAR = "CNKIT_CACHE"


@dataclass(frozen=True)
class CacheRecord:
    a_curve: int
    side: Side
    b1: int
    gcd_mode: str
    height: int
    outcome: SearchOutcome
    created_at: str

    @property
    def key(self) -> tuple:
        return (self.a_curve, Side(self.side).value, self.b1, self.gcd_mode)

    def to_json(self) -> dict:
        return {
            "a_curve": str(self.a_curve),
            "side": Side(self.side).value,
            "b1": str(self.b1),
            "gcd_mode": self.gcd_mode,
            "height": str(self.height),
            "outcome": self.outcome.to_json(),
            "created_at": self.created_at,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CacheRecord":
        return cls(
            int(obj["a_curve"]),
            Side(obj["side"]),
            int(obj["b1"]),
            obj.get("gcd_mode", "literal"),
            int(obj["height"]),
            outcome_from_json(obj["outcome"]),
            obj.get("created_at", ""),
        )


def _better(new: CacheRecord, old: Optional[CacheRecord]) -> bool:
    if old is None:
        return True
    if isinstance(old.outcome, (Solved, LocallyExcluded)):
        return False
    return new.height > old.height or isinstance(new.outcome, (Solved, LocallyExcluded))


class QuarticCache:
    """JSONL-backed cache usable as the ``cache`` argument of build_certificate."""

    def __init__(self, path) -> None:
        self.path = Path(path)
        self._index: dict[tuple, CacheRecord] = {}
        self.hits = 0
        self.misses = 0
        self._load()

    @classmethod
    def from_env(cls, explicit=None) -> Optional["QuarticCache"]:
        path = os.environ.get(ENV_VAR) or explicit
        return cls(path) if path else None

    def _load(self) -> None:
        self._index.clear()
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_SH)
            try:
                lines = fh.read().splitlines()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        for line in lines:
            if not line.strip():
                continue
            try:
                rec = CacheRecord.from_json(json.loads(line))
            except (ValueError, KeyError):
                continue  # a torn or foreign line is ignored, not fatal
            if _better(rec, self._index.get(rec.key)):
                self._index[rec.key] = rec

    @staticmethod
    def _key(problem: QuarticProblem, gcd_mode: str) -> tuple:
        return (problem.a_curve, problem.side.value, problem.b1, gcd_mode)

    def __len__(self) -> int:
        return len(self._index)

    def lookup(self, problem: QuarticProblem, gcd_mode: str, height: int) -> Optional[SearchOutcome]:
        rec = self._index.get(self._key(problem, gcd_mode))
        out = None if rec is None else self._answer(rec, height)
        if out is None:
            self.misses += 1
        else:
            self.hits += 1
        return out

    @staticmethod
    def _answer(rec: CacheRecord, height: int) -> Optional[SearchOutcome]:
        o = rec.outcome
        if isinstance(o, LocallyExcluded):
            return o
        if height > rec.height:
            return None
        if isinstance(o, ExhaustedToHeight):
            return ExhaustedToHeight(height)
        # the stored witness is lexicographically least only within its own box
        w = o.witness
        return o if max(w.e, w.M) <= height else None

    def store(self, problem: QuarticProblem, gcd_mode: str, height: int, outcome: SearchOutcome) -> None:
        rec = CacheRecord(
            problem.a_curve,
            problem.side,
            problem.b1,
            gcd_mode,
            height,
            outcome,
            datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )
        if not _better(rec, self._index.get(rec.key)):
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps(rec.to_json(), sort_keys=True, separators=(",", ":")) + "\n"
        with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line)
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        self._index[rec.key] = rec
