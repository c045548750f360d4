"""On-disk ingredient cache.

Entries live at ``<dir>/<sha256(key)[:16]>.json`` with the full key in a ``.key``
sidecar.  Writes go through a temporary file and ``os.replace``.  Every read
re-verifies the design; anything that fails verification, parsing, or key
matching is moved to ``<dir>/quarantine/`` and reported as CorruptEntry.
"""
from __future__ import annotations

import hashlib
import os
import shutil
import tempfile
from pathlib import Path
from typing import Optional

from ..design import dumps, load, loads
from ..errors import CorruptEntry
from ..verify import verify

ENV_VAR = "SPLITCODE_CACHE"
DEFAULT_DIR = "ingredient-cache"
FIXTURE_DIR = Path(__file__).with_name("fixtures")


def resolve_cache_dir(flag: Optional[str] = None) -> Path:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.cwd() / DEFAULT_DIR


def ingredient_key(kind: str, t: int, v: int, k: int, c: int = 1, lam: int = 1,
                   gtype: str = "", stem: int = 0) -> str:
    return f"{kind};t={t};v={v};k={k};c={c};lambda={lam};type={gtype};stem={stem}"


def _stem(key: str) -> str:
    return hashlib.sha256(key.encode()).hexdigest()[:16]


class IngredientCache:
    def __init__(self, directory=None, fixtures: Optional[Path] = FIXTURE_DIR):
        self.dir = resolve_cache_dir(directory)
        self.fixtures = fixtures

    def path_for(self, key: str) -> Path:
        return self.dir / f"{_stem(key)}.json"

    def _quarantine(self, key: str, why: str):
        qdir = self.dir / "quarantine"
        qdir.mkdir(parents=True, exist_ok=True)
        for src in (self.path_for(key), self.path_for(key).with_suffix(".key")):
            if src.exists():
                shutil.move(str(src), str(qdir / src.name))
        raise CorruptEntry(f"cache entry for {key!r} quarantined: {why}")

    @staticmethod
    def _check(design):
        report = verify(design)
        return None if report else f"verification failed ({report.describe()})"

    def get(self, key: str):
        """Verified design for ``key`` or None; raises CorruptEntry on a bad entry."""
        path = self.path_for(key)
        if path.exists():
            try:
                stored_key = path.with_suffix(".key").read_text().strip()
                if stored_key != key:
                    raise ValueError(f"sidecar key {stored_key!r} does not match")
                design = load(path)
            except (OSError, ValueError, KeyError, TypeError) as exc:
                self._quarantine(key, str(exc))
            why = self._check(design)
            if why:
                self._quarantine(key, why)
            return design
        return self.get_fixture(key)

    def get_fixture(self, key: str):
        if self.fixtures is None:
            return None
        path = self.fixtures / f"{_stem(key)}.json"
        if not path.exists():
            return None
        design = loads(path.read_text())
        if not verify(design):
            raise CorruptEntry(f"shipped fixture for {key!r} fails verification")
        return design

    def put(self, key: str, design) -> Path:
        report = verify(design)
        if not report:
            raise CorruptEntry(f"refusing to cache an invalid design: {report.describe()}")
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.path_for(key)
        for target, text in ((path.with_suffix(".key"), key + "\n"), (path, dumps(design))):
            fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(text)
                os.chmod(tmp, 0o644)
                os.replace(tmp, target)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        return path
