"""On-disk cache of special sets, keyed by canonical expression and engine version."""
from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

import numpy as np

from .analysis import SpecialSets, compute_special_sets, install_special_sets
from .rings import Ring

ENGINE_VERSION = "ringlab-sets/1"
ENV_VAR = "RINGLAB_CACHE_DIR"
_FIELDS = ("idem_mask", "neg_idem_mask", "unit_mask", "nil_mask", "inverse")


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "ringlab"


def cache_key(expr: str, version: str = ENGINE_VERSION) -> str:
    return hashlib.sha256(f"{version}\n{expr}".encode()).hexdigest()


class SetCache:
    def __init__(self, directory: str | os.PathLike | None = None, version: str = ENGINE_VERSION):
        self.dir = Path(directory) if directory is not None else default_dir()
        self.version = version

    def path_for(self, R: Ring) -> Path:
        return self.dir / f"{cache_key(R.name, self.version)}.npz"

    def load(self, R: Ring) -> SpecialSets | None:
        path = self.path_for(R)
        try:
            with np.load(path, allow_pickle=False) as z:
                if str(z["version"]) != self.version or str(z["expr"]) != R.name:
                    return None
                arrays = {k: z[k] for k in _FIELDS}
        except (OSError, KeyError, ValueError):
            return None
        if any(len(a) != R.order for a in arrays.values()):
            return None
        for a in arrays.values():
            a.setflags(write=False)
        return SpecialSets(R, **arrays)

    def store(self, R: Ring, sets: SpecialSets) -> Path:
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.path_for(R)
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".npz")
        try:
            with os.fdopen(fd, "wb") as fh:
                np.savez(
                    fh,
                    version=np.str_(self.version),
                    expr=np.str_(R.name),
                    **{k: getattr(sets, k) for k in _FIELDS},
                )
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def sets_for(self, R: Ring) -> SpecialSets:
        """Load from disk or compute and persist; either way seed the ring's memo."""
        sets = self.load(R)
        if sets is None:
            sets = compute_special_sets(R)
            try:
                self.store(R, sets)
            except OSError:
                pass  # an unwritable cache only costs recomputation
        install_special_sets(R, sets)
        return sets
