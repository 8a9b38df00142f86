"""On-disk cache of truncation structure constants.

A cache file holds the composition table of one truncation: for every
composable pair of basis relations, the exponent of the parameter and the
index of the resulting relation, plus the coefficient as text.  The file is
keyed by (backend, q, N, parameter, specialization) and carries a sha256 of
its own content; a file whose hash does not match is ignored and rewritten.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "TENSOR_ENVELOPE_CACHE"
SCHEMA = 1


def default_cache_dir():
    return os.environ.get(ENV_VAR) or None


def cache_key(cat, F, N: int) -> dict:
    generic = bool(getattr(F, "is_generic", False))
    return {"backend": cat.backend, "q": int(getattr(cat, "q", 0)), "N": int(N),
            "u": "t" if generic else F.name,
            "specialization": "generic" if generic else "rational"}


def _digest(obj) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def composition_table(A) -> list:
    """Rows [i, j, k, b, a, exponent, c, coeff] for basis b in Hom(j,k), a in Hom(i,j)."""
    D, C, F = A.D, A.C, A.F
    n = len(A.objects)
    rows = []
    for i in range(n):
        for j in range(n):
            left = C.basis(i, j)
            for k in range(n):
                right = C.basis(j, k)
                idx = C.index(i, k)
                for b, r2 in enumerate(right):
                    for a, r1 in enumerate(left):
                        e, r = D.compose_rel(r2, r1)
                        rows.append([i, j, k, b, a, e, idx[r], F.format(D.coeff(e))])
    return rows


class StructureCache:
    def __init__(self, root):
        self.root = Path(root)

    def path(self, key: dict) -> Path:
        return self.root / f"structure-{_digest(key)[:20]}.json"

    def load(self, A) -> str:
        """Fill the composition cache of A from disk: 'hit', 'miss' or 'invalid'."""
        key = cache_key(A.cat, A.F, A.N)
        p = self.path(key)
        if not p.exists():
            return "miss"
        try:
            payload = json.loads(p.read_text())
            body = {"key": payload["key"], "table": payload["table"]}
            if payload.get("schema") != SCHEMA or payload["key"] != key or _digest(body) != payload["sha256"]:
                return "invalid"
        except (ValueError, KeyError, TypeError):
            return "invalid"
        D, C = A.D, A.C
        for i, j, k, b, a, e, c, _ in payload["table"]:
            r2 = C.basis(j, k)[b]
            r1 = C.basis(i, j)[a]
            D._comp[(r2, r1)] = (e, C.basis(i, k)[c])
        return "hit"

    def store(self, A) -> Path:
        key = cache_key(A.cat, A.F, A.N)
        body = {"key": key, "table": composition_table(A)}
        payload = {"schema": SCHEMA, **body, "sha256": _digest(body)}
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.path(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, p)
        return p


def load_or_build(cache_dir, A) -> str:
    """Use the cache when present; otherwise compute and store.  Returns the status."""
    if not cache_dir:
        return "disabled"
    cache = StructureCache(cache_dir)
    status = cache.load(A)
    if status != "hit":
        cache.store(A)
    return status
