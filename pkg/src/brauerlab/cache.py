"""On-disk cache of orbit posets, one JSON file per (type, |B_Y|)."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from . import admissible as adm
from .rootsystem import RootSystem

FORMAT_VERSION = 1

log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    return Path(os.environ.get("BRAUERLAB_CACHE", "./cache"))


class OrbitCache:
    def __init__(self, directory: os.PathLike | str):
        self.directory = Path(directory)

    def path(self, sys: RootSystem, Y: tuple[int, ...]) -> Path:
        size = len(adm.base_set(sys, Y))
        if sys.name in adm.COCLIQUE_TABLE:
            return self.directory / f"{sys.name}_{size}.json"
        # outside the E table two orbits may share a size
        tag = "-".join(map(str, Y)) or "none"
        return self.directory / f"{sys.name}_{size}_{tag}.json"

    def load(self, sys: RootSystem, Y: tuple[int, ...]):
        p = self.path(sys, Y)
        try:
            data = json.loads(p.read_text())
        except (OSError, ValueError):
            return None
        if data.get("version") != FORMAT_VERSION or data.get("type") != sys.name \
                or tuple(data.get("Y", ())) != tuple(Y):
            log.info("ignoring stale cache file %s", p)
            return None
        try:
            members = [adm.as_set(sys, [tuple(r) for r in B]) for B in data["members"]]
            return adm.poset_from_parts(sys, members, data["cover_edges"], data["heights"],
                                        data["max_index"], data["base_index"])
        except (KeyError, ValueError, TypeError):
            log.info("ignoring unreadable cache file %s", p)
            return None

    def save(self, sys: RootSystem, Y: tuple[int, ...], orbit: adm.OrbitPoset) -> None:
        roots = sys.positive_roots
        data = {
            "version": FORMAT_VERSION,
            "type": sys.name,
            "Y": list(Y),
            "size": orbit.size,
            "members": [[list(roots[b]) for b in B] for B in orbit.members],
            "cover_edges": [list(e) for e in orbit.cover_edges],
            "heights": orbit.heights,
            "max_index": orbit.max_element,
            "base_index": orbit.base,
        }
        p = self.path(sys, Y)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            tmp = p.with_suffix(".tmp")
            tmp.write_text(json.dumps(data, separators=(",", ":")))
            tmp.replace(p)
        except OSError as exc:
            log.warning("could not write orbit cache %s: %s", p, exc)
