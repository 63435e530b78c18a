"""Level marks, isocline indices and colours, wires and seeds.

Isoclines extend tree levels: index 0 is anchored at the original root and
grows downward.  Every fourth isocline is green or orange (green at 0 mod 8,
orange at 4 mod 8, blue otherwise, all shifted by a phase in 0..7).  An
R-tile is a seed; it is active when it sits on a green or orange isocline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import USE_NUMBA, jit
from . import heptagrid as hg
from .heptagrid import G, M, R, TreePatch, Y, as_status, extend_upward


class IsoclineError(hg.HeptaError):
    pass


class PatternUnavailable(IsoclineError):
    pass


class InsufficientMargin(IsoclineError):
    pass


@dataclass(frozen=True)
class LevelMark:
    kind: str            # "w" or "b"
    join: tuple          # pair of side numbers carrying the endpoints


def mark_of_status(status) -> LevelMark:
    s = as_status(status)
    return LevelMark(hg.MARK_KIND[s], hg.MARK_SIDES[s])


def assign_marks(patch: TreePatch) -> dict:
    """Marks keyed by address; the kind is a function of status alone."""
    return {patch.address_of(i): mark_of_status(int(patch.status[i]))
            for i in range(patch.n_tiles)}


def isocline_of(patch: TreePatch, addr) -> int:
    i = patch.index_of(addr)
    return int(patch.level_of[i]) - patch.anchor_level


def isocline_colour(value: int, phase: int = 0) -> str:
    r = (value + phase) % 8
    if r == 0:
        return "green"
    if r == 4:
        return "orange"
    return "blue"


@dataclass(frozen=True)
class Seed:
    address: tuple
    isocline: int
    active: bool


def seed_at(patch: TreePatch, addr, phase: int = 0) -> Seed:
    i = patch.index_of(addr)
    if patch.status[i] != R:
        raise IsoclineError(f"{addr} is not an R-tile")
    iso = isocline_of(patch, addr)
    return Seed(tuple(addr), iso, isocline_colour(iso, phase) != "blue")


# One wire step, top to bottom: Y-son of the seed, its G-son, its M-son,
# its R-son (the next seed).  WIRE_SLOTS are the son slots realizing it;
# ANCESTRY_UP are the statuses met when climbing from a seed.
WIRE_STATUSES = (Y, G, M, R)
WIRE_SLOTS = (1, 3, 2, 2)
ANCESTRY_UP = (M, G, Y, R)


@dataclass(frozen=True)
class Wire:
    """A chain of seeds four isoclines apart joined by the Y,G,M,R pattern.

    `seeds[k]` has abscissa `base_abscissa + k`; the patch may have been
    re-rooted by upward extensions to host seeds above the original start.
    """

    patch: TreePatch
    seeds: tuple          # addresses, top to bottom
    base_abscissa: int    # abscissa of seeds[0]
    phase: int = 0

    def abscissa(self, k: int) -> int:
        return self.base_abscissa + k

    def isocline(self, k: int) -> int:
        return isocline_of(self.patch, self.seeds[k])


def build_wire(patch: TreePatch, start, down_steps: int, up_steps: int,
               base_abscissa: int = 0, phase: int = 0) -> Wire:
    """Wire through `start` (an R-tile on a green isocline), extended
    `down_steps` seeds down inside the patch and `up_steps` seeds up,
    re-rooting the patch when the chain outgrows it."""
    i = patch.index_of(start)
    if patch.status[i] != R:
        raise IsoclineError(f"wire start {start} is not an R-tile")
    iso0 = isocline_of(patch, start)
    if (iso0 + phase) % 8 != 0:
        raise IsoclineError(f"wire start must sit on a green isocline "
                            f"(index {iso0}, phase {phase})")
    if base_abscissa % 2 != 0:
        raise IsoclineError("base_abscissa must be even (green anchor)")

    seeds = [tuple(start)]
    for _ in range(down_steps):
        nxt = seeds[-1] + WIRE_SLOTS
        try:
            patch.index_of(nxt)
        except hg.UnknownAddress:
            raise PatternUnavailable(
                f"patch too shallow for the seed below {seeds[-1]}") from None
        seeds.append(nxt)

    for _ in range(up_steps):
        for k, father in enumerate(ANCESTRY_UP):
            top = seeds[0]
            if len(top) > k:
                anc = top[: len(top) - k - 1]
                got = patch.status_of(anc)
                want = hg.STATUS_NAMES[father]
                if got != want:
                    raise PatternUnavailable(
                        f"ancestor {anc} has status {got}, wire needs {want}")
            else:
                old_apex = patch.apex_status
                patch = extend_upward(patch, father)
                slot = hg.reroot_slot(father, old_apex)
                seeds = [(slot,) + s for s in seeds]
        seeds.insert(0, seeds[0][:-4])
        base_abscissa -= 1

    return Wire(patch=patch, seeds=tuple(seeds),
                base_abscissa=base_abscissa, phase=phase)


def seeds_on_isoclines(patch: TreePatch, lo: int, hi: int):
    """Per-isocline R-tile index lists for isoclines lo..hi inclusive."""
    anchor = patch.anchor_level
    out = {}
    for iso in range(lo, hi + 1):
        m = iso + anchor
        if not (0 <= m <= patch.depth):
            raise IsoclineError(f"isocline {iso} outside patch")
        sl = patch.level_slice(m)
        idx = np.nonzero(patch.status[sl] == R)[0] + sl.start
        out[iso] = [int(i) for i in idx]
    return out


# ---------------------------------------------------------------------------
# BFS kernels (numba with numpy fallback)

def _bfs_py(adj, starts, dist):
    frontier = starts
    d = 0
    while len(frontier):
        dist[frontier] = d
        nxt = adj[frontier].ravel()
        nxt = nxt[nxt >= 0]
        nxt = np.unique(nxt)
        frontier = nxt[dist[nxt] < 0]
        d += 1
    return dist


def _bfs_loop(adj, starts, dist):
    queue = np.empty(dist.shape[0], dtype=np.int64)
    tail = 0
    for k in range(len(starts)):
        s = starts[k]
        if dist[s] < 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    head = 0
    while head < tail:
        i = queue[head]
        head += 1
        for c in range(7):
            j = adj[i, c]
            if j >= 0 and dist[j] < 0:
                dist[j] = dist[i] + 1
                queue[tail] = j
                tail += 1
    return dist


_bfs_kernel = jit(_bfs_loop) if USE_NUMBA else _bfs_py


def distance_field(patch: TreePatch, sources) -> np.ndarray:
    """BFS distance from the source tile set over side adjacency; -1 where
    unreachable."""
    adj, _ = patch.adjacency()
    dist = np.full(patch.n_tiles, -1, dtype=np.int64)
    starts = np.asarray(sorted(int(s) for s in sources), dtype=np.int64)
    if len(starts) == 0:
        return dist
    return _bfs_kernel(adj, starts, dist)


def active_seed_indices(patch: TreePatch, phase: int = 0) -> np.ndarray:
    iso = patch.level_of.astype(np.int64) - patch.anchor_level
    act = (patch.status == R) & ((iso + phase) % 4 == 0)
    return np.nonzero(act)[0]


def boundary_distance_field(patch: TreePatch) -> np.ndarray:
    """Distance to the nearest tile that has a side leaving the patch."""
    adj, _ = patch.adjacency()
    has_boundary = (adj < 0).any(axis=1)
    return distance_field(patch, np.nonzero(has_boundary)[0])


def nearest_active_seed(patch: TreePatch, addr, phase: int = 0):
    """(Seed, distance) for the closest active seed, by BFS over sides.

    The distance is only trusted while the explored ball stays inside the
    patch; InsufficientMargin is raised when the boundary interferes first.
    """
    adj, _ = patch.adjacency()
    i0 = patch.index_of(addr)
    anchor = patch.anchor_level
    seen = np.zeros(patch.n_tiles, dtype=bool)
    frontier = [i0]
    seen[i0] = True
    d = 0
    clipped = False
    while frontier:
        for i in frontier:
            iso = int(patch.level_of[i]) - anchor
            if patch.status[i] == R and (iso + phase) % 4 == 0:
                if clipped:
                    raise InsufficientMargin(
                        f"search ball around {addr} left the patch")
                return seed_at(patch, patch.address_of(i), phase), d
        nxt = []
        for i in frontier:
            for c in range(7):
                j = int(adj[i, c])
                if j < 0:
                    clipped = True
                elif not seen[j]:
                    seen[j] = True
                    nxt.append(j)
        frontier = nxt
        d += 1
    raise InsufficientMargin(f"no active seed reachable from {addr}")


def write_patch_with_isoclines(patch: TreePatch, fh, phase: int = 0) -> None:
    """Patch format extended with per-tile isocline and mark fields."""
    fh.write("HEPTAPATCH v1\n")
    fh.write(f"apex_status {hg.STATUS_NAMES[patch.apex_status]}\n")
    fh.write(f"depth {patch.depth}\n")
    ups = " ".join(hg.STATUS_NAMES[as_status(s)] for s in patch.up_extensions)
    fh.write(f"up {ups if ups else '-'}\n")
    anchor = patch.anchor_level
    for i in range(patch.n_tiles):
        addr = patch.address_of(i)
        key = ".".join(map(str, addr)) if addr else "-"
        s = int(patch.status[i])
        iso = int(patch.level_of[i]) - anchor
        mk = mark_of_status(s)
        fh.write(f"tile {key} {hg.STATUS_NAMES[s]} iso {iso} "
                 f"{isocline_colour(iso, phase)} mark {mk.kind} "
                 f"{mk.join[0]},{mk.join[1]}\n")
