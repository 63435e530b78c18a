"""Combinatorial skeleton of the {7,3} heptagrid.

Tiles carry one of six statuses (G, Y, B, O, M, R).  A finite patch is the
closure of an apex tile under the son rules, stored level by level in flat
numpy arrays.  Side numbering is 1..7, counterclockwise, side 1 shared with
the father; the neighbour table records, for every status and side, which
side number the neighbour assigns to the shared side and what the
neighbour's status class is.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# ---------------------------------------------------------------------------
# statuses and son rules

G, Y, B, O, M, R = range(6)
STATUS_NAMES = "GYBOMR"
STATUS_INDEX = {c: i for i, c in enumerate(STATUS_NAMES)}

# status classes: M behaves like B, R like O for neighbour geometry
CLASS_OF = {G: "g", Y: "y", B: "b", O: "o", M: "b", R: "o"}

SONS_R1 = {
    G: (Y, M, G),
    Y: (Y, B, G),
    B: (B, O),
    O: (Y, B, O),
    M: (B, R),
    R: (Y, B, O),
}
SONS_R0 = {
    G: (Y, B, G),
    Y: (Y, B, G),
    B: (B, O),
    O: (Y, B, O),
}

# side of the father shared with its first son
FIRST_SON_SIDE = {G: 3, Y: 4, B: 4, O: 3, M: 4, R: 3}

# sides shared with the previous / next tile on the same level
LEFT_SIDE = {G: 2, Y: 3, B: 2, O: 2, M: 2, R: 2}
RIGHT_SIDE = {G: 6, Y: 7, B: 7, O: 7, M: 7, R: 7}

# level-mark kind and the pair of sides its endpoints lie on
MARK_KIND = {G: "b", Y: "b", B: "w", O: "w", M: "w", R: "w"}
MARK_SIDES = {G: (2, 6), Y: (3, 7), B: (2, 7), O: (2, 7), M: (2, 7), R: (2, 7)}

# Neighbour table: per status and side, the admissible (side-in-neighbour,
# neighbour status class) alternatives.  Transcribed once as data; the cell
# (G, side 1, father g) is stored as 5 (the printed source has 7 there,
# which fails the symmetry check below and contradicts the G-son slot).
TABLE_N = {
    G: {1: ((6, "y"), (5, "g")), 2: ((7, "b"),), 3: ((1, "y"),),
        4: ((1, "b"),), 5: ((1, "g"),), 6: ((2, "b"),), 7: ((3, "b"),)},
    Y: {1: ((4, "y"), (3, "g"), (3, "o")), 2: ((6, "o"), (6, "b")),
        3: ((7, "o"),), 4: ((1, "y"),), 5: ((1, "b"),), 6: ((1, "g"),),
        7: ((2, "b"),)},
    B: {1: ((5, "y"), (4, "g"), (4, "b"), (4, "o")), 2: ((7, "y"), (6, "g")),
        3: ((7, "g"),), 4: ((1, "b"),), 5: ((1, "o"),), 6: ((2, "y"),),
        7: ((2, "g"), (2, "o"))},
    O: {1: ((5, "b"), (5, "o")), 2: ((7, "b"),), 3: ((1, "y"),),
        4: ((1, "b"),), 5: ((1, "o"),), 6: ((2, "y"),), 7: ((3, "y"),)},
}
TABLE_N[M] = TABLE_N[B]
TABLE_N[R] = TABLE_N[O]

_CLASS_MEMBERS = {"g": (G,), "y": (Y,), "b": (B, M), "o": (O, R)}


class TableError(AssertionError):
    pass


def _check_table_symmetry() -> None:
    """Fail fast if any transcribed cell lacks its symmetric counterpart."""
    for s in (G, Y, B, O):
        for side, alts in TABLE_N[s].items():
            for nbr_side, cls in alts:
                for n in _CLASS_MEMBERS[cls]:
                    back = TABLE_N[n][nbr_side]
                    if not any(bs == side and bc == CLASS_OF[s]
                               for bs, bc in back):
                        raise TableError(
                            f"{STATUS_NAMES[s]} side {side} -> "
                            f"({nbr_side},{cls}) has no symmetric entry")


_check_table_symmetry()


# ---------------------------------------------------------------------------
# Fibonacci numbers (f0 = f1 = 1)

class FibonacciTable:
    """Fibonacci sequence with f0 = f1 = 1, extended on demand."""

    def __init__(self):
        self._f = [1, 1]

    def __call__(self, n: int) -> int:
        f = self._f
        while len(f) <= n:
            f.append(f[-1] + f[-2])
        return f[n]


fib = FibonacciTable()


# ---------------------------------------------------------------------------
# errors

class HeptaError(Exception):
    pass


class IncompatibleFather(HeptaError):
    pass


class DifferentLevels(HeptaError):
    pass


class InvalidRoot(HeptaError):
    pass


class UnknownAddress(HeptaError):
    pass


BOUNDARY = None  # sentinel returned by neighbour lookups leaving the patch


def sons(status, ruleset: str = "R1"):
    """Ordered son statuses of `status` under rule set "R0" or "R1"."""
    status = as_status(status)
    table = SONS_R1 if ruleset == "R1" else SONS_R0
    if status not in table:
        raise HeptaError(f"{STATUS_NAMES[status]} has no rule in {ruleset}")
    return table[status]


def as_status(s) -> int:
    if isinstance(s, str):
        try:
            return STATUS_INDEX[s]
        except KeyError:
            raise HeptaError(f"unknown status {s!r}") from None
    return int(s)


def status_name(s: int) -> str:
    return STATUS_NAMES[s]


# ---------------------------------------------------------------------------
# the patch

TileAddress = tuple  # of 1-based son-slot indices; () is the apex


@dataclass
class TreePatch:
    """A finite patch: an apex tree grown by the son rules, flat arrays.

    Tiles are indexed in level order (level by level, left to right).
    `up_extensions` lists the father statuses applied above the original
    root, most recent first (the original root sits at level
    len(up_extensions) of the current tree).
    """

    apex_status: int
    depth: int
    up_extensions: tuple = ()
    status: np.ndarray = field(repr=False, default=None)
    parent: np.ndarray = field(repr=False, default=None)
    slot: np.ndarray = field(repr=False, default=None)  # 0-based slot in father
    first_child: np.ndarray = field(repr=False, default=None)
    level_of: np.ndarray = field(repr=False, default=None)
    level_start: np.ndarray = field(repr=False, default=None)
    _adj: np.ndarray = field(repr=False, default=None)
    _adj_side: np.ndarray = field(repr=False, default=None)

    # -- construction ------------------------------------------------------

    @property
    def n_tiles(self) -> int:
        return len(self.status)

    @property
    def anchor_level(self) -> int:
        """Level of the original root (0 for a patch never extended)."""
        return len(self.up_extensions)

    def level_slice(self, m: int) -> slice:
        return slice(int(self.level_start[m]), int(self.level_start[m + 1]))

    def level_size(self, m: int) -> int:
        return int(self.level_start[m + 1] - self.level_start[m])

    # -- addresses ---------------------------------------------------------

    def index_of(self, addr: TileAddress) -> int:
        i = 0
        for slot in addr:
            fc = self.first_child[i]
            arity = len(SONS_R1[self.status[i]])
            if fc < 0 or not (1 <= slot <= arity):
                raise UnknownAddress(f"address {addr} not in patch")
            i = int(fc) + slot - 1
        return i

    def address_of(self, i: int) -> TileAddress:
        rev = []
        while self.parent[i] >= 0:
            rev.append(int(self.slot[i]) + 1)
            i = int(self.parent[i])
        return tuple(reversed(rev))

    def status_of(self, addr: TileAddress) -> str:
        return STATUS_NAMES[self.status[self.index_of(addr)]]

    def addresses(self):
        for i in range(self.n_tiles):
            yield self.address_of(i)

    # -- borders -----------------------------------------------------------

    def left_border(self, m: int) -> TileAddress:
        return self.address_of(int(self.level_start[m]))

    def right_border(self, m: int) -> TileAddress:
        return self.address_of(int(self.level_start[m + 1]) - 1)

    def last_child(self, i: int) -> int:
        fc = int(self.first_child[i])
        if fc < 0:
            return -1
        return fc + len(SONS_R1[self.status[i]]) - 1

    # -- adjacency ---------------------------------------------------------

    def adjacency(self):
        """(adj, adj_side): per tile and side 1..7 (column side-1), the
        neighbouring tile index (-1 outside the patch) and the side number
        the neighbour assigns to the shared side."""
        if self._adj is None:
            self._adj, self._adj_side = _build_adjacency(self)
        return self._adj, self._adj_side


def grow_tree(apex, depth: int, up_extensions: tuple = ()) -> TreePatch:
    """Grow the patch rooted at `apex` down to `depth` levels (rules R1)."""
    apex = as_status(apex)
    if depth < 0:
        raise HeptaError("depth must be >= 0")

    arity = np.array([len(SONS_R1[s]) for s in range(6)], dtype=np.int64)
    son_table = np.zeros((6, 3), dtype=np.int8)
    for s, ss in SONS_R1.items():
        son_table[s, : len(ss)] = ss

    statuses = [np.array([apex], dtype=np.int8)]
    parents = [np.array([-1], dtype=np.int64)]
    slots = [np.array([0], dtype=np.int8)]
    level_start = [0, 1]
    base = 0
    for _ in range(depth):
        cur = statuses[-1]
        ar = arity[cur]
        offs = np.concatenate(([0], np.cumsum(ar)))
        total = int(offs[-1])
        par = np.repeat(np.arange(len(cur), dtype=np.int64) + base, ar)
        pos = np.arange(total, dtype=np.int64) - np.repeat(offs[:-1], ar)
        statuses.append(son_table[cur[par - base], pos])
        parents.append(par)
        slots.append(pos.astype(np.int8))
        base += len(cur)
        level_start.append(level_start[-1] + total)

    status = np.concatenate(statuses)
    parent = np.concatenate(parents)
    slot = np.concatenate(slots)
    n = len(status)
    level_start = np.array(level_start, dtype=np.int64)

    first_child = np.full(n, -1, dtype=np.int64)
    if n > 1:
        is_first = slot[1:] == 0
        first_child[parent[1:][is_first]] = np.nonzero(is_first)[0] + 1

    level_of = np.zeros(n, dtype=np.int16)
    for m in range(depth + 1):
        level_of[level_start[m]:level_start[m + 1]] = m

    return TreePatch(apex_status=apex, depth=depth,
                     up_extensions=tuple(up_extensions), status=status,
                     parent=parent, slot=slot, first_child=first_child,
                     level_of=level_of, level_start=level_start)


def extend_upward(patch: TreePatch, father) -> TreePatch:
    """Re-root the patch one level up under a tile of status `father`.

    Statuses are deterministic under the rules, so the old tree reappears
    unchanged as the subtree under the slot matching the old apex; every
    pre-existing tile keeps its status, re-addressed by one slot prefix.
    """
    father = as_status(father)
    ss = SONS_R1[father]
    if patch.apex_status not in ss:
        raise IncompatibleFather(
            f"{STATUS_NAMES[father]} has no "
            f"{STATUS_NAMES[patch.apex_status]}-son")
    return grow_tree(father, patch.depth + 1,
                     up_extensions=(father,) + patch.up_extensions)


def reroot_slot(father, child) -> int:
    """1-based slot of the `child` status in `father`'s son list."""
    father, child = as_status(father), as_status(child)
    ss = SONS_R1[father]
    if child not in ss:
        raise IncompatibleFather(
            f"{STATUS_NAMES[father]} has no {STATUS_NAMES[child]}-son")
    return ss.index(child) + 1


# ---------------------------------------------------------------------------
# adjacency

def _build_adjacency(patch: TreePatch):
    """Resolve all seven neighbours of every tile.

    Four edge families cover every side: father/son, consecutive tiles of a
    level, and the two diagonal families (a 2-son tile's side 3 meets the
    G-tile just before its first child; sides 6 of w-statused tiles meet the
    Y-tile just after their last child).
    """
    n = patch.n_tiles
    status = patch.status
    adj = np.full((n, 7), -1, dtype=np.int64)
    adj_side = np.zeros((n, 7), dtype=np.int8)

    first_side = np.array([FIRST_SON_SIDE[s] for s in range(6)], dtype=np.int64)
    left_side = np.array([LEFT_SIDE[s] for s in range(6)], dtype=np.int64)
    right_side = np.array([RIGHT_SIDE[s] for s in range(6)], dtype=np.int64)
    arity = np.array([len(SONS_R1[s]) for s in range(6)], dtype=np.int64)

    def put(a, sa, b, sb):
        adj[a, sa - 1] = b
        adj_side[a, sa - 1] = sb
        adj[b, sb - 1] = a
        adj_side[b, sb - 1] = sa

    # father-son edges
    child = np.arange(1, n, dtype=np.int64)
    if len(child):
        par = patch.parent[child]
        pside = first_side[status[par]] + patch.slot[child]
        put(child, np.ones(len(child), dtype=np.int64), par, pside)

    # level chains
    ls = patch.level_start
    for m in range(patch.depth + 1):
        lo, hi = int(ls[m]), int(ls[m + 1])
        if hi - lo < 2:
            continue
        a = np.arange(lo, hi - 1, dtype=np.int64)
        b = a + 1
        put(a, right_side[status[a]], b, left_side[status[b]])

    # diagonals
    has_child = patch.first_child >= 0
    t = np.nonzero(has_child)[0]
    fc = patch.first_child[t]
    lc = fc + arity[status[t]] - 1
    lv = patch.level_of[t].astype(np.int64) + 1
    # side 3 of B/M meets the tile just before the first child (a G) at its 7
    bm = (status[t] == B) | (status[t] == M)
    ok = bm & (fc > ls[lv])
    put(t[ok], np.full(ok.sum(), 3, dtype=np.int64), fc[ok] - 1,
        np.full(ok.sum(), 7, dtype=np.int64))
    # side 6 of B/O/M/R meets the tile just after the last child (a Y) at its 2
    w = (status[t] == B) | (status[t] == M) | (status[t] == O) | (status[t] == R)
    ok = w & (lc + 1 < ls[lv + 1])
    put(t[ok], np.full(ok.sum(), 6, dtype=np.int64), lc[ok] + 1,
        np.full(ok.sum(), 2, dtype=np.int64))

    adj.setflags(write=False)
    adj_side.setflags(write=False)
    return adj, adj_side


def neighbor(patch: TreePatch, addr: TileAddress, side: int):
    """Adjacent tile across `side` and the side number it assigns to the
    shared side, or BOUNDARY when the neighbour lies outside the patch."""
    if not (1 <= side <= 7):
        raise HeptaError(f"side {side} out of range 1..7")
    adj, adj_side = patch.adjacency()
    i = patch.index_of(addr)
    j = adj[i, side - 1]
    if j < 0:
        return BOUNDARY
    return patch.address_of(int(j)), int(adj_side[i, side - 1])


def appartness(patch: TreePatch, a: TileAddress, b: TileAddress) -> int:
    """Side-sharing steps along the level joining two same-level tiles."""
    ia, ib = patch.index_of(a), patch.index_of(b)
    if patch.level_of[ia] != patch.level_of[ib]:
        raise DifferentLevels(f"{a} and {b} are not on the same level")
    return abs(int(ia) - int(ib))


def subtree_relation(patch: TreePatch, mu: TileAddress, nu: TileAddress) -> str:
    """Relation between the trees rooted at two non-B, non-M tiles.

    T(x) is the set of x and its recursive sons; the relation reduces to a
    prefix test on the two addresses.
    """
    for addr in (mu, nu):
        s = patch.status[patch.index_of(addr)]
        if s in (B, M):
            raise InvalidRoot(
                f"{STATUS_NAMES[s]}-tiles do not root a tree of the heptagrid")
    if mu == nu:
        return "Equal"
    if mu == nu[: len(mu)]:
        return "Contains"
    if nu == mu[: len(nu)]:
        return "ContainedIn"
    return "Disjoint"


def descendant_set(patch: TreePatch, root: TileAddress, max_level=None):
    """Brute-force tile set of T(root) within the patch (oracle helper)."""
    i0 = patch.index_of(root)
    out = set()
    stack = [i0]
    while stack:
        i = stack.pop()
        if max_level is not None and patch.level_of[i] > max_level:
            continue
        out.add(i)
        fc = int(patch.first_child[i])
        if fc >= 0:
            stack.extend(range(fc, fc + len(SONS_R1[patch.status[i]])))
    return out


def subtree_span(patch: TreePatch, i: int, m: int):
    """Index range [lo, hi] of tile i's subtree on level m, or None.

    Children are contiguous, so the subtree meets each level in one run
    bounded by the leftmost/rightmost descendant chains.
    """
    li = int(patch.level_of[i])
    if m < li:
        return None
    lo = hi = i
    for _ in range(m - li):
        fc = int(patch.first_child[lo])
        if fc < 0:
            return None
        lo = fc
        fc = int(patch.first_child[hi])
        hi = fc + len(SONS_R1[patch.status[hi]]) - 1
    return lo, hi


# ---------------------------------------------------------------------------
# patch text format

def write_patch(patch: TreePatch, fh) -> None:
    """HEPTAPATCH v1: header lines then one line per tile in level order."""
    fh.write("HEPTAPATCH v1\n")
    fh.write(f"apex_status {STATUS_NAMES[patch.apex_status]}\n")
    fh.write(f"depth {patch.depth}\n")
    ups = " ".join(STATUS_NAMES[as_status(s)] for s in patch.up_extensions)
    fh.write(f"up {ups if ups else '-'}\n")
    for i in range(patch.n_tiles):
        addr = patch.address_of(i)
        key = ".".join(map(str, addr)) if addr else "-"
        fh.write(f"tile {key} {STATUS_NAMES[patch.status[i]]}\n")


_TILE_RE = re.compile(r"^tile\s+(\S+)\s+([GYBOMR])\s*$")


def read_patch(fh) -> TreePatch:
    lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0].strip() != "HEPTAPATCH v1":
        raise HeptaError("not a HEPTAPATCH v1 file")
    apex = lines[1].split()[1]
    depth = int(lines[2].split()[1])
    up_tokens = lines[3].split()[1:]
    ups = () if up_tokens == ["-"] or not up_tokens else tuple(
        STATUS_INDEX[t] for t in up_tokens)
    patch = grow_tree(apex, depth, up_extensions=ups)
    seen = 0
    for ln in lines[4:]:
        if not ln.strip():
            continue
        mo = _TILE_RE.match(ln.split(" iso ")[0].split(" mark ")[0]
                            if " iso " in ln or " mark " in ln else ln)
        if mo is None:
            mo = _TILE_RE.match(" ".join(ln.split()[:3]))
        if mo is None:
            raise HeptaError(f"bad tile line: {ln!r}")
        key, st = mo.group(1), mo.group(2)
        addr = () if key == "-" else tuple(int(t) for t in key.split("."))
        if patch.status_of(addr) != st:
            raise HeptaError(f"status mismatch at {addr}: file says {st}")
        seen += 1
    if seen != patch.n_tiles:
        raise HeptaError(f"expected {patch.n_tiles} tile lines, got {seen}")
    return patch


@lru_cache(maxsize=None)
def level_sizes(apex: int, depth: int) -> tuple:
    """Level cardinalities of the apex tree, without materializing it."""
    counts = np.zeros(6, dtype=object)
    counts[apex] = 1
    out = [1]
    for _ in range(depth):
        nxt = np.zeros(6, dtype=object)
        for s in range(6):
            if counts[s]:
                for c in SONS_R1[s]:
                    nxt[c] += counts[s]
        counts = nxt
        out.append(int(counts.sum()))
    return tuple(out)
