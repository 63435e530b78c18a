"""The one-dimensional model of the interwoven triangles.

Abscissa a on a wire stands for isocline 4a of the plane (even abscissas on
green isoclines, odd on orange).  A trilateral of generation n and index m
occupies the closed interval [vertex, basis] with

    vertex = 2^n - 1 + m * 2^(n+1),   height = 2^(n+1),
    mid    = (m+1) * 2^(n+1) - 1,     basis  = vertex + height.

Odd generations are red, even blue; even indices are triangles, odd
phantoms.  `construct_generations` rebuilds the same family by the
step-by-step raising rule and is checked against the closed forms.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass


class TriangleError(Exception):
    pass


class NotATriangle(TriangleError):
    pass


class NotRedTriangle(TriangleError):
    pass


@dataclass(frozen=True, order=True)
class Trilateral:
    generation: int
    index: int
    colour: str      # "blue" | "red"
    attribute: str   # "triangle" | "phantom"
    vertex: int
    height: int
    mid: int
    basis: int

    @property
    def is_triangle(self) -> bool:
        return self.attribute == "triangle"

    @property
    def is_red(self) -> bool:
        return self.colour == "red"


def trilateral(n: int, m: int) -> Trilateral:
    """Closed-form trilateral of generation n, index m."""
    if n < 0 or m < 0:
        raise TriangleError("generation and index must be >= 0")
    h = 2 ** (n + 1)
    v = 2 ** n - 1 + m * h
    return Trilateral(
        generation=n, index=m,
        colour="red" if n % 2 else "blue",
        attribute="triangle" if m % 2 == 0 else "phantom",
        vertex=v, height=h, mid=(m + 1) * h - 1, basis=v + h)


def vertex_generation(a: int) -> int:
    """Generation of the unique trilateral whose vertex sits at abscissa a."""
    if a < 0:
        raise TriangleError("abscissa must be >= 0")
    x = a + 1
    n = 0
    while x % 2 == 0:
        x //= 2
        n += 1
    return n


def trilateral_at_vertex(a: int) -> Trilateral:
    n = vertex_generation(a)
    m = (a - (2 ** n - 1)) // 2 ** (n + 1)
    return trilateral(n, m)


def trilateral_covering(n: int, a: int):
    """The generation-n trilateral whose closed span contains abscissa a,
    or None.  When a is a shared boundary the one with basis == a wins."""
    h = 2 ** (n + 1)
    m = (a - (2 ** n - 1)) // h
    for cand in (m - 1, m):
        if cand >= 0:
            t = trilateral(n, cand)
            if t.vertex <= a <= t.basis:
                return t
    return None


def construct_generations(max_gen: int, wire_length: int):
    """Raise the trilaterals step by step along a wire of the given length.

    Generation 0 puts alternating triangles and phantoms on the even
    abscissas; each later generation raises a vertex at every mid-point of a
    triangle of the previous one, the basis landing on the next such
    mid-point, with alternating attributes and the opposite colour.
    Returns all trilaterals with basis <= wire_length, generation <= max_gen.
    """
    if max_gen < 0:
        raise TriangleError("max_gen must be >= 0")
    out = []
    colour = "blue"
    gen0 = []
    v = 0
    i = 0
    while v + 2 <= wire_length:
        gen0.append(Trilateral(0, i, colour,
                               "triangle" if i % 2 == 0 else "phantom",
                               v, 2, v + 1, v + 2))
        v += 2
        i += 1
    out.extend(gen0)
    prev = gen0
    for n in range(1, max_gen + 1):
        colour = "red" if colour == "blue" else "blue"
        mids = [t.mid for t in prev if t.attribute == "triangle"]
        cur = []
        for i in range(len(mids) - 1):
            vtx, basis = mids[i], mids[i + 1]
            cur.append(Trilateral(n, i, colour,
                                  "triangle" if i % 2 == 0 else "phantom",
                                  vtx, basis - vtx, (vtx + basis) // 2, basis))
        out.extend(cur)
        prev = cur
    return out


def closed_form_set(max_gen: int, wire_length: int):
    out = []
    for n in range(max_gen + 1):
        m = 0
        while True:
            t = trilateral(n, m)
            if t.basis > wire_length:
                break
            out.append(t)
            m += 1
    return out


# ---------------------------------------------------------------------------
# relations

def nesting(a: Trilateral, b: Trilateral) -> str:
    """Interval relation of two trilaterals on the same wire.

    Equal spans report Contains.  Partial overlaps happen only when a
    bounding abscissa of one trilateral is the mid-point of the other (legs
    crossing a basis, never another leg); those also report SharesBoundary.
    """
    if (a.vertex, a.basis) == (b.vertex, b.basis):
        return "Contains"
    if a.vertex <= b.vertex and b.basis <= a.basis:
        return "Contains"
    if b.vertex <= a.vertex and a.basis <= b.basis:
        return "ContainedIn"
    if a.basis == b.vertex or b.basis == a.vertex:
        return "SharesBoundary"
    if a.basis < b.vertex or b.basis < a.vertex:
        return "Disjoint"
    if not proper_crossing(a, b):
        return "SharesBoundary"
    raise TriangleError(f"properly crossing trilaterals: {a} / {b}")


def proper_crossing(a: Trilateral, b: Trilateral) -> bool:
    """True when the open spans partially overlap in a way that is not a
    mid-line basis crossing (which would mean two legs intersect)."""
    lo, hi = (a, b) if a.vertex <= b.vertex else (b, a)
    if hi.vertex >= lo.basis or hi.basis <= lo.basis:
        return False  # disjoint, touching, or nested
    return not (hi.vertex == lo.mid or lo.basis == hi.mid)


def nested_in(inner: Trilateral, outer: Trilateral) -> bool:
    return (outer.vertex <= inner.vertex and inner.basis <= outer.basis
            and inner != outer)


def mid_line_phantoms(t: Trilateral, trilaterals=None):
    """The phantoms sharing t's mid-line, one per generation below t's."""
    if not t.is_triangle:
        raise NotATriangle(f"{t} is a phantom")
    if trilaterals is None:
        out = []
        for n in range(t.generation - 1, -1, -1):
            h = 2 ** (n + 1)
            m = (t.mid + 1) // h - 1
            out.append(trilateral(n, m))
        for p in out:
            if p.attribute != "phantom" or p.mid != t.mid:
                raise TriangleError(f"mid-line of {t} meets non-phantom {p}")
        return sorted(out)
    return sorted(p for p in trilaterals
                  if p.attribute == "phantom" and p.mid == t.mid
                  and nested_in(p, t))


@dataclass(frozen=True)
class FreeRowReport:
    triangle: Trilateral
    rows: tuple
    count: int


def free_rows(t: Trilateral) -> FreeRowReport:
    """Rows of a red triangle meeting no nested red triangle's closed span.

    The vertex row carries the head mark and the basis row the basis, so
    only strictly interior abscissas qualify.
    """
    if not (t.is_red and t.is_triangle):
        raise NotRedTriangle(f"free rows are defined for red triangles, "
                             f"not {t.colour} {t.attribute}s")
    blocked = []
    for n in range(1, t.generation, 2):
        h = 2 ** (n + 1)
        m0 = (t.vertex - (2 ** n - 1)) // h + 1
        m = max(m0, 0)
        while True:
            inner = trilateral(n, m)
            if inner.vertex >= t.basis:
                break
            if inner.is_triangle and nested_in(inner, t):
                blocked.append((inner.vertex, inner.basis))
            m += 1
    rows = [a for a in range(t.vertex + 1, t.basis)
            if not any(lo <= a <= hi for lo, hi in blocked)]
    return FreeRowReport(t, tuple(rows), len(rows))


# ---------------------------------------------------------------------------
# signals

@dataclass(frozen=True, order=True)
class SignalRecord:
    abscissa: int
    signal: str          # mauve|silver|blueSig|redLeft|redRight|yellow
    extent_lo: int
    extent_hi: int


@dataclass(frozen=True)
class SignalLayer:
    records: tuple
    wire_length: int

    def at(self, abscissa: int):
        return [r for r in self.records if r.abscissa == abscissa]

    def kinds_at(self, abscissa: int):
        return {r.signal for r in self.at(abscissa)}


def signals(trilaterals, wire_length: int) -> SignalLayer:
    """The five signal families of the construction, as 1-D records.

    Mauve runs on every orange row and is stopped by the legs of the unique
    triangle whose mid-line it is; silver marks the vertex row of every red
    triangle; blue marks vertex and basis rows of blue trilaterals; the legs
    of a red triangle emit lateral red signals on every row they cross below
    the vertex; yellow marks exactly the free rows.  Extents are the span of
    the emitting or stopping trilateral (full wire when unbounded).
    """
    recs = []
    for a in range(1, wire_length + 1, 2):
        n = vertex_generation(a) - 1
        if n >= 0:
            stop = trilateral(n, (a + 1) // 2 ** (n + 1) - 1)
            recs.append(SignalRecord(a, "mauve", stop.vertex, stop.basis))
        else:
            recs.append(SignalRecord(a, "mauve", 0, wire_length))
    for t in trilaterals:
        if t.is_red and t.is_triangle:
            recs.append(SignalRecord(t.vertex, "silver", 0, wire_length))
            for a in range(t.vertex + 1, min(t.basis, wire_length) + 1):
                recs.append(SignalRecord(a, "redLeft", t.vertex, t.basis))
                recs.append(SignalRecord(a, "redRight", t.vertex, t.basis))
            for a in free_rows(t).rows:
                if a <= wire_length:
                    recs.append(SignalRecord(a, "yellow", t.vertex, t.basis))
        if not t.is_red:
            recs.append(SignalRecord(t.vertex, "blueSig", 0, wire_length))
            if t.basis <= wire_length:
                recs.append(SignalRecord(t.basis, "blueSig", 0, wire_length))
    uniq = sorted(set(recs))
    return SignalLayer(tuple(uniq), wire_length)


# ---------------------------------------------------------------------------
# latitudes

@dataclass(frozen=True)
class Latitude:
    vertex_isocline: int
    basis_isocline: int


def latitude_on_wire(t: Trilateral, anchor_isocline: int) -> Latitude:
    """Isocline interval of t on a wire whose abscissa 0 sits at
    `anchor_isocline`."""
    return Latitude(anchor_isocline + 4 * t.vertex,
                    anchor_isocline + 4 * t.basis)


def latitudes_synchronized(w1, w2, max_gen: int = 6, max_index: int = 8) -> bool:
    """True when every trilateral (n, m) in range occupies the same
    latitude on both wires."""
    a1 = w1.isocline(0) - 4 * w1.base_abscissa
    a2 = w2.isocline(0) - 4 * w2.base_abscissa
    for n in range(max_gen + 1):
        for m in range(max_index + 1):
            t = trilateral(n, m)
            if latitude_on_wire(t, a1) != latitude_on_wire(t, a2):
                return False
    return True


# ---------------------------------------------------------------------------
# dumps

def write_trilaterals_csv(trilaterals, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["generation", "index", "colour", "attribute",
                "vertex", "mid", "basis"])
    for t in sorted(trilaterals):
        w.writerow([t.generation, t.index, t.colour, t.attribute,
                    t.vertex, t.mid, t.basis])


def write_signals_csv(layer: SignalLayer, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["abscissa", "signal", "extent_lo", "extent_hi"])
    for r in layer.records:
        w.writerow([r.abscissa, r.signal, r.extent_lo, r.extent_hi])
