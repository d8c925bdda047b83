"""
Filling closed edge loops in the Rips complex with triangulated disks.

Loops are shrunk by clipping ears (u, v, w) -> (u, w) whenever u and w are
close enough. When no ear can be clipped, a best-first search tries inserting
a new vertex between two neighbours of the loop, which adds one triangle and
usually makes new ears clippable.
"""

import heapq
import itertools

from .certificate import CombinatorialDisk
from .group import HalfSpaceWindow, window_elements
from .search import MOVES_EXHAUSTED, TIME_LIMIT, WINDOW_EXHAUSTED, NotFound


class LoopState(object):
    """ Partially filled disk: the remaining loop plus everything triangulated so far """

    def __init__(self, loop, labels, triangles, edges, insertions=0):
        self.loop = loop
        self.labels = labels
        self.triangles = triangles
        self.edges = edges
        self.insertions = insertions

    def copy(self):
        return LoopState(list(self.loop), list(self.labels), list(self.triangles), set(self.edges), self.insertions)

    def key(self):
        words = [self.labels[i] for i in self.loop]
        return min(tuple(words[i:] + words[:i]) for i in range(len(words)))


def _edge(a, b):
    return (a, b) if a < b else (b, a)


def clip_ears(spec, state, n):
    """Clips ears until the loop is a triangle (closed, returns True) or no ear is left."""
    while True:
        size = len(state.loop)
        if size == 3:
            state.triangles.append(tuple(state.loop))
            state.loop = []
            return True
        for pos in range(size):
            u, v, w = state.loop[pos - 1], state.loop[pos], state.loop[(pos + 1) % size]
            chord = _edge(u, w)
            if chord not in state.edges and spec.distance(state.labels[u], state.labels[w]) <= n:
                state.triangles.append((u, v, w))
                state.edges.add(chord)
                del state.loop[pos]
                break
        else:
            return False


def _insertions(spec, state, n, allowed, ball):
    """New states obtained by putting one vertex between two neighbours of the loop"""
    size = len(state.loop)
    for pos in range(size):
        u, w = state.loop[pos], state.loop[(pos + 1) % size]
        lu, lw = state.labels[u], state.labels[w]
        for b in ball:
            x = spec.multiply(lu, b)
            if x in (lu, lw) or x not in allowed or spec.distance(x, lw) > n:
                continue
            child = state.copy()
            new = len(child.labels)
            child.labels.append(x)
            child.triangles.append((u, new, w))
            child.edges.update([_edge(u, new), _edge(new, w)])
            child.loop.insert(pos + 1, new)
            child.insertions += 1
            yield child


def _to_disk(state, size):
    return CombinatorialDisk(state.labels, state.triangles, list(range(size)))


def disk_fill(spec, loop, n, chi, level, budget, deadline=None):
    """
    Fills a closed loop of group elements (consecutive ones at distance <= n, the
    last joined back to the first) by a disk whose triangles are n-small and whose
    vertices stay at or above the level.
    The first vertex is not repeated at the end: [x, y, x] is a loop of three
    edges whose closing edge [x, x] is degenerate, and [t, t, t] is filled by a
    single degenerate triangle.
    Returns CombinatorialDisk with boundary cycle 0..r-1, or NotFound.
    """
    loop = list(loop)
    if len(loop) == 1:
        return CombinatorialDisk(loop, [], [0])
    if len(loop) == 2:
        raise ValueError("a closed loop needs a single vertex or at least three edges")
    size = len(loop)

    start = LoopState(list(range(size)), loop, [], {_edge(i, (i + 1) % size) for i in range(size)})
    if clip_ears(spec, start, n):
        return _to_disk(start, size)

    ball = [b for b in spec.ball(n) if b]
    counter = itertools.count()
    radius = None
    for radius in budget.radius_schedule:
        allowed = set(window_elements(spec, chi, HalfSpaceWindow(level, sorted(set(loop)), radius)))
        heap = [(len(start.loop), 0, next(counter), start)]
        seen = {start.key()}
        expanded = 0
        while heap:
            if deadline is not None and deadline.expired():
                return NotFound(TIME_LIMIT, radius)
            if expanded >= budget.max_disk_states:
                return NotFound(MOVES_EXHAUSTED, radius, f"{expanded} loop states explored")
            _, _, _, state = heapq.heappop(heap)
            expanded += 1
            for child in _insertions(spec, state, n, allowed, ball):
                if clip_ears(spec, child, n):
                    return _to_disk(child, size)
                key = child.key()
                if key not in seen:
                    seen.add(key)
                    heapq.heappush(heap, (len(child.loop), child.insertions, next(counter), child))
    return NotFound(WINDOW_EXHAUSTED, radius)
