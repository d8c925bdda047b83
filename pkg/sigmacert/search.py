"""
Pieces shared by both witness searches: search budgets, failure reports and
the windowed path search in the Rips graph.
"""

import time
from collections import deque

from .group import IDENTITY, CharacterError, HalfSpaceWindow, window_elements
from .sigma_utils import display_simplex, format_rational

WINDOW_EXHAUSTED = "window exhausted"
MOVES_EXHAUSTED = "moves exhausted"
TIME_LIMIT = "time limit"


class SearchBudget(object):
    """ Limits of a witness search """

    def __init__(self, radius_schedule=None, max_radius=4, step_time_limit=30.0, time_limit=600.0,
                 max_disk_states=20000, improve_with_kernel=False):
        """
        :param radius_schedule: window radii tried in order (default 0..max_radius)
        :param max_radius: largest window radius
        :param step_time_limit: seconds allowed for one simplex
        :param time_limit: seconds allowed for the whole run
        :param max_disk_states: number of loop states explored by one disk filling
        :param improve_with_kernel: shorten solutions using kernel vectors
        """
        if radius_schedule is None:
            radius_schedule = list(range(max_radius + 1))
        self.radius_schedule = [int(r) for r in radius_schedule if 0 <= int(r) <= max_radius]
        self.max_radius = max_radius
        self.step_time_limit = step_time_limit
        self.time_limit = time_limit
        self.max_disk_states = max_disk_states
        self.improve_with_kernel = improve_with_kernel

    @classmethod
    def from_dict(cls, data):
        data = data or {}
        known = {
            "radius-schedule": "radius_schedule",
            "max-radius": "max_radius",
            "step-time-limit": "step_time_limit",
            "time-limit": "time_limit",
            "max-disk-states": "max_disk_states",
            "improve-with-kernel": "improve_with_kernel",
        }
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ValueError(f"unknown budget options: {', '.join(unknown)}")
        return cls(**{known[key]: value for key, value in data.items()})


class Deadline(object):
    """ Overall and per-step wall clock limits """

    def __init__(self, seconds):
        self.start = time.monotonic()
        self.end = None if seconds is None else self.start + seconds

    def step(self, seconds):
        step = Deadline(seconds)
        if self.end is not None and (step.end is None or step.end > self.end):
            step.end = self.end
        return step

    def expired(self):
        return self.end is not None and time.monotonic() > self.end

    def elapsed(self):
        return time.monotonic() - self.start


class NotFound(object):
    """ Result of a single failed search """

    def __init__(self, reason, radius=None, detail=None):
        self.reason = reason
        self.radius = radius
        self.detail = detail

    def __repr__(self):
        return f"<NotFound {self.reason} radius={self.radius}>"


class Maybe(object):
    """ Outcome of a witness search that did not succeed; says where and why it stopped """

    def __init__(self, q, simplex, level, failure, elapsed=0.0, completed_degrees=0):
        self.q = q
        self.simplex = simplex
        self.level = level
        self.reason = failure.reason
        self.radius = failure.radius
        self.detail = failure.detail
        self.elapsed = elapsed
        self.completed_degrees = completed_degrees

    def __bool__(self):
        return False

    def __repr__(self):
        return f"<Maybe q={self.q} {self.reason}>"

    def to_text(self):
        lines = [
            "MAYBE",
            f"  failed degree q = {self.q}",
            f"  simplex {display_simplex(self.simplex)}",
            f"  level L = {format_rational(self.level) if self.level is not None else '-'}",
            f"  reason: {self.reason}",
            f"  window radius reached: {self.radius if self.radius is not None else '-'}",
            f"  elapsed: {self.elapsed:.2f} s",
        ]
        if self.detail:
            lines.append(f"  detail: {self.detail}")
        return "\n".join(lines)


def pick_t(spec, chi):
    """
    First element with positive character value in shortlex order of the spheres.
    It is always a generator or an inverse of one.
    """
    if chi.is_zero():
        raise CharacterError("character is zero")
    for g in spec.sphere(1):
        if chi(g) > 0:
            return g
    raise CharacterError("character vanishes on all generators")


def step_level(chi, t, simplex):
    """Level that the image of a simplex must stay above: chi(t) + v(simplex)"""
    return chi(t) + min(chi(g) for g in simplex)


def path_search(spec, start, goal, n, chi, level, budget, deadline=None):
    """
    Shortest edge path start -> goal in the Rips graph with steps of length <= n,
    staying within growing windows around both ends (cut at the level when given).
    Returns list of vertices from start to goal, or NotFound.
    """
    if level is not None and (chi(start) < level or chi(goal) < level):
        raise ValueError("path ends lie below the level")
    if start == goal:
        return [start]
    steps = [b for b in spec.ball(n) if b != IDENTITY]
    radius = None
    for radius in budget.radius_schedule:
        if deadline is not None and deadline.expired():
            return NotFound(TIME_LIMIT, radius)
        allowed = set(window_elements(spec, chi, HalfSpaceWindow(level, (start, goal), radius)))
        parents = {start: None}
        queue = deque([start])
        while queue and goal not in parents:
            current = queue.popleft()
            for step in steps:
                nxt = spec.multiply(current, step)
                if nxt in allowed and nxt not in parents:
                    parents[nxt] = current
                    queue.append(nxt)
        if goal in parents:
            path = [goal]
            while parents[path[-1]] is not None:
                path.append(parents[path[-1]])
            return path[::-1]
    return NotFound(WINDOW_EXHAUSTED, radius, f"no path from {start or '1'} to {goal or '1'}")
