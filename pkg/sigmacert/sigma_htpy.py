"""
Homotopical witness search.

Vertices go to t, each representative edge (1, g) to an edge path t -> g*t and
each representative triangle to a disk filling the loop made of the three edge
paths of its sides. Everything stays above chi(t) + v(simplex).
"""

from .certificate import HOMOTOPICAL, HtpyWitness, disk_boundary_labels, triangle_side_paths
from .disk import disk_fill
from .group import validate_character
from .rips import enumerate_rep_simplices
from .search import Deadline, Maybe, SearchBudget, path_search, pick_t, step_level
from .sigma_hom import run_degree
from .sigma_utils import display_simplex, display_word, format_rational


def run_algorithm2(spec, cv, chi, budget=None, m=None, jobs=1):
    """
    Searches for a homotopical witness of chi in degree m = 2, the only degree
    the homotopical flavor covers.
    Returns HtpyWitness, or Maybe saying where the search stopped.
    """
    if cv.flavor != HOMOTOPICAL:
        raise ValueError("homotopical search needs a homotopical connecting vector")
    chi = validate_character(spec, chi)
    if cv.m != 2 or m not in (None, 2):
        raise ValueError(f"homotopical search needs m = 2 and a connecting vector (n_0,n_1,n_2), got {cv.to_text()}")
    budget = budget or SearchBudget()
    n = cv.n
    if n < 1:
        raise ValueError(f"connecting vector {cv.to_text()} needs an entry of at least 1 above degree 0")
    t = pick_t(spec, chi)
    deadline = Deadline(budget.time_limit)
    print(f"Using t = {display_word(t)} with chi(t) = {format_rational(chi(t))}, n = {n}, m = 2")

    reps = enumerate_rep_simplices(spec, 1, n)
    print(f"STAGE 1 [edge paths]: {len(reps)} representative edges")

    def search_path(simplex):
        step_deadline = deadline.step(budget.step_time_limit)
        goal = spec.multiply(simplex[1], t)
        return path_search(spec, t, goal, n, chi, step_level(chi, t, simplex), budget, step_deadline)

    paths, simplex, failure = run_degree(reps, search_path, jobs)
    if failure is not None:
        print(f"Path search failed at {display_simplex(simplex)}: {failure.reason}")
        return Maybe(1, simplex, step_level(chi, t, simplex), failure, deadline.elapsed(), 0)
    print("Done.")

    reps = enumerate_rep_simplices(spec, 2, n)
    print(f"STAGE 2 [disks]: {len(reps)} representative triangles")

    def search_disk(simplex):
        step_deadline = deadline.step(budget.step_time_limit)
        loop = disk_boundary_labels(*triangle_side_paths(spec, paths, simplex))
        return disk_fill(spec, loop, n, chi, step_level(chi, t, simplex), budget, step_deadline)

    disks, simplex, failure = run_degree(reps, search_disk, jobs)
    if failure is not None:
        print(f"Disk filling failed at {display_simplex(simplex)}: {failure.reason}")
        return Maybe(2, simplex, step_level(chi, t, simplex), failure, deadline.elapsed(), 1)
    print("Done.")

    return HtpyWitness(spec.spec_hash(), chi, t, n, 2, paths, disks, cv)
