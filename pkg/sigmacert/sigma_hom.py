"""
Homological witness search.

A witness is an equivariant chain map phi from the Rips complex VR_n up to
degree m into itself which raises the character valuation of every simplex
by a positive amount. It is built degree by degree: for every representative
simplex x the image phi_q(x) must have boundary phi_{q-1}(boundary x), so each
step solves an integer linear system over simplices in a window above the
level chi(t) + v(x).
"""

from concurrent.futures import ThreadPoolExecutor

from .certificate import HOMOLOGICAL, ConnectingVector, HomWitness
from .group import IDENTITY, HalfSpaceWindow, validate_character
from .linalg import SparseEchelon, smith_normal_form, IntMatrix
from .rips import (
    Chain,
    apply_tables,
    boundary,
    enumerate_constrained_simplices,
    enumerate_rep_simplices,
    simplex_boundary,
    valuation,
)
from .search import (
    TIME_LIMIT,
    WINDOW_EXHAUSTED,
    Deadline,
    Maybe,
    NotFound,
    SearchBudget,
    path_search,
    pick_t,
    step_level,
)
from .sigma_utils import display_simplex, display_word, format_rational


def _shorten(solution, kernel):
    """Greedily adds kernel vectors while that lowers the l1 norm of the solution."""
    def norm(vec):
        return sum(abs(v) for v in vec.values())

    improved = True
    while improved:
        improved = False
        for relation in kernel:
            for sign in (1, -1):
                candidate = dict(solution)
                for j, v in relation.items():
                    candidate[j] = candidate.get(j, 0) + sign * v
                candidate = {j: v for j, v in candidate.items() if v}
                if norm(candidate) < norm(solution):
                    solution = candidate
                    improved = True
    return solution


def solve_boundary_equation(spec, q, rhs, k, chi, level, budget, deadline=None):
    """
    Finds a q-chain of k-small simplices above the level (when given) whose boundary is rhs.
    Windows around the support of rhs grow following the budget's radius schedule.
    Returns Chain or NotFound.
    """
    if not rhs:
        return Chain(q)

    if q == 1 and len(rhs) == 2 and sorted(rhs.terms.values()) == [-1, 1]:
        # rhs = (h) - (g): an edge path from g to h does it
        ends = {c: s[0] for s, c in rhs.items()}
        g, h = ends[-1], ends[1]
        path = path_search(spec, g, h, k, chi, level, budget, deadline)
        if isinstance(path, NotFound):
            return path
        chain = Chain(1)
        for a, b in zip(path, path[1:]):
            chain = chain + Chain.from_simplex((a, b))
        return chain

    centers = sorted(rhs.vertices(), key=spec.shortlex_key)
    radius = None
    for radius in budget.radius_schedule:
        if deadline is not None and deadline.expired():
            return NotFound(TIME_LIMIT, radius)
        window = HalfSpaceWindow(level, centers, radius)
        candidates = enumerate_constrained_simplices(spec, q, k, chi, window)
        if not candidates:
            continue
        rows = {}
        echelon = SparseEchelon()
        for simplex in candidates:
            column = {}
            for face, sign in simplex_boundary(simplex):
                row = rows.setdefault(face, len(rows))
                column[row] = column.get(row, 0) + sign
            echelon.add_vector(column)
        target = {}
        for face, coef in rhs.items():
            if face not in rows:
                target = None
                break
            target[rows[face]] = coef
        if target is None:
            continue
        solution = echelon.solve(target)
        if solution is None:
            continue
        if budget.improve_with_kernel:
            solution = _shorten(solution, echelon.relations)
        return Chain(q, {candidates[j]: c for j, c in solution.items()})
    return NotFound(WINDOW_EXHAUSTED, radius)


def search_step(spec, q, simplex, previous, chi, t, n, budget, deadline=None):
    """
    Image of one representative q-simplex: a chain of n-small simplices with all
    vertices at level >= chi(t) + v(simplex) whose boundary is the image of the
    boundary of simplex under the previous table.
    """
    rhs = apply_tables(spec, previous, boundary(Chain.from_simplex(simplex)))
    level = step_level(chi, t, simplex)
    return solve_boundary_equation(spec, q, rhs, n, chi, level, budget, deadline)


def run_degree(reps, search, jobs):
    """
    Runs the search on all representatives.
    Returns (table, None, None), or (None, simplex, NotFound) for the first failure in enumeration order.
    """
    table = {}
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        for simplex, result in zip(reps, executor.map(search, reps)):
            if isinstance(result, NotFound):
                executor.shutdown(wait=False, cancel_futures=True)
                return None, simplex, result
            table[simplex] = result
    return table, None, None


def run_algorithm1(spec, cv, chi, budget=None, m=None, jobs=1):
    """
    Searches for a homological witness of chi for the given connecting vector.
    Returns HomWitness, or Maybe saying where the search stopped.
    """
    if cv.flavor != HOMOLOGICAL:
        raise ValueError("homological search needs a homological connecting vector")
    chi = validate_character(spec, chi)
    m = cv.m if m is None else m
    if m < 0 or m > cv.m:
        raise ValueError(f"degree m = {m} is not covered by connecting vector {cv.to_text()}")
    budget = budget or SearchBudget()
    n = max(cv.entries[:m + 1])
    if m >= 1 and n < 1:
        raise ValueError(f"connecting vector {cv.to_text()} needs an entry of at least 1 above degree 0")
    t = pick_t(spec, chi)
    deadline = Deadline(budget.time_limit)
    print(f"Using t = {display_word(t)} with chi(t) = {format_rational(chi(t))}, n = {n}, m = {m}")

    tables = [{(IDENTITY,): Chain.from_simplex((t,))}]
    for q in range(1, m + 1):
        reps = enumerate_rep_simplices(spec, q, n)
        print(f"STAGE {q} [degree {q}]: {len(reps)} representative simplices")
        previous = tables[q - 1]

        def search(simplex, q=q, previous=previous):
            step_deadline = deadline.step(budget.step_time_limit)
            return search_step(spec, q, simplex, previous, chi, t, n, budget, step_deadline)

        table, simplex, failure = run_degree(reps, search, jobs)
        if failure is not None:
            print(f"Search failed in degree {q} at {display_simplex(simplex)}: {failure.reason}")
            return Maybe(q, simplex, step_level(chi, t, simplex), failure, deadline.elapsed(), q - 1)
        tables.append(table)
        print("Done.")
    return HomWitness(spec.spec_hash(), chi, t, n, m, tables, cv)


def build_mu(spec, cv, k, budget=None, jobs=1):
    """
    Equivariant chain map mu from VR_k into the complex built on the connecting
    vector: mu_0 is the identity on vertices and mu_q(x) is n_q-small with
    boundary mu_{q-1}(boundary x). No level constraint applies.
    Returns list of tables indexed by degree, or Maybe.
    """
    if k < max(cv.entries):
        raise ValueError("k must be at least the largest entry of the connecting vector")
    budget = budget or SearchBudget()
    deadline = Deadline(budget.time_limit)
    tables = [{(IDENTITY,): Chain.from_simplex((IDENTITY,))}]
    for q in range(1, cv.m + 1):
        reps = enumerate_rep_simplices(spec, q, k)
        previous = tables[q - 1]

        def search(simplex, q=q, previous=previous):
            rhs = apply_tables(spec, previous, boundary(Chain.from_simplex(simplex)))
            return solve_boundary_equation(spec, q, rhs, cv[q], None, None, budget,
                                           deadline.step(budget.step_time_limit))

        table, simplex, failure = run_degree(reps, search, jobs)
        if failure is not None:
            return Maybe(q, simplex, None, failure, deadline.elapsed(), q - 1)
        tables.append(table)
    return tables


def widen_witness(spec, witness, mu, k):
    """
    Turns a witness on VR_n into one on VR_k (k >= n) by composing an iterate of
    phi with mu, enough times for the valuation raise to become positive again.
    """
    if k < witness.n:
        raise ValueError("k must be at least the witness radius n")
    chi = witness.character
    m = min(witness.m, len(mu) - 1)
    rise = min(valuation(chi, image) - min(chi(g) for g in simplex)
               for table in witness.tables[:m + 1] for simplex, image in table.items() if image)
    loss = min((valuation(chi, image) - min(chi(g) for g in simplex)
                for table in mu[:m + 1] for simplex, image in table.items() if image), default=0)
    iterations = 1
    while iterations * rise + loss <= 0:
        iterations += 1

    tables = []
    for q in range(m + 1):
        table = {}
        for simplex in enumerate_rep_simplices(spec, q, k):
            image = mu[q][simplex]
            for _ in range(iterations):
                image = apply_tables(spec, witness.tables[q], image)
            table[simplex] = image
        tables.append(table)
    t = spec.power(witness.t, iterations)
    print(f"Widened witness from n = {witness.n} to n = {k} with {iterations} iterations")
    return HomWitness(witness.spec_hash, chi, t, k, m, tables, ConnectingVector([k] * (m + 1), HOMOLOGICAL))


class Suggestion(object):
    """ Connecting vector found by the heuristic, with the reduced homology seen along the way """

    def __init__(self, vector, complete, homology=None):
        self.vector = vector
        self.complete = complete
        self.homology = homology or []

    def to_text(self):
        text = self.vector.to_text() + " [HEURISTIC]"
        if not self.complete:
            text += " (incomplete)"
        return text


def _cliques(spec, vertices, size, k):
    """Unordered simplices (increasing vertex order) with pairwise distance <= k"""
    found = []

    def extend(prefix, start):
        if len(prefix) == size:
            found.append(tuple(prefix))
            return
        for i in range(start, len(vertices)):
            x = vertices[i]
            if all(spec.distance(y, x) <= k for y in prefix):
                prefix.append(x)
                extend(prefix, i + 1)
                prefix.pop()

    extend([], 0)
    return found


def _boundary_columns(simplices, rows):
    columns = []
    for simplex in simplices:
        column = {}
        for face, sign in simplex_boundary(simplex):
            column[rows.setdefault(face, len(rows))] = sign
        columns.append(column)
    return columns


def _reduced_cycles(spec, vertices, q, k):
    """Basis of reduced q-cycles of VR_k(window) as dicts simplex -> coefficient"""
    if q == 0:
        base = vertices[0]
        return [{(g,): 1, (base,): -1} for g in vertices[1:]]
    simplices = _cliques(spec, vertices, q + 1, k)
    rows = {}
    echelon = SparseEchelon()
    for column in _boundary_columns(simplices, rows):
        echelon.add_vector(column)
    return [{simplices[j]: c for j, c in relation.items()} for relation in echelon.relations]


def _homology_summary(spec, vertices, q, k):
    """(rank, torsion) of reduced H_q(VR_k(window))"""
    cycles = _reduced_cycles(spec, vertices, q, k)
    faces = _cliques(spec, vertices, q + 1, k)
    rows = {face: i for i, face in enumerate(faces)}
    columns = _boundary_columns(_cliques(spec, vertices, q + 2, k), rows)
    matrix = IntMatrix([[col.get(i, 0) for col in columns] for i in range(len(faces))], len(columns))
    factors = smith_normal_form(matrix)
    rank = len(cycles) - len(factors)
    return rank, [d for d in factors if d > 1]


def _map_vanishes(spec, vertices, q, k, l):
    """Whether every reduced q-cycle of VR_k(window) bounds in VR_l(window)"""
    cycles = _reduced_cycles(spec, vertices, q, k)
    if not cycles:
        return True
    rows = {}
    echelon = SparseEchelon()
    for column in _boundary_columns(_cliques(spec, vertices, q + 2, l), rows):
        echelon.add_vector(column)
    for cycle in cycles:
        target = {}
        for simplex, coef in cycle.items():
            if simplex not in rows:
                return False
            target[rows[simplex]] = coef
        if echelon.solve(target) is None:
            return False
    return True


def suggest_connecting_vector(spec, m, k_max, window_radius, with_homology=False):
    """
    Heuristic connecting vector from the Rips complexes of a ball: n_0 = 0 and
    n_{q+1} is the smallest l > n_q with reduced H_q(VR_{n_q}) -> H_q(VR_l) zero.
    Returns list of Suggestion (empty when nothing can be said).
    """
    if m < 0 or k_max < 0 or window_radius < 0:
        raise ValueError("m, k_max and the window radius must be non-negative")
    vertices = spec.ball(window_radius)
    entries = [0]
    homology = []
    for q in range(m):
        k = entries[q]
        if with_homology:
            homology.append((q, k, _homology_summary(spec, vertices, q, k)))
        found = None
        for l in range(k + 1, k_max + 1):
            if _map_vanishes(spec, vertices, q, k, l):
                found = l
                break
        if found is None:
            break
        entries.append(found)
    vector = ConnectingVector(entries, HOMOLOGICAL, heuristic=True)
    return [Suggestion(vector, len(entries) == m + 1, homology)]
