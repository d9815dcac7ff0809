"""Self-verification suite: ten end-to-end criteria on the SL(3) example and beyond.

Each ``criterion_k`` returns a :class:`Result`.  They are shared by the
``selftest`` command and the test-suite, and use seeded randomness only.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from .bott_samelson import Tableau, expected_multidegree, isotropy_weights_at_base, sweep
from .filtration import (build_context, canonical_basis, check_prevaluation,
                         combination_l_vector, f_space, l_vector)
from .lie_data import (Weight, default_word, is_reduced_w0, mu_from_lambda, one_param_subgroup,
                       weight_multiplicities, weyl_dim)
from .linalg import Echelon, is_subspace
from .polytopes import ADJOINT_STRING_MAP, affine_image, convex_hull, crystal_string_points, polytope_equal

EXAMPLE_N = 3
EXAMPLE_WORD = (1, 2, 1)
EXAMPLE_M = (0, 1, 1)

# per-tableau l-vectors of the SL(3) adjoint example, keyed by tableau label
EXAMPLE_TABLE = {
    "(121)": (-2, -2, -1),
    "(122)": (-1, -2, -1),
    "(131)": (-1, -1, -1),
    "(231)": (0, -1, -1),
    "(232)": (1, -1, -1),
    "(132)": (0, -1, -1),
    "(133)": (1, 1, 0),
    "(233)": (2, 1, 0),
}
EXAMPLE_STANDARD = ("(121)", "(122)", "(131)", "(231)", "(232)", "(132)", "(133)", "(233)")
EXAMPLE_DIFFERENCE = ("(231)", "(132)", (0, 0, 0))


@dataclass(frozen=True)
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.seconds:.2f}s) {self.detail}"


@lru_cache(maxsize=None)
def example_context():
    return build_context(EXAMPLE_N, EXAMPLE_WORD, EXAMPLE_M)


def _by_label(ctx) -> Dict[str, Tableau]:
    return {t.label(): t for t in ctx.tableaux}


def criterion_1() -> Tuple[bool, str]:
    ctx = example_context()
    tabs = _by_label(ctx)
    diffs = []
    for label, expected in EXAMPLE_TABLE.items():
        got = l_vector(ctx.swept_of(tabs[label])).coords
        if got != expected:
            diffs.append(f"{label}: expected {expected}, got {got}")
    a, b, expected = EXAMPLE_DIFFERENCE
    got = combination_l_vector({tabs[a]: 1, tabs[b]: -1}, ctx).coords
    if got != expected:
        diffs.append(f"s{a}-s{b}: expected {expected}, got {got}")
    return not diffs, "; ".join(diffs) or "8 tableau l-vectors and the difference match"


def criterion_2() -> Tuple[bool, str]:
    cb = canonical_basis(EXAMPLE_N, EXAMPLE_WORD, lam=(1, 1), context=example_context())
    ells = Counter(leaf.ell.coords for leaf in cb.leaves)
    dims = [leaf.dim for leaf in cb.leaves]
    ok = (len(cb.leaves) == 8 and all(d == 1 for d in dims) and sum(dims) == 8
          and weyl_dim(3, Weight.from_fundamental(3, (1, 1))) == 8
          and set(ells) == set(EXAMPLE_TABLE.values()) | {(0, 0, 0)}
          and ells[(0, -1, -1)] == 1 and ells[(0, 0, 0)] == 1)
    return ok, f"{len(cb.leaves)} leaves, dims {dims}"


def criterion_3() -> Tuple[bool, str]:
    ctx = example_context()
    sections = ctx.sections
    keys = sorted({k for s in sections.values() for k, _ in s.items()})
    pos = {k: i for i, k in enumerate(keys)}

    def vec(t):
        v = [0] * len(keys)
        for k, c in sections[t].items():
            v[pos[k]] = c
        return v

    every = Echelon(len(keys))
    for t in ctx.tableaux:
        every.add(vec(t))
    tabs = _by_label(ctx)
    std = Echelon(len(keys))
    for label in EXAMPLE_STANDARD:
        std.add(vec(tabs[label]))
    ok = len(ctx.tableaux) == 9 and every.rank == 8 and std.rank == 8
    return ok, f"{len(ctx.tableaux)} tableaux, rank {every.rank}; standard rank {std.rank}"


def _leaf_weights(cb) -> Counter:
    c = Counter()
    for leaf in cb.leaves:
        c[leaf.weight] += leaf.dim
    return c


def criterion_4() -> Tuple[bool, str]:
    rho = Weight.from_fundamental(3, (1, 1))
    cb = canonical_basis(EXAMPLE_N, EXAMPLE_WORD, lam=rho, context=example_context())
    got = _leaf_weights(cb)
    want = Counter(weight_multiplicities(3, rho))
    shape_ok = sorted(want.values()) == [1] * 6 + [2] and want[Weight.zero(3)] == 2
    cb1 = canonical_basis(3, EXAMPLE_WORD, lam=(1, 0))
    got1 = _leaf_weights(cb1)
    want1 = Counter({Weight.e(3, a): 1 for a in (1, 2, 3)})
    ok = got == want and shape_ok and got1 == want1
    return ok, f"adjoint weights match: {got == want}; standard rep weights match: {got1 == want1}"


def _brute_subgroup(n: int):
    for q in range(1, 2 * n + 1):
        for a1 in range(-n * q, n * q + 1):
            a = tuple(a1 - k * q for k in range(n))
            if sum(a) == 0:
                return q, a
    return None


def criterion_5() -> Tuple[bool, str]:
    S3 = one_param_subgroup(3)
    ok = (S3.q, S3.a) == (1, (1, 0, -1))
    bad = []
    for n in range(2, 6):
        S = one_param_subgroup(n)
        if (S.q, S.a) != _brute_subgroup(n):
            bad.append(n)
    return ok and not bad, f"n=3 gives q={S3.q}, a={S3.a}; brute-force mismatches: {bad or 'none'}"


def random_reduced_word(n: int, rng: random.Random) -> Tuple[int, ...]:
    """A uniformly-ish random reduced word of w0 from random descent choices."""
    perm = list(range(n, 0, -1))  # start at w0, peel right descents
    word = []
    while perm != sorted(perm):
        descents = [i for i in range(n - 1) if perm[i] > perm[i + 1]]
        i = rng.choice(descents)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        word.append(i + 1)
    return tuple(reversed(word))


def criterion_6() -> Tuple[bool, str]:
    expected = {1: (-1, -1, -1), 2: (0, -1, -1), 3: (0, 0, -1)}
    ok = all(isotropy_weights_at_base(EXAMPLE_WORD, j, 1) == v for j, v in expected.items())
    rng = random.Random(6)
    bad = 0
    for _ in range(50):
        n = rng.randint(2, 4)
        word = random_reduced_word(n, rng)
        j = rng.randint(1, len(word))
        w = isotropy_weights_at_base(word, j, one_param_subgroup(n).q)
        if not is_reduced_w0(word, n) or any(x > 0 for x in w):
            bad += 1
    return ok and not bad, f"example weights match: {ok}; bad random cases: {bad}"


def criterion_7() -> Tuple[bool, str]:
    pts = crystal_string_points(3, (1, 1), EXAMPLE_WORD)
    image = sorted(set(ADJOINT_STRING_MAP(p) for p in pts))
    cb = canonical_basis(EXAMPLE_N, EXAMPLE_WORD, lam=(1, 1), context=example_context())
    ells = sorted(set(e.coords for e in cb.l_vectors()))
    same_points = image == ells and len(pts) == 8
    same_hull = polytope_equal(affine_image(convex_hull(pts), ADJOINT_STRING_MAP), convex_hull(ells))
    return same_points and same_hull, f"point sets equal: {same_points}; hull vertices equal: {same_hull}"


def _random_combo(ctx, rng: random.Random):
    k = rng.randint(1, 4)
    tabs = rng.sample(ctx.basis, k)
    return {t: Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 4)) for t in tabs}


def criterion_8() -> Tuple[bool, str]:
    ctx = example_context()
    cb = canonical_basis(EXAMPLE_N, EXAMPLE_WORD, lam=(1, 1), context=ctx)
    reps = [dict(leaf.representative) for leaf in cb.leaves]
    pair_fail = sum(not check_prevaluation(a, b, ctx) for a, b in itertools.combinations(reps, 2))
    pairs = len(list(itertools.combinations(reps, 2)))
    rng = random.Random(8)
    rand_fail = done = 0
    while done < 100:
        a, b = _random_combo(ctx, rng), _random_combo(ctx, rng)
        total = Counter()
        for t, c in itertools.chain(a.items(), b.items()):
            total[t] += c
        if not any(total.values()):
            continue
        alpha = Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 7))
        rand_fail += not check_prevaluation(a, b, ctx, alpha)
        done += 1
    ok = pairs == 28 and not pair_fail and not rand_fail
    return ok, f"{pairs} basis pairs ({pair_fail} failures), 100 random pairs ({rand_fail} failures)"


PROBES = (
    (3, (2, 1, 2), (1, 1)),
    (3, (1, 2, 1), (1, 0)), (3, (1, 2, 1), (0, 1)), (3, (1, 2, 1), (2, 0)),
    (3, (2, 1, 2), (1, 0)), (3, (2, 1, 2), (0, 1)), (3, (2, 1, 2), (2, 0)),
    (4, default_word(4), (1, 0, 0)),
)


def criterion_9() -> Tuple[bool, str]:
    notes = []
    ok = True
    for n, word, lam in PROBES:
        cb = canonical_basis(n, word, lam=lam)
        d = cb.diagnostics
        expected = weyl_dim(n, Weight.from_fundamental(n, lam))
        if d.total_dim != expected:
            ok = False
        notes.append(f"n={n} w={''.join(map(str, word))} lam={lam}: "
                     f"{d.total_dim}/{expected} {d.conjecture_status}")
    return ok, "; ".join(notes)


def _structural_case(rng: random.Random):
    n = rng.choice([2, 3])
    if n == 2:
        word = (1,)
    else:
        word = rng.choice([(1, 2, 1), (2, 1, 2)])
    lam = tuple(rng.randint(0, 1) for _ in range(n - 1))
    if not any(lam):
        lam = (1,) + lam[1:]
    return n, word, mu_from_lambda(word, Weight.from_fundamental(n, lam))


def structural_invariants(n, word, m, rng: random.Random) -> List[str]:
    """Violations of the structural invariants on one instance (empty list when all hold)."""
    problems = []
    ctx = build_context(n, word, m)
    S = ctx.subgroup
    tabs = ctx.tableaux
    # sweep linearity and sweep at t = 1
    a, b = rng.sample(tabs, 2) if len(tabs) > 1 else (tabs[0], tabs[0])
    ca, cb_ = Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    s = ctx.sections[a].scale(ca) + ctx.sections[b].scale(cb_)
    if sweep(s, S) != ctx.swept[a].scale(ca) + ctx.swept[b].scale(cb_):
        problems.append("sweep is not linear")
    if any(ctx.swept[t].at_parameters_one() != ctx.sections[t] for t in tabs):
        problems.append("sweep at t=1 differs from the section")
    # multidegree
    want = expected_multidegree(word, m)
    for t in tabs:
        md = ctx.data.multidegree(ctx.sections[t])
        if any(d != frozenset({w}) for d, w in zip(md, want)):
            problems.append(f"tableau {t.label()} is not of multidegree {want}")
            break
    # monotonicity: ell <= ell' implies F_ell' inside F_ell
    N = len(word)
    for _ in range(4):
        lo = tuple(rng.randint(-3, 2) for _ in range(N))
        hi = tuple(x + rng.randint(0, 2) for x in lo)
        if not is_subspace(f_space(hi, ctx), f_space(lo, ctx), ctx.dim):
            problems.append(f"F{hi} not inside F{lo}")
    # grid completeness
    base = canonical_basis(n, word, m=m, context=ctx)
    wide = canonical_basis(n, word, m=m, context=ctx, grid_padding=2)
    key = lambda cb: [(lf.ell, lf.weight, lf.dim, lf.representatives) for lf in cb.leaves]  # noqa: E731
    if key(base) != key(wide):
        problems.append("leaves change when the grid is enlarged")
    return problems


def criterion_10() -> Tuple[bool, str]:
    rng = random.Random(10)
    problems = []
    for _ in range(6):
        n, word, m = _structural_case(rng)
        problems += [f"{(n, word, m)}: {p}" for p in structural_invariants(n, word, m, rng)]
    return not problems, "; ".join(problems) or "6 random instances, all invariants hold"


CRITERIA: Tuple[Tuple[int, str, Callable], ...] = (
    (1, "example l-vector table", criterion_1),
    (2, "leaf decomposition of the example", criterion_2),
    (3, "span rank of the tableaux", criterion_3),
    (4, "character check", criterion_4),
    (5, "one-parameter subgroup", criterion_5),
    (6, "isotropy weights", criterion_6),
    (7, "string polytope equivalence", criterion_7),
    (8, "prevaluation properties", criterion_8),
    (9, "conjecture probes", criterion_9),
    (10, "structural invariants", criterion_10),
)


def run_criterion(number: int) -> Result:
    _, name, fn = CRITERIA[number - 1]
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported as a failure, not raised
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return Result(number, name, ok, detail, time.perf_counter() - t0)


def run_all() -> List[Result]:
    return [run_criterion(k) for k, _, _ in CRITERIA]
