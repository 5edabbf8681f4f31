"""Random instances and the verification suites.

All randomness comes from numpy's PCG64 bit generator seeded with a 64-bit
integer, so a corpus is fixed by ``(seed, count)``.

Over Q a coefficient is ``a / d`` with ``a`` uniform in ``[-bound, bound]`` and
``d`` uniform in ``[1, bound]``. Over GF(p)(t) it is a polynomial of degree at
most ``bound`` with coefficients uniform in ``[0, p)``.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import polys as P
from .errors import DomainError, GenerationError
from .fields import QQ, GroundField, Place, RationalFunction, infinite_place, product_formula_check
from .graphs import (
    clique_number,
    disjoint_disconnected_pairs,
    oracle_max_disjoint_pairs,
    random_graph,
    sharpness_graph,
)
from .heights import (
    AdelicAutomorphism,
    dilation_constants,
    dual_complement,
    form_height,
    height_matrix,
    height_subspace,
    height_vector,
    star,
)
from .linalg import Subspace, det, from_columns, intersect, matvec, rank, sum_space, transpose
from .symplectic import SymplecticSpace, exponents, is_regular, symplectic_basis, verify_bounds

MAX_RESAMPLES = 1000
TWIST_ENTRIES = (Fraction(1, 3), Fraction(1, 2), Fraction(2), Fraction(3))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class GenParams:
    field: GroundField
    N: int
    k: int
    bound: int
    seed: int

    def __post_init__(self):
        if self.k < 1 or 2 * self.k > self.N:
            raise DomainError(f"need 1 <= k and 2k <= N (N={self.N}, k={self.k})")
        if self.bound < 1:
            raise DomainError("bound must be at least 1")

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "N": self.N, "k": self.k, "bound": self.bound, "seed": self.seed}


# --------------------------------------------------------------------------
# random elements


def random_element(rng: np.random.Generator, field: GroundField, bound: int):
    if field.is_rational:
        return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
    coeffs = [int(c) for c in rng.integers(0, field.p, size=bound + 1)]
    return RationalFunction.from_poly(P.normalize(coeffs, field.p), field.p)


def random_nonzero(rng, field: GroundField, bound: int):
    while True:
        a = random_element(rng, field, bound)
        if a:
            return a


def random_matrix(rng, field: GroundField, rows: int, cols: int, bound: int):
    return [[random_element(rng, field, bound) for _ in range(cols)] for _ in range(rows)]


def random_alternating(rng, field: GroundField, N: int, bound: int):
    F = [[field.zero() for _ in range(N)] for _ in range(N)]
    for i in range(N):
        for j in range(i + 1, N):
            a = random_element(rng, field, bound)
            F[i][j], F[j][i] = a, -a
    return F


def random_subspace(rng, field: GroundField, N: int, L: int, bound: int) -> Subspace:
    for _ in range(MAX_RESAMPLES):
        X = random_matrix(rng, field, N, L, bound)
        if rank(X) == L:
            return Subspace.from_matrix(X, field)
    raise GenerationError("could not draw a full-rank basis")


def random_invertible(rng, field: GroundField, N: int, bound: int, diagonal: bool = False):
    for _ in range(MAX_RESAMPLES):
        if diagonal:
            M = [[random_nonzero(rng, field, bound) if i == j else field.zero() for j in range(N)] for i in range(N)]
        else:
            M = random_matrix(rng, field, N, N, bound)
        if det(M):
            return M
    raise GenerationError("could not draw an invertible matrix")


def _random_finite_place(rng, field: GroundField) -> Place:
    if field.is_rational:
        return Place(field, int(rng.choice([2, 3, 5, 7])))
    return Place(field, (int(rng.integers(0, field.p)), 1))


def random_automorphism(rng, field: GroundField, N: int, bound: int = 2, diagonal: bool = False) -> AdelicAutomorphism:
    """Twist at infinity and at one finite place."""
    comps = (
        (infinite_place(field), random_invertible(rng, field, N, bound, diagonal)),
        (_random_finite_place(rng, field), random_invertible(rng, field, N, bound, diagonal)),
    )
    return AdelicAutomorphism(field, N, comps)


def twisted_automorphism(rng, N: int) -> AdelicAutomorphism:
    """Diagonal twist over Q at infinity and at 2 or 3, entries from {1/3, 1/2, 2, 3}."""

    def diag():
        d = [TWIST_ENTRIES[int(i)] for i in rng.integers(0, len(TWIST_ENTRIES), size=N)]
        return [[d[i] if i == j else Fraction(0) for j in range(N)] for i in range(N)]

    p = int(rng.choice([2, 3]))
    return AdelicAutomorphism(QQ, N, ((infinite_place(QQ), diag()), (Place(QQ, p), diag())))


def generate_instance(params: GenParams) -> SymplecticSpace:
    """Random regular (Z, F), resampled until the restriction of F to Z is nondegenerate."""
    rng = make_rng(params.seed)
    field, N, L = params.field, params.N, 2 * params.k
    for _ in range(MAX_RESAMPLES):
        F = random_alternating(rng, field, N, params.bound)
        X = random_matrix(rng, field, N, L, params.bound)
        if rank(X) != L:
            continue
        space = SymplecticSpace(field, N, F, Subspace.from_matrix(X, field))
        if is_regular(space):
            return space
    raise GenerationError(f"{MAX_RESAMPLES} consecutive draws were singular for {params.to_json()}")


def corpus(kind: str, count: int, seed: int) -> list[GenParams]:
    """Instance parameters for the acceptance corpus.

    ``kind`` is ``"q"`` (N in 2..10, k in 1..4, bound 10) or ``"fp(t)"``
    (p in {2, 3, 5}, N in 2..10, k in 1..4, degree bound 3).
    """
    rng = make_rng(seed)
    out = []
    for _ in range(count):
        k = int(rng.integers(1, 5))
        N = int(rng.integers(2 * k, 11))
        s = int(rng.integers(0, 2**63))
        if kind == "q":
            out.append(GenParams(QQ, N, k, 10, s))
        elif kind == "fp(t)":
            out.append(GenParams(GroundField(int(rng.choice([2, 3, 5]))), N, k, 3, s))
        else:
            raise DomainError(f"unknown corpus kind {kind!r}")
    return out


# --------------------------------------------------------------------------
# suites


@dataclass
class InstanceRecord:
    index: int
    passed: bool
    detail: dict = dc_field(default_factory=dict)
    ratio: float | None = None

    def to_json(self) -> dict:
        out = {"index": self.index, "passed": self.passed, **self.detail}
        if self.ratio is not None:
            out["ratioApprox"] = self.ratio
        return out


@dataclass
class SuiteReport:
    suite: str
    records: list
    elapsed: float

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def worst_ratio(self) -> float | None:
        rs = [r.ratio for r in self.records if r.ratio is not None]
        return max(rs) if rs else None

    def summary(self) -> dict:
        return {
            "suite": self.suite,
            "count": len(self.records),
            "passed": self.passed,
            "failed": self.failed,
            "elapsedSeconds": round(self.elapsed, 3),
            "worstRatioApprox": self.worst_ratio,
        }

    def to_json(self) -> dict:
        return {**self.summary(), "records": [r.to_json() for r in self.records]}


def _ratio(lhs, rhs) -> float:
    return math.exp(lhs.log() - rhs.log())


def _pipeline(params: GenParams, A=None):
    space = generate_instance(params)
    A = A or AdelicAutomorphism.identity(space.field, space.N)
    basis = symplectic_basis(A, space)
    return space, A, basis, verify_bounds(A, space, basis)


def _case_symplectic(i, params):
    space, _, basis, _ = _pipeline(params)
    return InstanceRecord(i, basis.gram_pattern_ok(), {"params": params.to_json()})


def _case_theorem(i, params):
    _, _, _, rep = _pipeline(params)
    return InstanceRecord(i, rep.satisfied["theorem"], {"params": params.to_json()}, _ratio(rep.lhs, rep.rhsTheorem))


def _case_twisted(i, seed):
    rng = make_rng(seed)
    k = int(rng.integers(1, 4))
    N = int(rng.integers(2 * k, 9))
    params = GenParams(QQ, N, k, 10, int(rng.integers(0, 2**63)))
    A = twisted_automorphism(rng, N)
    _, _, _, rep = _pipeline(params, A)
    detail = {"params": params.to_json(), "automorphism": A.to_json()}
    return InstanceRecord(i, rep.satisfied["theorem"] and rep.satisfied["siegel"], detail, _ratio(rep.lhs, rep.rhsTheorem))


_COROLLARY_KEYS = ("hyperbolic", "hyperbolicOrthogonal", "flags", "flagsIsotropic", "flagsNested", "flagsTransversal", "flagsSpanZ")


def _case_corollaries(i, params):
    _, _, _, rep = _pipeline(params)
    ok = all(rep.satisfied[key] for key in _COROLLARY_KEYS)
    return InstanceRecord(i, ok, {"params": params.to_json(), "checks": {k: rep.satisfied[k] for k in _COROLLARY_KEYS}})


def _case_siegel(i, params):
    _, _, basis, _ = _pipeline(params)
    certs = [lvl.siegel for lvl in basis.levels]
    ok = all(c.satisfied for c in certs)
    tight = None
    if not params.field.is_rational:
        tight = all(c.tight for c in certs)
        ok = ok and tight
    detail = {"params": params.to_json(), "calls": len(certs), "methods": [c.method.value for c in certs]}
    if tight is not None:
        detail["tight"] = tight
    return InstanceRecord(i, ok, detail)


def _case_product_formula(i, seed):
    rng = make_rng(seed)
    field = QQ if i % 2 == 0 else GroundField(int(rng.choice([2, 3, 5])))
    a = random_nonzero(rng, field, 30 if field.is_rational else 6)
    return InstanceRecord(i, product_formula_check(a) == 1 if field.is_rational else product_formula_check(a).log_exponent == 0,
                          {"field": field.to_json(), "element": field.format(a)})


def _random_field(rng, i):
    return QQ if i % 2 == 0 else GroundField(int(rng.choice([2, 3, 5])))


def _bound_for(field):
    return 4 if field.is_rational else 2


def _case_heights(i, seed):
    """Duality, sandwich, star inequality and the dilation-constant identities."""
    rng = make_rng(seed)
    field = _random_field(rng, i)
    b = _bound_for(field)
    N = int(rng.integers(2, 5))
    A = random_automorphism(rng, field, N)
    As = star(A)
    dc, dcs = dilation_constants(A), dilation_constants(As)
    checks = {}
    L = int(rng.integers(1, N))
    V = random_subspace(rng, field, N, L, b)
    B = dual_complement(V)
    checks["duality"] = height_matrix(As, B, "rows") * dc.detAdelic == height_subspace(A, V)
    x = tuple(random_element(rng, field, b) for _ in range(N))
    if not any(x):
        x = (field.one(),) + x[1:]
    h, hA = height_vector(AdelicAutomorphism.identity(field, N), x), height_vector(A, x)
    checks["sandwich"] = dc.C1 * h <= hA <= dc.C2 * h
    checks["star"] = height_vector(As, x) <= dc.C1 ** -2 * hA
    checks["starConstants"] = (
        dcs.C1 ** -1 == dc.C2 and dcs.C2 == dc.C1 ** -1 and dcs.frakC == dc.frakC
    )
    return InstanceRecord(i, all(checks.values()), {"field": field.to_json(), "checks": checks})


def _case_inequalities(i, seed):
    """Wedge (both forms), intersection and matrix-product bounds."""
    rng = make_rng(seed)
    field = _random_field(rng, i)
    b = _bound_for(field)
    N = int(rng.integers(2, 6))
    A = random_automorphism(rng, field, N)
    one = AdelicAutomorphism.identity(field, N)
    checks = {}
    J = int(rng.integers(1, N + 1))
    X = random_subspace(rng, field, N, J, b)
    cols = list(X.basis)
    prod = height_vector(A, cols[0])
    for c in cols[1:]:
        prod = prod * height_vector(A, c)
    hX = height_subspace(A, X)
    checks["wedge"] = hX <= prod
    if J >= 2:
        s = int(rng.integers(1, J))
        X1, X2 = Subspace(field, N, tuple(cols[:s])), Subspace(field, N, tuple(cols[s:]))
        checks["wedgeBlock"] = hX <= height_subspace(A, X1) * height_subspace(A, X2)
    d1 = int(rng.integers(1, N + 1))
    d2 = int(rng.integers(max(1, N + 1 - d1), N + 1))
    U1, U2 = random_subspace(rng, field, N, d1, b), random_subspace(rng, field, N, d2, b)
    U = intersect(U1, U2)
    if U.dim:
        # The product bound needs H(U1 + U2) >= 1, true for the canonical height
        # but not for twisted ones; twisted heights are checked in the
        # Vaaler-Struppeck form, which carries the H_A(U1 + U2) factor.
        checks["intersection"] = height_subspace(one, U) <= height_subspace(one, U1) * height_subspace(one, U2)
        checks["intersectionTwisted"] = (
            height_subspace(A, U) * height_subspace(A, sum_space(U1, U2))
            <= height_subspace(A, U1) * height_subspace(A, U2)
        )
    alternating = bool(rng.integers(0, 2))
    for _ in range(100):
        F = random_alternating(rng, field, N, b) if alternating else random_matrix(rng, field, N, N, b)
        FX = [matvec(transpose(F), c) for c in cols]
        if any(a for row in F for a in row) and rank(from_columns(FX)) == J:
            break
    else:
        F = None
    if F is not None:
        hF = form_height(F)
        dc = dilation_constants(A)
        hFX_A = height_matrix(A, from_columns(FX), "columns")
        checks["productTwisted"] = hFX_A <= dc.frakC**J * hF**J * prod
        plain = height_vector(one, cols[0])
        for c in cols[1:]:
            plain = plain * height_vector(one, c)
        checks["productCanonical"] = height_matrix(one, from_columns(FX), "columns") <= hF**J * plain
    return InstanceRecord(i, all(checks.values()), {"field": field.to_json(), "alternating": alternating, "checks": checks})


def _case_graph(i, seed):
    rng = make_rng(seed)
    for _ in range(MAX_RESAMPLES):
        k = int(rng.integers(1, 6))
        G = random_graph(rng, 2 * k, float(rng.uniform(0.1, 0.9)))
        if clique_number(G) <= k:
            break
    else:
        raise GenerationError("no graph with small clique number found")
    M = (k + 1) // 2
    pairs = disjoint_disconnected_pairs(G, k)
    oracle = oracle_max_disjoint_pairs(G)
    ok = len(pairs.pairs) == M and pairs.is_valid_for(G) and oracle >= M
    return InstanceRecord(i, ok, {"graph": G.to_json(), "pairs": pairs.to_json(), "oracle": oracle})


def _case_sharpness(i, k):
    G = sharpness_graph(k)
    M = (k + 1) // 2
    ok = oracle_max_disjoint_pairs(G) == M and clique_number(G) == k
    return InstanceRecord(i, ok, {"k": k, "graph": G.to_json()})


def _case_exponents(i, k):
    e = exponents(k)
    if k % 2 == 0:
        a, b = Fraction(k * k + 4 * k, 4), Fraction(2 * k**3 + 9 * k * k - 14 * k, 12)
    else:
        a, b = Fraction(k * k + 4 * k - 1, 4), Fraction(2 * k**3 + 9 * k * k - 14 * k + 3, 12)
    ok = a.denominator == b.denominator == 1 and (e.a_k, e.b_k) == (a, b)
    return InstanceRecord(i, ok, {"k": k, "a_k": e.a_k, "b_k": e.b_k})


def _seeds(seed: int, count: int) -> list[int]:
    rng = make_rng(seed)
    return [int(s) for s in rng.integers(0, 2**63, size=count)]


def _full_corpus(seed: int, count: int | None, ff_count: int | None = None):
    q = corpus("q", 200 if count is None else count, seed)
    f = corpus("fp(t)", (100 if count is None else max(1, count // 2)) if ff_count is None else ff_count, seed + 1)
    return q + f


def _jobs(name: str, count: int | None, seed: int):
    if name in ("symplectic", "theorem-bound", "corollaries", "siegel"):
        fn = {"symplectic": _case_symplectic, "theorem-bound": _case_theorem,
              "corollaries": _case_corollaries, "siegel": _case_siegel}[name]
        return fn, _full_corpus(seed, count)
    if name == "twisted-bound":
        return _case_twisted, _seeds(seed, 50 if count is None else count)
    if name == "product-formula":
        return _case_product_formula, _seeds(seed, 200 if count is None else count)
    if name == "height-identities":
        return _case_heights, _seeds(seed, 100 if count is None else count)
    if name == "inequalities":
        return _case_inequalities, _seeds(seed, 100 if count is None else count)
    if name == "graph-lemma-oracle":
        return _case_graph, _seeds(seed, 500 if count is None else count)
    if name == "graph-sharpness":
        return _case_sharpness, list(range(1, (5 if count is None else min(count, 6)) + 1))
    if name == "exponents":
        return _case_exponents, list(range(1, (8 if count is None else count) + 1))
    raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


SUITES = (
    "product-formula",
    "symplectic",
    "theorem-bound",
    "twisted-bound",
    "corollaries",
    "siegel",
    "graph-lemma-oracle",
    "graph-sharpness",
    "height-identities",
    "inequalities",
    "exponents",
)


def _run_one(args):
    fn, i, arg = args
    return fn(i, arg)


def thread_count() -> int:
    try:
        n = int(os.environ.get("SYMPL_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, min(n, os.cpu_count() or 1))


def run_suite(name: str, count: int | None = None, seed: int = 0, workers: int | None = None) -> SuiteReport:
    """Run one named suite; ``count=None`` uses the acceptance sizes."""
    fn, args = _jobs(name, count, seed)
    workers = thread_count() if workers is None else workers
    start = time.perf_counter()
    tasks = [(fn, i, a) for i, a in enumerate(args)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, tasks))
    else:
        records = [_run_one(t) for t in tasks]
    records.sort(key=lambda r: r.index)
    return SuiteReport(name, records, time.perf_counter() - start)
