"""Syzygies and minimal filtered free resolutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AlgebraSpec, Polynomial
from .errors import LengthExceeded, MissingTrackingData, ZeroElementError
from .groebner import DEFAULT_STEP_CAP, GroebnerRecord, buchberger, normal_form
from .minimal import QuotientPresentation, minimal_standard_basis, minimize_presentation
from .module import FreeModuleSpec, ModuleElement, ModuleOrderingSpec, combine, filtered_degree
from .transfer import GradedContext, minimal_homogeneous_generators, sigma_element


def induced_module(ambient: FreeModuleSpec, images: Sequence[ModuleElement], name: str = "L") -> FreeModuleSpec:
    """Free module with one basis vector per image, shifted by its filtered
    degree and ordered by the graded Schreyer ordering the images induce."""
    images = list(images)
    for k, x in enumerate(images):
        if not x:
            raise ZeroElementError(f"image {k + 1} is zero")
    ordering = ModuleOrderingSpec("schreyer", True, images=[x.lm for x in images], ambient=ambient)
    shifts = [filtered_degree(ambient, x) for x in images]
    return FreeModuleSpec(ambient.algebra, len(images), shifts, ordering, name)


def _require_tracking(rec: GroebnerRecord):
    if not rec.tracked:
        raise MissingTrackingData("Groebner record was computed without tracking")


def schreyer_syzygies(rec: GroebnerRecord, module: FreeModuleSpec | None = None) -> list:
    """Syzygies of the basis, one per treated S-pair."""
    _require_tracking(rec)
    L1 = module or induced_module(rec.module, rec.basis)
    alg = rec.module.algebra
    one = alg.one()
    out = []
    for s in rec.syzygy_seeds:
        gi, gj = rec.basis[s.i], rec.basis[s.j]
        qi = tuple(g - a for g, a in zip(s.gamma, gi.lm[0]))
        qj = tuple(g - a for g, a in zip(s.gamma, gj.lm[0]))
        terms: dict = {}

        def add(key, c):
            v = terms.get(key, 0) + c
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)

        add((qi, s.i), s.coeff_i)
        add((qj, s.j), -s.coeff_j)
        for k, f in enumerate(s.quotients):
            for a, c in f._terms.items():
                add((a, k), -c)
        out.append(ModuleElement(L1, terms))
    return out


def _row_times_matrix(alg: AlgebraSpec, row: Sequence[Polynomial], M: Sequence[Sequence[Polynomial]], width: int) -> list:
    out = [alg.poly() for _ in range(width)]
    for k, f in enumerate(row):
        if not f:
            continue
        for l in range(width):
            if M[k][l]:
                out[l] = out[l] + f * M[k][l]
    return out


def syzygy_generators(rec: GroebnerRecord, module: FreeModuleSpec | None = None) -> list:
    """Generators of the syzygies of the record's inputs.

    Rows ``s * V`` for every basis syzygy ``s`` together with the nonzero rows of
    ``U V - E``.
    """
    _require_tracking(rec)
    alg = rec.module.algebra
    m = len(rec.inputs)
    L1 = module or induced_module(rec.module, rec.inputs)
    t = len(rec.basis)
    rows = []
    for s in schreyer_syzygies(rec):
        vec = [s.component(k) for k in range(t)]
        rows.append(_row_times_matrix(alg, vec, rec.V_matrix, m))
    for r in range(m):
        row = _row_times_matrix(alg, rec.U_matrix[r], rec.V_matrix, m)
        row[r] = row[r] - alg.constant(1)
        rows.append(row)
    out = []
    for row in rows:
        x = L1.element(row)
        if x:
            out.append(x)
    return out


@dataclass
class ResolutionStep:
    source: FreeModuleSpec
    target: FreeModuleSpec
    matrix: list  # rank(source) rows of rank(target) polynomials

    def images(self) -> list:
        return [self.target.element(row) for row in self.matrix]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def failing(self) -> list:
        return [c.name for c in self.checks if not c.passed]


@dataclass
class Resolution:
    algebra: AlgebraSpec
    base: FreeModuleSpec
    steps: list
    presentation: QuotientPresentation | None = None
    relations: list | None = None  # generators of N' inside ``base``
    module_name: str = "M"
    report: VerificationReport | None = None

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def ranks(self) -> list:
        return [self.base.rank] + [s.source.rank for s in self.steps]

    @property
    def shifts(self) -> list:
        return [list(self.base.shifts)] + [list(s.source.shifts) for s in self.steps]

    def modules(self) -> list:
        return [self.base] + [s.source for s in self.steps]

    @classmethod
    def from_matrices(cls, algebra, base, matrices, shifts=None, relations=None, module_name="M"):
        """Rebuild the chain of free modules from the map matrices.

        Each source module gets the graded Schreyer ordering induced by its
        rows; ``shifts`` (one list per step) defaults to the row degrees.
        Zero rows are tolerated so that malformed input can still be verified.
        """
        steps = []
        target = base
        for k, rows in enumerate(matrices):
            images = [target.element(row) for row in rows]
            leads = [x.lm if x else (algebra.one(), 0) for x in images]
            if shifts is not None:
                sh = list(shifts[k])
            else:
                sh = [filtered_degree(target, x) if x else 0 for x in images]
            order = ModuleOrderingSpec("schreyer", True, images=leads, ambient=target)
            source = FreeModuleSpec(algebra, len(rows), sh, order, f"L{k + 1}")
            steps.append(ResolutionStep(source, target, [list(r) for r in rows]))
            target = source
        return cls(algebra, base, steps, None, relations, module_name)


def minimal_filtered_resolution(
    L0: FreeModuleSpec,
    theta: Sequence[ModuleElement],
    max_length: int | None = None,
    step_cap: int = DEFAULT_STEP_CAP,
    verify: bool = True,
    module_name: str = "M",
) -> Resolution:
    """Minimal filtered free resolution of ``L0 / <theta>``."""
    alg = L0.algebra
    if max_length is None:
        max_length = alg.n
    ctx = GradedContext(alg)
    theta = [x for x in theta if x]
    if theta:
        G = buchberger(L0, theta, step_cap=step_cap, track=False).reduced_basis
    else:
        G = []
    pres = minimize_presentation(L0, G)
    base, rels = pres.restricted()
    steps: list = []
    ambient, gens = base, rels
    level = 0
    while gens and ambient.rank:
        level += 1
        if level > max_length:
            raise LengthExceeded(
                f"resolution needs more than {max_length} steps (the generator count bounds the length by {alg.n})"
            )
        W = minimal_standard_basis(ambient, gens, step_cap=step_cap, ctx=ctx)
        Li = induced_module(ambient, W, name=f"L{level}")
        steps.append(ResolutionStep(Li, ambient, [w.components() for w in W]))
        rec = buchberger(ambient, W, step_cap=step_cap, track=True)
        gens = syzygy_generators(rec, Li)
        ambient = Li
    res = Resolution(alg, base, steps, pres, rels, module_name)
    if verify:
        res.report = verify_resolution(res, step_cap=step_cap)
    return res


def _membership(L: FreeModuleSpec, elems, gens, step_cap) -> bool:
    gens = [g for g in gens if g]
    elems = [e for e in elems if e]
    if not elems:
        return True
    if not gens:
        return False
    basis = buchberger(L, gens, step_cap=step_cap, track=False).basis
    return all(not normal_form(L, e, basis) for e in elems)


def verify_resolution(R: Resolution, step_cap: int = DEFAULT_STEP_CAP) -> VerificationReport:
    report = VerificationReport()
    alg = R.algebra
    ctx = GradedContext(alg)
    steps = R.steps

    # (a) consecutive compositions vanish
    bad = []
    for i in range(len(steps) - 1):
        lower = steps[i].images()
        for r, row in enumerate(steps[i + 1].matrix):
            if combine(steps[i].target, row, lower):
                bad.append(f"map {i + 2} row {r + 1}")
    report.checks.append(CheckResult("composition", not bad, "; ".join(bad) or "all compositions vanish"))

    # (b) exactness
    problems = []
    if R.relations is not None:
        im1 = steps[0].images() if steps else []
        if not (_membership(R.base, R.relations, im1, step_cap) and _membership(R.base, im1, R.relations, step_cap)):
            problems.append("image of map 1 differs from the presented relations")
    for i, st in enumerate(steps):
        imgs = st.images()
        zero = [k + 1 for k, x in enumerate(imgs) if not x]
        if zero:
            problems.append(f"map {i + 1} has zero rows {zero}")
            continue
        rec = buchberger(st.target, imgs, step_cap=step_cap, track=True)
        syz = syzygy_generators(rec, st.source)
        nxt = steps[i + 1].images() if i + 1 < len(steps) else []
        if nxt and nxt[0].module is not st.source:
            nxt = [st.source.element(x.components()) for x in nxt]
        if not _membership(st.source, syz, nxt, step_cap):
            problems.append(f"kernel of map {i + 1} is not the image of map {i + 2}")
    report.checks.append(CheckResult("exactness", not problems, "; ".join(problems) or "exact at every module"))

    # (c) minimality: no unit entries at matching degree, symbols minimal
    problems = []
    for i, st in enumerate(steps):
        one = alg.one()
        for k, row in enumerate(st.matrix):
            for j, f in enumerate(row):
                if f and f._terms.get(one) and st.target.shifts[j] == st.source.shifts[k]:
                    problems.append(f"map {i + 1} entry ({k + 1},{j + 1}) is a unit at matching degree")
        imgs = [x for x in st.images() if x]
        if len(imgs) == len(st.matrix) and imgs:
            symbols = [sigma_element(ctx, st.target, x) for x in imgs]
            kept = minimal_homogeneous_generators(ctx.graded_module(st.target), symbols)
            if len(kept) != len(imgs):
                redundant = sorted(set(range(len(imgs))) - set(kept))
                problems.append(f"map {i + 1} rows {[r + 1 for r in redundant]} are redundant")
    report.checks.append(CheckResult("minimality", not problems, "; ".join(problems) or "every map is minimal"))

    # (d) shifts equal the filtered degrees of the images
    problems = []
    for i, st in enumerate(steps):
        for k, x in enumerate(st.images()):
            if x and filtered_degree(st.target, x) != st.source.shifts[k]:
                problems.append(f"step {i + 1} shift {k + 1} is {st.source.shifts[k]}, image degree {filtered_degree(st.target, x)}")
    report.checks.append(CheckResult("shifts", not problems, "; ".join(problems) or "shifts match image degrees"))

    # (e) length bound
    ok = len(steps) <= alg.n
    report.checks.append(CheckResult("length", ok, f"length {len(steps)}, bound {alg.n}"))
    return report
