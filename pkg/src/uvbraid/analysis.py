"""Verification engines: relation checking, constraint systems, finite-field
scans, irreducibility criteria with an independent algebra-dimension oracle,
invariant-vector computations, and quotient-factoring checks.

The engines are deliberately redundant in pairs: a closed-form criterion is
always checkable against a dimension oracle, a symbolic verification against
a sampled one, a derived constraint system against a finite-field scan.  The
pairs are kept separate so that one route can catch a bug in the other.

Exactness policy: everything symbolic runs over rational functions; the
oracles (Burnside dimension, spin, RREF ranks) run over Q(i) after
specialization.  Rank over Q(i) equals rank over C for the same matrices,
so deciding complex irreducibility with exact arithmetic is sound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .groups import (
    GroupSpec,
    Relation,
    Word,
    perm_image,
    phi,
    relations,
    rho,
    sigma,
    word,
)
from .matrices import Matrix
from .reps import LocalRep, build_local_rep, canonical_family, eval_word, specialize
from .scalars import (
    G_ONE,
    G_ZERO,
    GaussianRational,
    MultiPoly,
    PolyRing,
    RatFunc,
    VanishingDenominator,
)

# ---------------------------------------------------------------------------
# relation verification


@dataclass
class RelationOutcome:
    tag: str
    status: str  # "pass" | "fail" | "skipped"
    detail: str = ""
    residue: Matrix | None = None


@dataclass
class VerificationReport:
    rep: str
    spec: GroupSpec
    mode: str
    seed: int | None
    outcomes: list[RelationOutcome]

    @property
    def failed(self) -> list[RelationOutcome]:
        return [o for o in self.outcomes if o.status == "fail"]

    @property
    def skipped(self) -> list[RelationOutcome]:
        return [o for o in self.outcomes if o.status == "skipped"]

    @property
    def all_passed(self) -> bool:
        return not self.failed

    def summary(self) -> str:
        n_pass = sum(1 for o in self.outcomes if o.status == "pass")
        out = f"{self.rep}: {self.mode} check, {n_pass}/{len(self.outcomes)} relations pass"
        if self.skipped:
            out += f" ({len(self.skipped)} skipped)"
        if self.failed:
            out += f", FAILING: {', '.join(o.tag for o in self.failed)}"
        return out

    def to_dict(self) -> dict:
        return {
            "rep": self.rep,
            "group": {
                "flavor": self.spec.flavor,
                "n": self.spec.n,
                "c": self.spec.c,
            },
            "mode": self.mode,
            "seed": self.seed,
            "checks": [
                {
                    "tag": o.tag,
                    "status": o.status,
                    "details": o.detail
                    + (
                        f"; residue {o.residue}"
                        if o.residue is not None and o.status == "fail"
                        else ""
                    ),
                }
                for o in self.outcomes
            ],
        }


def _letters_covered(rel: Relation, rep: LocalRep) -> str | None:
    for w in (rel.lhs, rel.rhs):
        for g, _e in w.letters:
            if not rep.has_block(g):
                return f"family {rep.name!r} has no block for {g}"
    return None


def sample_point(rep: LocalRep, rng: random.Random, tries: int = 500) -> dict:
    """A random integer parameter point avoiding all side-condition zeros."""
    for _ in range(tries):
        point = {
            p: GaussianRational(rng.choice([x for x in range(-9, 10) if x]))
            for p in rep.params
        }
        try:
            if all(not cond.evaluate(point).is_zero() for cond in rep.side_conditions):
                return point
        except VanishingDenominator:
            continue
    raise RuntimeError(f"could not sample a valid point for {rep.name}")


def verify_relations(
    rep: LocalRep,
    spec: GroupSpec | None = None,
    mode: str = "symbolic",
    seed: int = 0,
    samples: int = 3,
) -> VerificationReport:
    """Check every relation of ``spec`` (default: the rep's own group).

    Symbolic mode expands each residue fully over the parameter ring and is
    a proof.  Sampled mode evaluates at ``samples`` random integer points
    avoiding side-condition zeros; it is advisory only.  Relations touching
    a generator the family does not represent (e.g. rho under Burau) are
    reported as skipped, not checked.
    """
    spec = spec or rep.spec
    if spec.n != rep.spec.n:
        raise ValueError("strand counts differ between rep and requested spec")
    if spec.c > rep.spec.c:
        raise ValueError("requested spec has more crossing types than the rep")
    if mode not in ("symbolic", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    rels = relations(spec)
    reps: list[LocalRep]
    if mode == "sampled" and rep.assignment is None:
        rng = random.Random(seed)
        reps = [specialize(rep, sample_point(rep, rng)) for _ in range(samples)]
    else:
        reps = [rep]
    outcomes = []
    for rel in rels:
        gap = _letters_covered(rel, rep)
        if gap is not None:
            outcomes.append(RelationOutcome(rel.tag, "skipped", gap))
            continue
        outcome = RelationOutcome(rel.tag, "pass")
        for r in reps:
            residue = eval_word(r, rel.lhs) - eval_word(r, rel.rhs)
            if not residue.is_zero():
                bad = next(
                    (i, j)
                    for i in range(residue.nrows)
                    for j in range(residue.ncols)
                    if not residue.rows[i][j].is_zero()
                )
                detail = f"entry {bad}: {residue.rows[bad[0]][bad[1]]}"
                if r.assignment is not None and rep.assignment is None:
                    detail += f" at {_point_str(r.assignment)}"
                outcome = RelationOutcome(rel.tag, "fail", detail, residue)
                break
        outcomes.append(outcome)
    return VerificationReport(
        rep=rep.describe(),
        spec=spec,
        mode=mode if rep.assignment is None else "specialized",
        seed=seed if mode == "sampled" else None,
        outcomes=outcomes,
    )


def _point_str(point: dict) -> str:
    return "{" + ", ".join(f"{k}={v}" for k, v in sorted(point.items())) + "}"


# ---------------------------------------------------------------------------
# constraint-system generation


@dataclass
class ConstraintSystem:
    """Polynomial equations forced on generic block entries by relations."""

    block_size: int
    spec: GroupSpec
    ring: PolyRing
    unknowns: tuple[str, ...]
    equations: list[MultiPoly]
    provenance: list[list[str]]

    def __len__(self):
        return len(self.equations)

    def to_dict(self) -> dict:
        return {
            "block_size": self.block_size,
            "unknowns": list(self.unknowns),
            "equations": [str(e) for e in self.equations],
            "provenance": self.provenance,
        }

    def substitute(self, mapping: dict, target: PolyRing) -> list[RatFunc]:
        """Plug rational functions in for the unknowns, equation by equation."""
        return [e.substitute(mapping, target) for e in self.equations]


def generic_rep(
    block_size: int, spec: GroupSpec, rho_form: str = "generic"
) -> LocalRep:
    """A k-local 'representation' whose block entries are fresh unknowns.

    ``rho_form="antidiagonal"`` substitutes the classified virtual block
    [[0, r2], [1/r2, 0]] (the r1 = r4 = 0, r2*r3 = 1 solution locus) while
    the sigma blocks stay fully generic.
    """
    k = block_size
    if k not in (2, 3):
        raise ValueError("block size must be 2 or 3")
    names = [f"r{j}" for j in range(1, k * k + 1)] + [
        f"s{j}_{t}" for t in range(1, spec.c + 1) for j in range(1, k * k + 1)
    ]
    ring = PolyRing(tuple(names))
    if rho_form == "generic":
        rho_rows = [
            [ring.rf(f"r{a * k + b + 1}") for b in range(k)] for a in range(k)
        ]
    elif rho_form == "antidiagonal":
        if k != 2:
            raise ValueError("the antidiagonal virtual block is a 2x2 form")
        r2 = ring.rf("r2")
        rho_rows = [[ring.rf(0), r2], [1 / r2, ring.rf(0)]]
    else:
        raise ValueError(f"unknown rho_form {rho_form!r}")
    sigma_blocks = {
        t: Matrix.from_rows(
            ring,
            [[ring.rf(f"s{a * k + b + 1}_{t}") for b in range(k)] for a in range(k)],
        )
        for t in range(1, spec.c + 1)
    }
    return LocalRep(
        name=f"generic-{k}-local" + ("-antidiagonal" if rho_form != "generic" else ""),
        spec=spec,
        block_size=k,
        degree=spec.n + k - 2,
        ring=ring,
        params=tuple(names),
        side_conditions=(),
        rho_block=Matrix.from_rows(ring, rho_rows),
        sigma_blocks=sigma_blocks,
    )


def generate_constraints(
    block_size: int,
    spec: GroupSpec,
    relation_tags: list[str] | None = None,
    rho_form: str = "generic",
) -> ConstraintSystem:
    """Expand relation residues over generic blocks into a polynomial system.

    Each nonzero entry of eval(lhs) - eval(rhs) contributes its numerator
    polynomial (denominators are monomials in the invertible entries, so
    clearing them loses no solutions).  Equations are deduplicated up to
    nonzero scalar multiples; provenance keeps every contributing tag.
    """
    rep = generic_rep(block_size, spec, rho_form)
    all_rels = {r.tag: r for r in relations(spec)}
    if relation_tags is None:
        chosen = list(all_rels.values())
    else:
        missing = [t for t in relation_tags if t not in all_rels]
        if missing:
            raise ValueError(f"tags not in {spec.describe()}: {missing}")
        chosen = [all_rels[t] for t in relation_tags]
    equations: list[MultiPoly] = []
    provenance: list[list[str]] = []
    seen: dict = {}
    for rel in chosen:
        residue = eval_word(rep, rel.lhs) - eval_word(rep, rel.rhs)
        for row in residue.rows:
            for entry in row:
                if entry.is_zero():
                    continue
                eq = entry.num.monic()
                key = eq.key()
                idx = seen.get(key)
                if idx is None:
                    seen[key] = len(equations)
                    equations.append(eq)
                    provenance.append([rel.tag])
                elif rel.tag not in provenance[idx]:
                    provenance[idx].append(rel.tag)
    appearing: set[str] = set()
    for eq in equations:
        appearing.update(eq.variables())
    unknowns = tuple(v for v in rep.ring.vars if v in appearing)
    return ConstraintSystem(
        block_size=block_size,
        spec=spec,
        ring=rep.ring,
        unknowns=unknowns,
        equations=equations,
        provenance=provenance,
    )


# ---------------------------------------------------------------------------
# finite-field enumeration


@dataclass
class ModPScan:
    p: int
    unknowns: tuple[str, ...]
    fixed: dict[str, int]
    solutions: list[dict[str, int]]

    @property
    def count(self) -> int:
        return len(self.solutions)


def _coeff_mod_p(c: GaussianRational, p: int) -> int:
    if c.im:
        raise ValueError("finite-field scan needs rational (non-imaginary) coefficients")
    num, den = c.re.numerator, c.re.denominator
    if den % p == 0:
        raise ValueError(f"coefficient denominator {den} not invertible mod {p}")
    return num % p * pow(den, -1, p) % p


def _poly_mod_p(poly: MultiPoly, p: int, values: dict[str, np.ndarray], npoints: int):
    total = np.zeros(npoints, dtype=np.int64)
    vars_ = poly.ring.vars
    for exp, c in poly.terms.items():
        term = np.full(npoints, _coeff_mod_p(c, p), dtype=np.int64)
        for k, d in enumerate(exp):
            if d:
                term = term * (values[vars_[k]] ** d % p) % p
        total = (total + term) % p
    return total


def enumerate_solutions_mod_p(
    system: ConstraintSystem,
    p: int,
    invertibility: list[MultiPoly] = (),
    fixed: dict[str, int] | None = None,
) -> ModPScan:
    """Exhaustively solve the system over F_p, desk scale.

    ``invertibility`` lists polynomials required nonzero (e.g. block
    determinants); ``fixed`` pre-binds some unknowns so a bucket of a bigger
    system can be scanned without blowing up the grid.
    """
    if p < 3 or p > 13 or any(p % q == 0 for q in range(2, p)):
        raise ValueError("p must be an odd prime at desk scale (3..13)")
    fixed = {k: v % p for k, v in (fixed or {}).items()}
    needed: set[str] = set()
    for poly in list(system.equations) + list(invertibility):
        needed.update(poly.variables())
    scan_vars = tuple(v for v in system.ring.vars if v in needed and v not in fixed)
    if p ** len(scan_vars) > 20_000_000:
        raise ValueError(
            f"scan of {len(scan_vars)} unknowns mod {p} exceeds desk scale"
        )
    if scan_vars:
        grid = np.indices((p,) * len(scan_vars), dtype=np.int64).reshape(
            len(scan_vars), -1
        )
    else:
        grid = np.zeros((0, 1), dtype=np.int64)
    npoints = grid.shape[1]
    values: dict[str, np.ndarray] = {
        v: grid[i] for i, v in enumerate(scan_vars)
    }
    for v, x in fixed.items():
        values[v] = np.full(npoints, x, dtype=np.int64)
    mask = np.ones(npoints, dtype=bool)
    for poly in system.equations:
        mask &= _poly_mod_p(poly, p, values, npoints) == 0
    for poly in invertibility:
        mask &= _poly_mod_p(poly, p, values, npoints) != 0
    cols = grid[:, mask].T
    solutions = [dict(zip(scan_vars, map(int, col))) | fixed for col in cols]
    return ModPScan(p=p, unknowns=scan_vars, fixed=fixed, solutions=solutions)


def classify_virtual_point(sol: dict[str, int], p: int) -> str:
    """Bucket a 2x2 virtual-block solution: identity, antidiagonal, or other."""
    r1, r2, r3, r4 = (sol[k] % p for k in ("r1", "r2", "r3", "r4"))
    if (r1, r2, r3, r4) == (1, 0, 0, 1):
        return "identity"
    if r1 == 0 and r4 == 0 and r2 * r3 % p == 1:
        return "antidiagonal"
    return "other"


# ---------------------------------------------------------------------------
# span engines over Q(i)


def _const_rows(mat: Matrix) -> list[list[GaussianRational]]:
    return mat.constant_entries()


def _matmul_g(a, b):
    n, mid, m = len(a), len(b), len(b[0])
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = G_ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def _matvec_g(a, v):
    out = []
    for row in a:
        acc = G_ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


class _Echelon:
    """Incremental row-echelon basis over Q(i) (pivot-normalized rows)."""

    def __init__(self):
        self.rows: dict[int, list[GaussianRational]] = {}

    def __len__(self):
        return len(self.rows)

    def insert(self, vec: list[GaussianRational]) -> list[GaussianRational] | None:
        """Reduce against the basis; add and return the reduced row if new."""
        v = list(vec)
        for piv in sorted(self.rows):
            c = v[piv]
            if c:
                row = self.rows[piv]
                v = [a - c * b for a, b in zip(v, row)]
        piv = next((i for i, a in enumerate(v) if a), None)
        if piv is None:
            return None
        inv = v[piv].inverse()
        v = [a * inv for a in v]
        self.rows[piv] = v
        return v


def burnside_dim(mats: list[Matrix]) -> int:
    """Dimension of the unital algebra spanned by all products of ``mats``.

    Closure is breadth-first by word length with rank-based deduplication
    per wave; it stops when a wave adds no new dimension or the full matrix
    algebra (dimension m^2) is reached.  The matrices act irreducibly on
    C^m iff the result is m^2 (Burnside), and since every invertible
    generator's inverse is a polynomial in the generator (Cayley-Hamilton),
    positive products suffice.
    """
    if not mats:
        raise ValueError("need at least one matrix")
    consts = [_const_rows(m) for m in mats]
    m = len(consts[0])
    if any(len(c) != m or len(c[0]) != m for c in consts):
        raise ValueError("matrices must be square and of equal size")
    basis = _Echelon()
    ident = [[G_ONE if i == j else G_ZERO for j in range(m)] for i in range(m)]
    basis.insert([x for row in ident for x in row])
    wave = [ident]
    while wave and len(basis) < m * m:
        nxt = []
        for prod in wave:
            for gen in consts:
                cand = _matmul_g(gen, prod)
                if basis.insert([x for row in cand for x in row]) is not None:
                    nxt.append(cand)
        wave = nxt
    return len(basis)


def spin(mats: list[Matrix], seeds: list[Matrix]) -> list[Matrix]:
    """Basis of the smallest subspace containing ``seeds`` and invariant
    under every matrix (the 'spin' of the seeds).  Seeds and result are
    column vectors."""
    if not mats:
        raise ValueError("need at least one matrix")
    ring = mats[0].ring
    consts = [_const_rows(m) for m in mats]
    m = len(consts[0])
    basis = _Echelon()
    frontier = []
    for s in seeds:
        if s.shape != (m, 1):
            raise ValueError(f"seed shape {s.shape} does not match size {m}")
        v = [row[0] for row in s.constant_entries()]
        r = basis.insert(v)
        if r is not None:
            frontier.append(r)
    while frontier:
        nxt = []
        for v in frontier:
            for gen in consts:
                r = basis.insert(_matvec_g(gen, v))
                if r is not None:
                    nxt.append(r)
        frontier = nxt
    vectors = [basis.rows[piv] for piv in sorted(basis.rows)]
    return [Matrix.column(ring, vec) for vec in vectors]


def invariant_check(mats: list[Matrix], vec: Matrix, side: str) -> bool:
    """Does ``vec`` span an invariant line?  Column side checks M v || v for
    every M; row side checks v M || v.  Works symbolically as well."""
    if side not in ("column", "row"):
        raise ValueError("side must be 'column' or 'row'")
    if side == "column" and vec.ncols != 1:
        raise ValueError(f"column witness must be m x 1, got {vec.shape}")
    if side == "row" and vec.nrows != 1:
        raise ValueError(f"row witness must be 1 x m, got {vec.shape}")
    entries = [x for row in vec.rows for x in row]
    if all(x.is_zero() for x in entries):
        raise ValueError("witness vector is zero")
    for m in mats:
        image = m * vec if side == "column" else vec * m
        img = [x for row in image.rows for x in row]
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                if entries[i] * img[j] != entries[j] * img[i]:
                    return False
    return True


# ---------------------------------------------------------------------------
# reducibility criteria (closed forms) with verified witnesses


@dataclass
class ReducibilityResult:
    family: str
    verdict: str  # "reducible" | "irreducible"
    witness_side: str | None
    witness: Matrix | None
    details: list[str] = field(default_factory=list)


_CRITERION_FAMILIES = (
    "upsilon-prime",
    "omega1p",
    "omega2p",
    "omega3p",
    "epsilon1",
    "epsilon2",
    "epsilon3",
    "epsilon4",
)


def reducibility_criterion(
    family: str, spec: GroupSpec, params: dict
) -> ReducibilityResult:
    """Closed-form reducibility verdict at a parameter point, with witness.

    Every "reducible" verdict comes with an invariant line witness that has
    been re-verified against all generator images before being returned, so
    a wrong closed form cannot silently return a bogus certificate.
    """
    name = canonical_family(family)
    if name not in _CRITERION_FAMILIES:
        raise ValueError(
            f"no closed-form criterion for {name!r}; use burnside_dim instead"
        )
    rep = build_local_rep(name, spec, params)
    point = rep.assignment
    assert point is not None
    ring = rep.ring
    m = rep.degree
    details: list[str] = []
    if spec.c > 1 and name.startswith(("omega", "upsilon")):
        details.append(
            f"branch conditions quantified over all {spec.c} crossing types"
        )

    def val(nm: str) -> GaussianRational:
        return point[nm]

    one = G_ONE
    witness_side: str | None = None
    witness: Matrix | None = None
    reducible = False

    if name == "upsilon-prime":
        row_branch = all(
            val(f"s1_{t}") + val(f"s2_{t}") == one
            and val(f"s3_{t}") + val(f"s4_{t}") == one
            for t in range(1, spec.c + 1)
        )
        col_branch = all(
            val(f"s1_{t}") + val(f"s3_{t}") == one
            and val(f"s2_{t}") + val(f"s4_{t}") == one
            for t in range(1, spec.c + 1)
        )
        details.append(f"row sums at 1: {row_branch}; column sums at 1: {col_branch}")
        reducible = row_branch or col_branch
        if row_branch:
            witness_side, witness = "column", Matrix.column(ring, [1] * m)
        elif col_branch:
            witness_side, witness = "row", Matrix.row_vector(ring, [1] * m)
    elif name == "omega1p":
        on = all(
            val(f"s2_{t}") == val("r2") and val(f"s3_{t}") * val("r2") == one
            for t in range(1, spec.c + 1)
        )
        details.append(f"s2 = r2 and s3 = 1/r2 for all types: {on}")
        reducible = on
        if on:
            witness_side, witness = "column", Matrix.column(ring, [1] * m)
    elif name == "omega2p":
        on = all(
            val(f"s2_{t}") / val("r2") + val(f"s4_{t}") == one
            for t in range(1, spec.c + 1)
        )
        details.append(f"s2/r2 + s4 = 1 for all types: {on}")
        reducible = on
        if on:
            witness_side, witness = "row", Matrix.row_vector(ring, [1] * m)
    elif name == "omega3p":
        on = all(
            val(f"s1_{t}") + val(f"s2_{t}") / val("r2") == one
            for t in range(1, spec.c + 1)
        )
        details.append(f"s1 + s2/r2 = 1 for all types: {on}")
        reducible = on
        if on:
            witness_side, witness = "column", Matrix.column(ring, [1] * m)
    elif name == "epsilon1":
        reducible = True
        witness_side = "column"
        witness = Matrix.column(ring, [1] + [0] * (m - 1))
        details.append("first basis column is always invariant")
    elif name == "epsilon2":
        reducible = True
        witness_side = "column"
        witness = Matrix.column(ring, [0] * (m - 1) + [1])
        details.append("last basis column is always invariant")
    elif name == "epsilon3":
        reducible = True
        witness_side = "column"
        r6 = val("r6")
        witness = Matrix.column(ring, [r6 ** (-j) for j in range(m)])
        details.append("geometric column (1, r6^-1, ..., r6^-n) is invariant")
    elif name == "epsilon4":
        reducible = True
        r2 = val("r2")
        gens = [mat for _g, mat in rep.generator_images()]
        inverse_reading = Matrix.row_vector(ring, [r2 ** (-j) for j in range(m)])
        direct_reading = Matrix.row_vector(ring, [r2 ** j for j in range(m)])
        inv_ok = invariant_check(gens, inverse_reading, "row")
        dir_ok = invariant_check(gens, direct_reading, "row")
        details.append(
            f"row (1, r2^-1, ..., r2^-n) invariant: {inv_ok}; "
            f"row (1, r2, ..., r2^n) invariant: {dir_ok}"
        )
        details.append(
            "a row in powers of r6 is not expressible: this family has no r6 parameter"
        )
        witness_side = "row"
        witness = direct_reading if dir_ok else inverse_reading
        if not (dir_ok or inv_ok):
            raise AssertionError(
                "no geometric row witness verified; criterion table is wrong"
            )

    if reducible and witness is not None:
        gens = [mat for _g, mat in rep.generator_images()]
        if not invariant_check(gens, witness, witness_side):
            raise AssertionError(
                f"criterion emitted a non-invariant witness for {name}; "
                "closed form and table disagree"
            )
        details.append("witness re-verified invariant under every generator image")
    return ReducibilityResult(
        family=name,
        verdict="reducible" if reducible else "irreducible",
        witness_side=witness_side,
        witness=witness,
        details=details,
    )


# ---------------------------------------------------------------------------
# quotient factoring checks


@dataclass
class FactorOutcome:
    map_name: str
    tag: str
    verdict: str  # "kills" | "distinguishes"
    lhs_image: str
    rhs_image: str

    def __str__(self):
        rel = "=" if self.verdict == "kills" else "!="
        return (
            f"{self.tag} under {self.map_name}: {self.verdict} "
            f"({self.lhs_image} {rel} {self.rhs_image})"
        )


def factor_check(
    relation: Relation | Word,
    spec: GroupSpec,
    which: str,
    t0: int = 1,
) -> FactorOutcome:
    """Does a quotient map kill a relation (map both sides equally) or
    distinguish its sides?

    ``which`` is one of ``piP`` (all generators to adjacent transpositions),
    ``piK`` (sigma to 1, rho to transpositions), or ``phi`` (the Z x S_n
    splitting map for marker type ``t0``).  A bare relator word is treated
    as a relation against the empty word.
    """
    if isinstance(relation, Relation):
        lhs, rhs, tag = relation.lhs, relation.rhs, relation.tag
    else:
        lhs, rhs, tag = relation, Word(), f"relator {relation}"
    if which == "phi":
        il, ir = phi(lhs, t0, spec), phi(rhs, t0, spec)
        kills = il == ir
        map_name = f"phi(t0={t0})"
    elif which in ("piP", "piK"):
        il, ir = perm_image(lhs, spec, which), perm_image(rhs, spec, which)
        kills = il == ir
        map_name = which
    else:
        raise ValueError(f"unknown map {which!r}; want piP, piK or phi")
    return FactorOutcome(
        map_name=map_name,
        tag=tag,
        verdict="kills" if kills else "distinguishes",
        lhs_image=str(il),
        rhs_image=str(ir),
    )


def forbidden_moves(spec: GroupSpec) -> list[Relation]:
    """The two forbidden-move families (not consequences of the universal
    relations): FM1 is the welded (over) move, FM2 the under move."""
    out = []
    for i in range(1, spec.n - 1):
        for t in range(1, spec.c + 1):
            out.append(
                Relation(
                    f"FM1[i={i},t={t}]",
                    word(rho(i), sigma(i + 1, t), sigma(i, t)),
                    word(sigma(i + 1, t), sigma(i, t), rho(i + 1)),
                )
            )
            out.append(
                Relation(
                    f"FM2[i={i},t={t}]",
                    word(rho(i + 1), sigma(i, t), sigma(i + 1, t)),
                    word(sigma(i, t), sigma(i + 1, t), rho(i)),
                )
            )
    return out
