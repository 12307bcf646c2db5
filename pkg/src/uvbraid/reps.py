"""Local representation families, word evaluation, conjugation equivalence.

A k-local homogeneous representation of degree m sends each generator with
strand index i to  I_(i-1) (+) B (+) I_(m-i-k+1)  for a single k x k block B
depending only on the generator's kind and crossing type.  This module holds
the block tables for every family handled here:

==============  ===  =====================  =======================================
family          k    rho block              sigma_t block
==============  ===  =====================  =======================================
upsilon         2    [[0,r2],[1/r2,0]]      [[s1_t,s2_t],[s3_t,s4_t]]
upsilon-prime   2    [[0,1],[1,0]]          [[s1_t,s2_t],[s3_t,s4_t]]
epsilon1        3    antidiag(r6) in 2..3   1 (+) [[s5_t,s6_t],[s8_t,s9_t]]
epsilon2        3    antidiag(r2) in 1..2   [[s1_t,s2_t],[s4_t,s5_t]] (+) 1
epsilon3        3    row-2 spike, -1 pivot  row 2 = [s4_t, s5_t, r6(1-r6 s4_t-s5_t)]
epsilon4        3    col-2 spike, -1 pivot  col 2 = [r2(1-s5_t-r2 s8_t), s5_t, s8_t]
omega1          2    [[0,r2],[1/r2,0]]      [[0,s2_t],[s3_t,0]]
omega2          2    [[0,r2],[1/r2,0]]      [[0,s2_t],[1/r2,s4_t]]
omega3          2    [[0,r2],[1/r2,0]]      [[s1_t,s2_t],[1/r2,0]]
omega1p..3p     2    [[0,1],[1,0]]          omega_j conjugated: s2_t/r2 up, r2*s3_t down
burau           2    (none)                 [[1-t,t],[1,0]] on braided types
f-rep           3    (none)                 [[1,1,0],[0,-t,0],[0,t,1]] on braided types
==============  ===  =====================  =======================================

Parameter names follow the slot convention: a block entry named r6 or s5_t
sits at the row-major position 6 resp. 5 of the generic 3 x 3 block (for
2 x 2 blocks, positions 1..4).  ``burau`` and ``f-rep`` have no virtual
block: words containing rho letters cannot be evaluated there, and the
relation verifier reports rho-relations as skipped rather than checked.

Conjugation equivalence is searched over geometric diagonal matrices
Q = diag(1, q, q^2, ...) -- exactly the shape that relates each family to
its primed form -- and returns the witness Q together with the parameter
relabeling it induces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import Generator, GroupSpec, Word, rho as _rho, sigma as _sigma
from .matrices import Matrix, block_embed
from .scalars import GaussianRational, PolyRing, RatFunc

FAMILY_NAMES = (
    "upsilon",
    "upsilon-prime",
    "epsilon1",
    "epsilon2",
    "epsilon3",
    "epsilon4",
    "omega1",
    "omega2",
    "omega3",
    "omega1p",
    "omega2p",
    "omega3p",
    "burau",
    "f-rep",
)


def canonical_family(name: str) -> str:
    key = name.strip().lower().replace("_", "-")
    if key == "f-rep" or key == "frep":
        key = "f-rep"
    if key.endswith("-prime") and key.startswith("omega"):
        key = key.replace("-prime", "p")
    if key not in FAMILY_NAMES:
        raise ValueError(f"unknown family {name!r}; expected one of {FAMILY_NAMES}")
    return key


@dataclass
class LocalRep:
    """A concrete (symbolic or specialized) k-local representation."""

    name: str
    spec: GroupSpec
    block_size: int
    degree: int
    ring: PolyRing
    params: tuple[str, ...]
    side_conditions: tuple[RatFunc, ...]
    rho_block: Matrix | None
    sigma_blocks: dict[int, Matrix]
    assignment: dict[str, GaussianRational] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def block(self, g: Generator) -> Matrix:
        """The k x k block of a generator (raises if the family omits it)."""
        if g.kind == "rho":
            if self.rho_block is None:
                raise ValueError(
                    f"family {self.name!r} does not represent virtual generators"
                )
            return self.rho_block
        b = self.sigma_blocks.get(g.type)
        if b is None:
            raise ValueError(
                f"family {self.name!r} has no block for crossing type {g.type}"
            )
        return b

    def has_block(self, g: Generator) -> bool:
        if g.kind == "rho":
            return self.rho_block is not None
        return g.type in self.sigma_blocks

    def matrix(self, g: Generator, exp: int = 1) -> Matrix:
        """Embedded degree-m image of g or g^-1, cached."""
        if not 1 <= g.index <= self.spec.n - 1:
            raise ValueError(f"strand index {g.index} out of range for {self.spec}")
        key = (g.kind, g.type, g.index, exp >= 0)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        blk = self.block(g)
        if exp < 0:
            blk = self._block_inverse(g)
        m = block_embed(blk, g.index, self.degree)
        self._cache[key] = m
        return m

    def _block_inverse(self, g: Generator) -> Matrix:
        key = ("inv", g.kind, g.type)
        hit = self._cache.get(key)
        if hit is None:
            hit = self.block(g).inverse()
            self._cache[key] = hit
        return hit

    def generator_images(self) -> list[tuple[Generator, Matrix]]:
        """All embedded generator matrices that this family defines."""
        out = []
        for i in range(1, self.spec.n):
            if self.rho_block is not None:
                out.append((_rho(i), self.matrix(_rho(i))))
            for t in sorted(self.sigma_blocks):
                out.append((_sigma(i, t), self.matrix(_sigma(i, t))))
        return out

    def describe(self) -> str:
        mode = "symbolic parameters" if self.assignment is None else "specialized"
        return f"{self.name} over {self.spec.describe()}, degree {self.degree}, {mode}"


def _type_params(names: list[str], c: int) -> list[str]:
    return [f"{nm}_{t}" for t in range(1, c + 1) for nm in names]


def _antidiag(ring, vname):
    v = ring.rf(vname)
    return [[0, v], [1 / v, 0]]


# Each entry: (block size, rho params, sigma param stems, builder).
# The builder gets (ring, c) and returns (rho_block_rows | None,
# {t: sigma_rows}, [side conditions]).


def _upsilon(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s1, s2, s3, s4 = (ring.rf(f"s{j}_{t}") for j in (1, 2, 3, 4))
        sig[t] = [[s1, s2], [s3, s4]]
        conds.append(s1 * s4 - s2 * s3)
    return _antidiag(ring, "r2"), sig, conds


def _upsilon_prime(ring: PolyRing, c: int):
    conds = []
    sig = {}
    for t in range(1, c + 1):
        s1, s2, s3, s4 = (ring.rf(f"s{j}_{t}") for j in (1, 2, 3, 4))
        sig[t] = [[s1, s2], [s3, s4]]
        conds.append(s1 * s4 - s2 * s3)
    return [[0, 1], [1, 0]], sig, conds


def _epsilon1(ring: PolyRing, c: int):
    r6 = ring.rf("r6")
    rho = [[1, 0, 0], [0, 0, r6], [0, 1 / r6, 0]]
    conds = [r6]
    sig = {}
    for t in range(1, c + 1):
        s5, s6, s8, s9 = (ring.rf(f"s{j}_{t}") for j in (5, 6, 8, 9))
        sig[t] = [[1, 0, 0], [0, s5, s6], [0, s8, s9]]
        conds.append(s5 * s9 - s6 * s8)
    return rho, sig, conds


def _epsilon2(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    rho = [[0, r2, 0], [1 / r2, 0, 0], [0, 0, 1]]
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s1, s2, s4, s5 = (ring.rf(f"s{j}_{t}") for j in (1, 2, 4, 5))
        sig[t] = [[s1, s2, 0], [s4, s5, 0], [0, 0, 1]]
        conds.append(s1 * s5 - s2 * s4)
    return rho, sig, conds


def _epsilon3(ring: PolyRing, c: int):
    r6 = ring.rf("r6")
    rho = [[1, 0, 0], [1 / r6, -1, r6], [0, 0, 1]]
    conds = [r6]
    sig = {}
    for t in range(1, c + 1):
        s4, s5 = ring.rf(f"s4_{t}"), ring.rf(f"s5_{t}")
        sig[t] = [[1, 0, 0], [s4, s5, r6 * (1 - r6 * s4 - s5)], [0, 0, 1]]
        conds.append(s5)
    return rho, sig, conds


def _epsilon4(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    rho = [[1, r2, 0], [0, -1, 0], [0, 1 / r2, 1]]
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s5, s8 = ring.rf(f"s5_{t}"), ring.rf(f"s8_{t}")
        sig[t] = [[1, r2 * (1 - s5 - r2 * s8), 0], [0, s5, 0], [0, s8, 1]]
        conds.append(s5)
    return rho, sig, conds


def _omega1(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s2, s3 = ring.rf(f"s2_{t}"), ring.rf(f"s3_{t}")
        sig[t] = [[0, s2], [s3, 0]]
        conds += [s2, s3]
    return _antidiag(ring, "r2"), sig, conds


def _omega2(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s2, s4 = ring.rf(f"s2_{t}"), ring.rf(f"s4_{t}")
        sig[t] = [[0, s2], [1 / r2, s4]]
        conds += [s2, s4]
    return _antidiag(ring, "r2"), sig, conds


def _omega3(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s1, s2 = ring.rf(f"s1_{t}"), ring.rf(f"s2_{t}")
        sig[t] = [[s1, s2], [1 / r2, 0]]
        conds += [s1, s2]
    return _antidiag(ring, "r2"), sig, conds


def _omega1p(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s2, s3 = ring.rf(f"s2_{t}"), ring.rf(f"s3_{t}")
        sig[t] = [[0, s2 / r2], [r2 * s3, 0]]
        conds += [s2, s3]
    return [[0, 1], [1, 0]], sig, conds


def _omega2p(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s2, s4 = ring.rf(f"s2_{t}"), ring.rf(f"s4_{t}")
        sig[t] = [[0, s2 / r2], [1, s4]]
        conds += [s2, s4]
    return [[0, 1], [1, 0]], sig, conds


def _omega3p(ring: PolyRing, c: int):
    r2 = ring.rf("r2")
    conds = [r2]
    sig = {}
    for t in range(1, c + 1):
        s1, s2 = ring.rf(f"s1_{t}"), ring.rf(f"s2_{t}")
        sig[t] = [[s1, s2 / r2], [1, 0]]
        conds += [s1, s2]
    return [[0, 1], [1, 0]], sig, conds


def _burau(ring: PolyRing, braided: list[int]):
    t = ring.rf("t")
    block = [[1 - t, t], [1, 0]]
    return None, {ty: block for ty in braided}, [t]


def _f_rep(ring: PolyRing, braided: list[int]):
    t = ring.rf("t")
    block = [[1, 1, 0], [0, -t, 0], [0, t, 1]]
    return None, {ty: block for ty in braided}, [t]


_FAMILY_TABLE = {
    # name: (k, rho param names, sigma stems, builder)
    "upsilon": (2, ["r2"], ["s1", "s2", "s3", "s4"], _upsilon),
    "upsilon-prime": (2, [], ["s1", "s2", "s3", "s4"], _upsilon_prime),
    "epsilon1": (3, ["r6"], ["s5", "s6", "s8", "s9"], _epsilon1),
    "epsilon2": (3, ["r2"], ["s1", "s2", "s4", "s5"], _epsilon2),
    "epsilon3": (3, ["r6"], ["s4", "s5"], _epsilon3),
    "epsilon4": (3, ["r2"], ["s5", "s8"], _epsilon4),
    "omega1": (2, ["r2"], ["s2", "s3"], _omega1),
    "omega2": (2, ["r2"], ["s2", "s4"], _omega2),
    "omega3": (2, ["r2"], ["s1", "s2"], _omega3),
    "omega1p": (2, ["r2"], ["s2", "s3"], _omega1p),
    "omega2p": (2, ["r2"], ["s2", "s4"], _omega2p),
    "omega3p": (2, ["r2"], ["s1", "s2"], _omega3p),
    "burau": (2, [], [], _burau),
    "f-rep": (3, [], [], _f_rep),
}


def build_local_rep(
    family: str,
    spec: GroupSpec,
    params: str | dict = "symbolic",
) -> LocalRep:
    """Construct a family over ``spec``, symbolic or at a full parameter point.

    ``params`` is either the string ``"symbolic"`` or a dict binding every
    family parameter to a Q(i) scalar; the assignment must keep every side
    condition nonzero (those points are excluded from the family).
    """
    name = canonical_family(family)
    k, rho_params, sigma_stems, builder = _FAMILY_TABLE[name]
    if name.startswith("epsilon") and spec.c != 2:
        raise ValueError(f"{name} is defined over c = 2 groups; got c = {spec.c}")
    if name.startswith("omega") and not spec.welded:
        raise ValueError(f"{name} needs a welded group; got {spec.describe()}")
    if name in ("burau", "f-rep"):
        if not spec.braid_types:
            raise ValueError(
                f"{name} represents braided crossing types only; "
                f"{spec.describe()} flags none"
            )
        names = ["t"]
        ring = PolyRing(tuple(names))
        rho_block_rows, sigma_rows, conds = builder(ring, sorted(spec.braid_types))
    else:
        names = rho_params + _type_params(sigma_stems, spec.c)
        ring = PolyRing(tuple(names))
        rho_block_rows, sigma_rows, conds = builder(ring, spec.c)

    rho_block = (
        Matrix.from_rows(ring, rho_block_rows) if rho_block_rows is not None else None
    )
    sigma_blocks = {t: Matrix.from_rows(ring, rows) for t, rows in sigma_rows.items()}
    rep = LocalRep(
        name=name,
        spec=spec,
        block_size=k,
        degree=spec.n + k - 2,
        ring=ring,
        params=tuple(names),
        side_conditions=tuple(ring.rf(x) for x in conds),
        rho_block=rho_block,
        sigma_blocks=sigma_blocks,
    )
    if params == "symbolic":
        return rep
    if not isinstance(params, dict):
        raise TypeError("params must be 'symbolic' or a full assignment dict")
    return specialize(rep, params)


def specialize(rep: LocalRep, assignment: dict) -> LocalRep:
    """Evaluate every block at a full parameter point (side conditions checked)."""
    point = {k: _as_gauss(v) for k, v in assignment.items()}
    unknown = set(point) - set(rep.params)
    if unknown:
        raise ValueError(f"unknown parameters {sorted(unknown)} for {rep.name}")
    for cond in rep.side_conditions:
        if cond.evaluate(point).is_zero():
            raise ValueError(
                f"assignment violates side condition {cond} != 0 for {rep.name}"
            )
    rho_block = rep.rho_block.evaluate(point) if rep.rho_block is not None else None
    sigma_blocks = {t: b.evaluate(point) for t, b in rep.sigma_blocks.items()}
    return LocalRep(
        name=rep.name,
        spec=rep.spec,
        block_size=rep.block_size,
        degree=rep.degree,
        ring=rep.ring,
        params=rep.params,
        side_conditions=rep.side_conditions,
        rho_block=rho_block,
        sigma_blocks=sigma_blocks,
        assignment=point,
    )


def _as_gauss(v) -> GaussianRational:
    if isinstance(v, GaussianRational):
        return v
    return GaussianRational(v)


def eval_word(rep: LocalRep, w: Word) -> Matrix:
    """Image of a word: the product of embedded generator matrices in order."""
    out = Matrix.identity(rep.ring, rep.degree)
    for g, e in w.letters:
        out = out * rep.matrix(g, e)
    return out


@dataclass
class ConjugationWitness:
    """A successful equivalence: B(g) = Q^-1 A(g) Q for every generator.

    ``binding`` records how B's bare parameters read in A's ring after
    conjugation (the parameter relabeling the witness induces).
    """

    q: RatFunc
    Q: Matrix
    binding: dict[str, RatFunc]

    def __str__(self):
        pairs = ", ".join(f"{k} -> {v}" for k, v in sorted(self.binding.items()))
        return f"Q = diag(1, q, q^2, ...) with q = {self.q}; binding: {pairs or 'none'}"


def _conjugate_block(block: Matrix, q: RatFunc) -> Matrix:
    """Q^-1 (block at any position) Q for geometric Q = diag(q^0, q^1, ...).

    Because Q is geometric, conjugation scales entry (a, b) by q^(b-a)
    uniformly at every embedding position, so it acts block-wise.
    """
    k = block.nrows
    rows = []
    for a in range(k):
        rows.append(
            tuple(block.rows[a][b] * q ** (b - a) for b in range(k))
        )
    return Matrix(block.ring, tuple(rows))


def _inject(rf: RatFunc, target: PolyRing) -> RatFunc | None:
    """Re-express a rational function in another ring by variable name."""
    names = set(rf.num.variables()) | set(rf.den.variables())
    if not names <= set(target.vars):
        return None
    mapping = {v: target.rf(v) for v in names}
    num = rf.num.substitute(mapping, target)
    den = rf.den.substitute(mapping, target)
    return num / den


def _match_blocks(
    a_conj: Matrix, b: Matrix, target: PolyRing, binding: dict[str, RatFunc]
) -> bool:
    for ra, rb in zip(a_conj.rows, b.rows):
        for ea, eb in zip(ra, rb):
            v = eb.as_variable()
            if v is not None:
                bound = binding.get(v)
                if bound is None:
                    binding[v] = ea
                elif bound != ea:
                    return False
                continue
            if eb.is_constant():
                if not (ea.is_constant() and ea == target.rf(eb.constant_value())):
                    return False
                continue
            img = _inject(eb, target)
            if img is None or img != ea:
                return False
    return True


def conjugation_equivalence(
    rep_a: LocalRep, rep_b: LocalRep
) -> ConjugationWitness | None:
    """Search for Q = diag(1, q, ..., q^(m-1)) with B = Q^-1 A Q generator-wise.

    Candidate ratios q are 1 and the inverses of A's rho-parameters (the
    shapes that arise for this family zoo).  B's entries are compared after
    conjugation: bare parameters of B bind to whatever A-expression lands in
    that slot (consistently across all generators); composite or constant
    entries must match exactly.  The returned binding is total on B's
    parameters (shared names bind to themselves).  Returns None when no
    candidate works.
    """
    if rep_a.spec != rep_b.spec or rep_a.block_size != rep_b.block_size:
        raise ValueError("representations live over different groups or block sizes")
    if (rep_a.rho_block is None) != (rep_b.rho_block is None):
        raise ValueError("one representation lacks a virtual block")
    if sorted(rep_a.sigma_blocks) != sorted(rep_b.sigma_blocks):
        raise ValueError("crossing-type coverage differs")
    ring = rep_a.ring
    candidates = [ring.rf(1)]
    for p in rep_a.params:
        if p.startswith("r"):
            candidates.append(1 / ring.rf(p))
    for q in candidates:
        binding: dict[str, RatFunc] = {}
        ok = True
        pairs = []
        if rep_a.rho_block is not None:
            pairs.append((rep_a.rho_block, rep_b.rho_block))
        for t in sorted(rep_a.sigma_blocks):
            pairs.append((rep_a.sigma_blocks[t], rep_b.sigma_blocks[t]))
        for blk_a, blk_b in pairs:
            if not _match_blocks(_conjugate_block(blk_a, q), blk_b, ring, binding):
                ok = False
                break
        if ok:
            for p in rep_b.params:
                if p not in binding and p in ring.vars:
                    binding[p] = ring.rf(p)
            m = rep_a.degree
            Q = Matrix.from_rows(
                ring,
                [[q ** a if a == b else 0 for b in range(m)] for a in range(m)],
            )
            return ConjugationWitness(q=q, Q=Q, binding=binding)
    return None
