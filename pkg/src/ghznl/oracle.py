"""Exact decision procedure for orthogonality-preserving POVMs.

For a bipartition X|YZ the joint YZ measurement element E must satisfy
<phi| I_X (x) E |psi> = 0 for every ordered pair of distinct states.  These
are homogeneous linear equations in the P^2 entries of E (P = product of the
two non-cut dimensions).  The set admits only trivial orthogonality-preserving
POVMs on that cut iff the solution space is exactly the span of the identity,
i.e. has dimension 1: the space is closed under conjugate-transpose, so any
extra dimension yields a Hermitian non-identity solution H, and I +/- eps*H
are then valid nontrivial POVM elements.

Normalization factors 1/sqrt(w) are dropped from the rows (they scale
homogeneous equations), which keeps the exact path inside Gaussian rationals
whenever every tuple weight divides 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arithmetic import GR_ONE, GaussianRational
from .state_model import (
    DEFAULT_TOL,
    Coefficient,
    Partition,
    StateSet,
    check_mutual_orthogonality,
    expand_set,
)

RESOURCE_GUARD_UNKNOWNS = 20_000


class ResourceGuardError(RuntimeError):
    """System exceeds the desk-scale unknown budget and no override was given."""


@dataclass
class ConstraintSystem:
    partition: Partition
    kept_dims: tuple[int, int]
    n_states: int
    rows: list[dict[int, Coefficient]]
    exact: bool
    skipped_pairs: int = 0

    @property
    def side(self) -> int:
        """Dimension P of the joint non-cut space; E is P x P."""
        return self.kept_dims[0] * self.kept_dims[1]

    @property
    def n_unknowns(self) -> int:
        return self.side * self.side


def build_constraints(
    S: StateSet,
    p: Partition,
    exact: Optional[bool] = None,
    tol: float = DEFAULT_TOL,
    guard: int = RESOURCE_GUARD_UNKNOWNS,
    force: bool = False,
    nonorthogonal: str = "reject",
) -> ConstraintSystem:
    """One row per ordered pair of distinct, mutually orthogonal states of S.

    A non-orthogonal pair carries no orthogonality to preserve, so it never
    produces a row.  By default a set with any such pair is rejected outright;
    nonorthogonal='skip' proceeds and records how many ordered pairs were
    skipped (needed for the even-d family at d = 4, whose published kets
    collide and break orthogonality).
    """
    if nonorthogonal not in ("reject", "skip"):
        raise ValueError(f"nonorthogonal must be 'reject' or 'skip'")
    if exact is None:
        exact = S.exact_capable()
    da, db = p.kept_dims(S.dims)
    n_unknowns = (da * db) ** 2
    if n_unknowns > guard and not force:
        raise ResourceGuardError(
            f"{n_unknowns} unknowns on cut {p.value} exceeds the guard of "
            f"{guard}; pass force/--force to proceed"
        )
    violations = check_mutual_orthogonality(S, tol)
    if violations and nonorthogonal == "reject":
        raise ValueError(
            f"state set is not mutually orthogonal (first violations: "
            f"{violations[:5]})"
        )
    bad_pairs = {(a, b) for a, b in violations} | {(b, a) for a, b in violations}
    states = expand_set(S, exact=exact)
    P = da * db
    # per state: cut coordinate -> [(joint kept index, coefficient)]
    by_cut: list[dict[int, list[tuple[int, Coefficient]]]] = []
    axis = p.cut_axis
    ka, kb = p.kept_axes
    for s in states:
        m: dict[int, list[tuple[int, Coefficient]]] = {}
        for ket, c in s.coeffs.items():
            m.setdefault(ket[axis], []).append((ket[ka] * db + ket[kb], c))
        by_cut.append(m)
    rows: list[dict[int, Coefficient]] = []
    skipped = 0
    for a, phi in enumerate(by_cut):
        for b, psi in enumerate(by_cut):
            if a == b:
                continue
            if (a, b) in bad_pairs:
                skipped += 1
                continue
            row: dict[int, Coefficient] = {}
            for x, left in phi.items():
                right = psi.get(x)
                if right is None:
                    continue
                for ia, ca in left:
                    cc = ca.conjugate()
                    for ib, cb in right:
                        u = ia * P + ib
                        v = cc * cb
                        prev = row.get(u)
                        row[u] = v if prev is None else prev + v
            rows.append({u: v for u, v in row.items() if v})
    return ConstraintSystem(p, (da, db), len(states), rows, exact, skipped)


class SparseEliminator:
    """Incremental reduced row echelon form over sparse rows.

    Pivot rows never contain other pivot columns (full back-substitution), so
    reducing an incoming row terminates after at most two sweeps.
    """

    def __init__(self, exact: bool, tol: float = DEFAULT_TOL):
        self.exact = exact
        self.tol = tol
        self.pivots: dict[int, dict[int, Coefficient]] = {}
        self._col_index: dict[int, set[int]] = {}
        self.warning = False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _zero(self, v: Coefficient, thresh: float) -> bool:
        if self.exact:
            return not v
        return abs(v) <= thresh

    def add_row(self, row: dict[int, Coefficient]) -> None:
        row = dict(row)
        thresh = 0.0
        if not self.exact and row:
            thresh = self.tol * max(1.0, max(abs(v) for v in row.values()))
        while True:
            hit = [c for c in row if c in self.pivots]
            if not hit:
                break
            for c in hit:
                f = row.pop(c, None)
                if f is None or self._zero(f, thresh):
                    continue
                for col, v in self.pivots[c].items():
                    if col == c:
                        continue
                    cur = row.get(col)
                    nv = -(f * v) if cur is None else cur - f * v
                    if self._zero(nv, thresh):
                        row.pop(col, None)
                    else:
                        row[col] = nv
        if not self.exact:
            dropped = [v for v in row.values() if abs(v) <= thresh]
            if any(abs(v) > thresh / 10 for v in dropped):
                self.warning = True
            row = {c: v for c, v in row.items() if abs(v) > thresh}
        else:
            row = {c: v for c, v in row.items() if v}
        if not row:
            return
        if self.exact:
            pc = min(row)
        else:
            pc = max(row, key=lambda c: abs(row[c]))
            if abs(row[pc]) < 10 * thresh:
                self.warning = True
        piv = row.pop(pc)
        one = piv / piv
        newrow = {pc: one}
        newrow.update({col: v / piv for col, v in row.items()})
        # back-substitute into existing pivot rows containing pc
        for p in list(self._col_index.get(pc, ())):
            prow = self.pivots[p]
            f = prow.pop(pc)
            self._col_index[pc].discard(p)
            for col, v in newrow.items():
                if col == pc:
                    continue
                cur = prow.get(col)
                nv = -(f * v) if cur is None else cur - f * v
                if self._zero(nv, thresh):
                    if cur is not None:
                        prow.pop(col)
                        self._col_index[col].discard(p)
                else:
                    if cur is None:
                        self._col_index.setdefault(col, set()).add(p)
                    prow[col] = nv
        self.pivots[pc] = newrow
        for col in newrow:
            if col != pc:
                self._col_index.setdefault(col, set()).add(pc)

    def residuals_zero(self, vec: dict[int, Coefficient]) -> bool:
        """True iff the vector satisfies every reduced equation."""
        for pc, prow in self.pivots.items():
            total = None
            for col, v in prow.items():
                x = vec.get(col)
                if x is None:
                    continue
                term = v * x
                total = term if total is None else total + term
            if total is None:
                continue
            if self.exact:
                if total:
                    return False
            elif abs(total) > self.tol * max(1.0, len(prow)):
                return False
        return True

    def nullspace_basis(self, n_unknowns: int) -> list[dict[int, Coefficient]]:
        basis = []
        for f in range(n_unknowns):
            if f in self.pivots:
                continue
            vec: dict[int, Coefficient] = {f: GR_ONE if self.exact else 1 + 0j}
            for pc in self._col_index.get(f, ()):
                vec[pc] = -self.pivots[pc][f]
            basis.append(vec)
        return basis


@dataclass
class NullspaceResult:
    dimension: int
    rank: int
    n_unknowns: int
    contains_identity: bool
    exact: bool
    tolerance: Optional[float]
    warning: bool
    side: int
    basis: Optional[list[dict[int, Coefficient]]] = None
    _eliminator: Optional[SparseEliminator] = field(default=None, repr=False)

    def in_nullspace(self, vec: dict[int, Coefficient]) -> bool:
        assert self._eliminator is not None
        return self._eliminator.residuals_zero(vec)


def identity_vector(side: int, exact: bool) -> dict[int, Coefficient]:
    one: Coefficient = GR_ONE if exact else 1 + 0j
    return {k * side + k: one for k in range(side)}


def dagger_vector(
    vec: dict[int, Coefficient], side: int
) -> dict[int, Coefficient]:
    """Conjugate transpose of a solution matrix given as a sparse vector."""
    out = {}
    for u, v in vec.items():
        r, c = divmod(u, side)
        out[c * side + r] = v.conjugate()
    return out


def nullspace(
    cs: ConstraintSystem, tol: float = DEFAULT_TOL, with_basis: bool = False
) -> NullspaceResult:
    """Dimension (and optionally a basis) of the solution space of cs."""
    elim = SparseEliminator(cs.exact, tol)
    for row in cs.rows:
        elim.add_row(row)
    dim = cs.n_unknowns - elim.rank
    ident = identity_vector(cs.side, cs.exact)
    result = NullspaceResult(
        dimension=dim,
        rank=elim.rank,
        n_unknowns=cs.n_unknowns,
        contains_identity=elim.residuals_zero(ident),
        exact=cs.exact,
        tolerance=None if cs.exact else tol,
        warning=elim.warning,
        side=cs.side,
        _eliminator=elim,
    )
    if with_basis:
        result.basis = elim.nullspace_basis(cs.n_unknowns)
    return result


@dataclass
class OracleVerdict:
    partition: Partition
    dimension: int
    contains_identity: bool
    trivial_only: bool
    exact: bool
    tolerance: Optional[float]
    warning: bool
    n_unknowns: int
    n_rows: int
    skipped_pairs: int = 0


def oracle_verdict(
    S: StateSet,
    p: Partition,
    exact: Optional[bool] = None,
    tol: float = DEFAULT_TOL,
    guard: int = RESOURCE_GUARD_UNKNOWNS,
    force: bool = False,
    nonorthogonal: str = "reject",
) -> OracleVerdict:
    """trivial-only iff the constraint nullspace is exactly span(identity)."""
    cs = build_constraints(
        S, p, exact=exact, tol=tol, guard=guard, force=force,
        nonorthogonal=nonorthogonal,
    )
    ns = nullspace(cs, tol=tol)
    return OracleVerdict(
        partition=p,
        dimension=ns.dimension,
        contains_identity=ns.contains_identity,
        trivial_only=ns.dimension == 1,
        exact=cs.exact,
        tolerance=ns.tolerance,
        warning=ns.warning,
        n_unknowns=cs.n_unknowns,
        n_rows=len(cs.rows),
        skipped_pairs=cs.skipped_pairs,
    )


def oracle_all(
    S: StateSet,
    exact: Optional[bool] = None,
    tol: float = DEFAULT_TOL,
    guard: int = RESOURCE_GUARD_UNKNOWNS,
    force: bool = False,
    nonorthogonal: str = "reject",
) -> dict[Partition, OracleVerdict]:
    """Strongest-nonlocal overall iff every partition reports trivial-only."""
    return {
        p: oracle_verdict(
            S, p, exact=exact, tol=tol, guard=guard, force=force,
            nonorthogonal=nonorthogonal,
        )
        for p in Partition
    }


def dump_system(cs: ConstraintSystem) -> str:
    """Sparse-triplet text dump: 'row unknown re im' per nonzero coefficient.

    Exact coefficients are printed as rational pairs 'p/q'; float ones as
    decimals.  Unknown index ((y,z),(y',z')) -> (y*db+z)*P + (y'*db+z').
    """
    da, db = cs.kept_dims
    lines = [
        f"# partition={cs.partition.value} kept_dims={da}x{db} "
        f"unknowns={cs.n_unknowns} rows={len(cs.rows)} "
        f"mode={'exact' if cs.exact else 'float'}",
        f"# unknown u = (y*{db}+z)*{cs.side} + (y'*{db}+z')",
    ]
    for r, row in enumerate(cs.rows):
        for u in sorted(row):
            v = row[u]
            if cs.exact:
                lines.append(f"{r} {u} {v.re} {v.im}")
            else:
                c = complex(v)
                lines.append(f"{r} {u} {c.real!r} {c.imag!r}")
    return "\n".join(lines) + "\n"
