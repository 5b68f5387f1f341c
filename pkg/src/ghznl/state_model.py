"""Core data model for tripartite GHZ-like state sets.

A state set is a list of weight-w tuples of computational kets; each tuple
expands into w mutually orthonormal states whose coefficients are the rows of
the w-dimensional Fourier matrix, scaled by 1/sqrt(w).  Validators cover every
hypothesis the connectivity theorems need: coordinate-distinctness ("special
set"), mutual orthogonality, plane containment, and genuine entanglement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence, Union

from .arithmetic import GaussianRational, exact_weight, root_of_unity

DEFAULT_TOL = 1e-9

Coefficient = Union[GaussianRational, complex]


class StateSetFormatError(ValueError):
    """Malformed state-set document, with a positional diagnostic."""


class Ket(NamedTuple):
    i: int
    j: int
    k: int


@dataclass(frozen=True)
class SystemDims:
    d1: int
    d2: int
    d3: int

    def __post_init__(self):
        for d in (self.d1, self.d2, self.d3):
            if not isinstance(d, int) or d < 2:
                raise ValueError(f"local dimensions must be integers >= 2, got {d}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.d1, self.d2, self.d3)

    def contains(self, ket: Ket) -> bool:
        return 0 <= ket.i < self.d1 and 0 <= ket.j < self.d2 and 0 <= ket.k < self.d3


class Partition(Enum):
    """Bipartition of the three parties: the named party versus the rest."""

    A = "A"
    B = "B"
    C = "C"

    @property
    def cut_axis(self) -> int:
        return {"A": 0, "B": 1, "C": 2}[self.value]

    @property
    def kept_axes(self) -> tuple[int, int]:
        """Axes of the two non-cut parties, in the paper's vertex order."""
        return {"A": (1, 2), "B": (2, 0), "C": (0, 1)}[self.value]

    def project(self, ket: Ket) -> tuple[int, int]:
        """Joint coordinates of the two non-cut parties."""
        a, b = self.kept_axes
        return (ket[a], ket[b])

    def kept_dims(self, dims: SystemDims) -> tuple[int, int]:
        a, b = self.kept_axes
        t = dims.as_tuple()
        return (t[a], t[b])

    def cut_dim(self, dims: SystemDims) -> int:
        return dims.as_tuple()[self.cut_axis]


@dataclass(frozen=True)
class GhzTuple:
    """w coordinately-different kets; expands to w GHZ-like states."""

    weight: int
    kets: tuple[Ket, ...]
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "kets", tuple(Ket(*k) for k in self.kets))
        if self.weight < 2:
            raise ValueError(f"tuple weight must be >= 2, got {self.weight}")
        if len(self.kets) != self.weight:
            raise ValueError(
                f"tuple declares weight {self.weight} but has {len(self.kets)} kets"
            )
        if len(set(self.kets)) != self.weight:
            raise ValueError(f"tuple kets must be distinct: {self.kets}")

    def is_coordinately_different(self) -> bool:
        """True iff each party's coordinates are pairwise distinct."""
        return all(
            len({ket[axis] for ket in self.kets}) == self.weight for axis in range(3)
        )


@dataclass(frozen=True)
class StateSet:
    dims: SystemDims
    tuples: tuple[GhzTuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(self.tuples))
        for idx, t in enumerate(self.tuples):
            if t.weight > min(self.dims.as_tuple()):
                raise ValueError(
                    f"tuple {idx}: weight {t.weight} exceeds min dimension"
                )
            for ket in t.kets:
                if not self.dims.contains(ket):
                    raise ValueError(
                        f"tuple {idx}: ket {tuple(ket)} out of bounds for dims "
                        f"{self.dims.as_tuple()}"
                    )

    @property
    def n_states(self) -> int:
        return sum(t.weight for t in self.tuples)

    def exact_capable(self) -> bool:
        """Exact arithmetic applies when every weight divides 4."""
        return all(exact_weight(t.weight) for t in self.tuples)

    def without_labels(self, prefixes: Sequence[str]) -> "StateSet":
        """Drop every tuple whose label starts with one of the prefixes."""
        kept = tuple(
            t
            for t in self.tuples
            if t.label is None or not any(t.label.startswith(p) for p in prefixes)
        )
        return StateSet(self.dims, kept)


@dataclass(frozen=True)
class StateVector:
    """Sparse pure state: amplitude(ket) = coeffs[ket] / sqrt(scale)."""

    dims: SystemDims
    coeffs: dict[Ket, Coefficient] = field(hash=False)
    scale: int = 1
    exact: bool = True

    def amplitude(self, ket: Ket) -> complex:
        c = self.coeffs.get(ket)
        if c is None:
            return 0j
        return complex(c) / math.sqrt(self.scale)

    def squared_norm_numerator(self):
        """Sum of |coeff|^2; the state is normalized iff this equals scale."""
        if self.exact:
            total = Fraction(0)
            for c in self.coeffs.values():
                total += c.re * c.re + c.im * c.im
            return total
        return sum(abs(c) ** 2 for c in self.coeffs.values())

    def is_normalized(self, tol: float = DEFAULT_TOL) -> bool:
        num = self.squared_norm_numerator()
        if self.exact:
            return num == self.scale
        return abs(num / self.scale - 1.0) <= tol


def expand_tuple(
    t: GhzTuple, dims: SystemDims, exact: Optional[bool] = None
) -> list[StateVector]:
    """The w states sum_m omega^{(m-1)n} |ket_m> / sqrt(w), n in Z_w."""
    for ket in t.kets:
        if not dims.contains(ket):
            raise ValueError(f"ket {tuple(ket)} out of bounds for {dims.as_tuple()}")
    if exact is None:
        exact = exact_weight(t.weight)
    states = []
    for n in range(t.weight):
        coeffs: dict[Ket, Coefficient] = {
            ket: root_of_unity(t.weight, (m) * n, exact)
            for m, ket in enumerate(t.kets)
        }
        states.append(StateVector(dims, coeffs, scale=t.weight, exact=exact))
    return states


def expand_set(S: StateSet, exact: Optional[bool] = None) -> list[StateVector]:
    """All expanded states of S, tuple by tuple, in Fourier-row order."""
    if exact is None:
        exact = S.exact_capable()
    out: list[StateVector] = []
    for t in S.tuples:
        out.extend(expand_tuple(t, S.dims, exact=exact))
    return out


def overlap_numerator(s1: StateVector, s2: StateVector) -> Coefficient:
    """Unscaled inner product: sum over shared kets of conj(c1) * c2."""
    if s1.dims != s2.dims:
        raise ValueError("inner product of states with different dims")
    if s1.exact and s2.exact:
        total: Coefficient = GaussianRational(0, 0)
        for ket, c in s1.coeffs.items():
            c2 = s2.coeffs.get(ket)
            if c2 is not None:
                total = total + c.conjugate() * c2
        return total
    return sum(
        complex(c).conjugate() * complex(s2.coeffs[ket])
        for ket, c in s1.coeffs.items()
        if ket in s2.coeffs
    )


def inner_product(s1: StateVector, s2: StateVector) -> complex:
    """<s1|s2> including the 1/sqrt(w) normalizations."""
    num = overlap_numerator(s1, s2)
    return complex(num) / math.sqrt(s1.scale * s2.scale)


def states_orthogonal(
    s1: StateVector, s2: StateVector, tol: float = DEFAULT_TOL
) -> bool:
    num = overlap_numerator(s1, s2)
    if s1.exact and s2.exact:
        return not bool(num)
    return abs(complex(num)) / math.sqrt(s1.scale * s2.scale) <= tol


def check_mutual_orthogonality(
    S: StateSet, tol: float = DEFAULT_TOL
) -> list[tuple[int, int]]:
    """Indices (in expansion order) of non-orthogonal state pairs; empty = pass."""
    states = expand_set(S)
    bad = []
    for a in range(len(states)):
        for b in range(a + 1, len(states)):
            if not states_orthogonal(states[a], states[b], tol):
                bad.append((a, b))
    return bad


def coordinate_set(S: StateSet) -> set[tuple[int, int, int]]:
    """All coordinate triples appearing in any tuple of S."""
    return {tuple(ket) for t in S.tuples for ket in t.kets}


def check_plane_containing(S: StateSet) -> Optional[tuple[int, int, int]]:
    """Lexicographically smallest (i0, j0, k0) whose three coordinate planes
    all lie inside the coordinate set, or None."""
    coords = coordinate_set(S)
    d1, d2, d3 = S.dims.as_tuple()
    i0 = next(
        (
            i
            for i in range(d1)
            if all((i, j, k) in coords for j in range(d2) for k in range(d3))
        ),
        None,
    )
    j0 = next(
        (
            j
            for j in range(d2)
            if all((i, j, k) in coords for i in range(d1) for k in range(d3))
        ),
        None,
    )
    k0 = next(
        (
            k
            for k in range(d3)
            if all((i, j, k) in coords for i in range(d1) for j in range(d2))
        ),
        None,
    )
    if i0 is None or j0 is None or k0 is None:
        return None
    return (i0, j0, k0)


def check_special_set(S: StateSet) -> list[int]:
    """Indices of tuples that are not coordinately different; empty = pass."""
    return [i for i, t in enumerate(S.tuples) if not t.is_coordinately_different()]


def _matrix_rank_at_least_2(rows: dict[int, dict[int, Coefficient]], exact: bool,
                            tol: float) -> bool:
    """Rank >= 2 for a sparse matrix given as row -> {col: value}."""
    pivot_rows: list[dict[int, Coefficient]] = []
    for row in rows.values():
        row = dict(row)
        for prow in pivot_rows:
            pc = next(iter(prow))
            if pc in row:
                f = row.pop(pc)
                for c, v in prow.items():
                    if c == pc:
                        continue
                    nv = row.get(c, None)
                    nv = (nv - f * v) if nv is not None else -(f * v)
                    if (not nv) if exact else abs(complex(nv)) <= tol:
                        row.pop(c, None)
                    else:
                        row[c] = nv
        if exact:
            row = {c: v for c, v in row.items() if v}
        else:
            row = {c: v for c, v in row.items() if abs(complex(v)) > tol}
        if row:
            pc = min(row)
            piv = row[pc]
            prow = {pc: piv / piv}
            prow.update({c: v / piv for c, v in row.items() if c != pc})
            pivot_rows.append(prow)
            if len(pivot_rows) >= 2:
                return True
    return False


def check_genuine_entanglement(s: StateVector, tol: float = DEFAULT_TOL) -> bool:
    """True iff the Schmidt rank is >= 2 across all three bipartitions."""
    if not s.is_normalized(tol):
        raise ValueError("check_genuine_entanglement requires a normalized state")
    for p in Partition:
        axis = p.cut_axis
        kept = p.kept_axes
        d_y = s.dims.as_tuple()[kept[1]]
        rows: dict[int, dict[int, Coefficient]] = {}
        for ket, c in s.coeffs.items():
            col = ket[kept[0]] * d_y + ket[kept[1]]
            rows.setdefault(ket[axis], {})[col] = c
        if not _matrix_rank_at_least_2(rows, s.exact, tol):
            return False
    return True


def genuine_entanglement_census(
    S: StateSet, tol: float = DEFAULT_TOL
) -> list[int]:
    """Indices (expansion order) of states failing genuine entanglement."""
    return [
        idx
        for idx, s in enumerate(expand_set(S))
        if not check_genuine_entanglement(s, tol)
    ]


def write_state_set(S: StateSet) -> str:
    """Serialize to the state-set document format (JSON, UTF-8)."""
    doc = {
        "dims": list(S.dims.as_tuple()),
        "tuples": [
            {
                "weight": t.weight,
                "kets": [list(k) for k in t.kets],
                **({"label": t.label} if t.label is not None else {}),
            }
            for t in S.tuples
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_state_set(text: str) -> StateSet:
    """Parse a state-set document, raising StateSetFormatError with positions."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateSetFormatError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise StateSetFormatError("top level must be an object")
    dims_raw = doc.get("dims")
    if (
        not isinstance(dims_raw, list)
        or len(dims_raw) != 3
        or not all(isinstance(d, int) for d in dims_raw)
    ):
        raise StateSetFormatError("dims: expected a list of 3 integers")
    try:
        dims = SystemDims(*dims_raw)
    except ValueError as e:
        raise StateSetFormatError(f"dims: {e}") from e
    tuples_raw = doc.get("tuples")
    if not isinstance(tuples_raw, list):
        raise StateSetFormatError("tuples: expected a list")
    tuples = []
    for idx, t in enumerate(tuples_raw):
        where = f"tuples[{idx}]"
        if not isinstance(t, dict):
            raise StateSetFormatError(f"{where}: expected an object")
        weight = t.get("weight")
        kets_raw = t.get("kets")
        label = t.get("label")
        if not isinstance(weight, int):
            raise StateSetFormatError(f"{where}: weight must be an integer")
        if not isinstance(kets_raw, list):
            raise StateSetFormatError(f"{where}: kets must be a list")
        if len(kets_raw) != weight:
            raise StateSetFormatError(
                f"{where}: weight {weight} but {len(kets_raw)} kets"
            )
        kets = []
        for kidx, k in enumerate(kets_raw):
            if (
                not isinstance(k, list)
                or len(k) != 3
                or not all(isinstance(x, int) for x in k)
            ):
                raise StateSetFormatError(
                    f"{where}.kets[{kidx}]: expected a list of 3 integers"
                )
            ket = Ket(*k)
            if not dims.contains(ket):
                raise StateSetFormatError(
                    f"{where}.kets[{kidx}]: ket {tuple(ket)} out of bounds for "
                    f"dims {dims.as_tuple()}"
                )
            kets.append(ket)
        if label is not None and not isinstance(label, str):
            raise StateSetFormatError(f"{where}: label must be a string")
        try:
            tuples.append(GhzTuple(weight, tuple(kets), label))
        except ValueError as e:
            raise StateSetFormatError(f"{where}: {e}") from e
    try:
        return StateSet(dims, tuple(tuples))
    except ValueError as e:
        raise StateSetFormatError(str(e)) from e
