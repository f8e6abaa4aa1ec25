"""Fibres of fibrations, orbifold bases, and weight data of Campana spaces.

A fibre over a codimension-one point enters as the multiset of multiplicities
of its dominating components (plus flags for an exceptional part or an empty
fibre).  Two numbers drive everything: the inf-multiplicity m = min of the
multiset and the gcd-multiplicity m+ = gcd of the multiset, both infinite
exactly for the empty fibre.  The fibre is inf-multiple when m >= 2 and
divisible when m+ >= 2; the orbifold base attaches coefficient 1 - 1/m.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import INFINITY
from .conditions import LogCondition, condition_element_union
from .semigroups import SemigroupUnion


@dataclass(frozen=True)
class FibreDecomposition:
    """Multiplicity multiset of the components of a fibre dominating the base point.

    `empty` marks an empty fibre (no components at all).  A nonempty fibre of
    a dominant morphism always has at least one dominating component, so
    nonempty decompositions with an empty multiset are rejected as malformed.
    """

    multiplicities: tuple[int, ...]
    has_exceptional_part: bool = False
    empty: bool = False

    def __init__(self, multiplicities: Iterable[int] = (), has_exceptional_part: bool = False,
                 empty: bool = False):
        mults = tuple(sorted(int(m) for m in multiplicities))
        for m in mults:
            if m < 1:
                raise ValueError(f"multiplicities must be >= 1, got {m}")
        if empty and (mults or has_exceptional_part):
            raise ValueError("an empty fibre has no components")
        if not empty and not mults:
            raise ValueError("a nonempty fibre needs at least one dominating component")
        object.__setattr__(self, "multiplicities", mults)
        object.__setattr__(self, "has_exceptional_part", bool(has_exceptional_part))
        object.__setattr__(self, "empty", bool(empty))


def fibre_multiplicities(fibre: FibreDecomposition):
    """(inf-multiplicity, gcd-multiplicity); (INFINITY, INFINITY) for the empty fibre."""
    if fibre.empty:
        return INFINITY, INFINITY
    return min(fibre.multiplicities), math.gcd(*fibre.multiplicities)


@dataclass(frozen=True)
class FibreClassification:
    inf_mult: object  # int or INFINITY
    gcd_mult: object
    coefficient: Fraction
    inf_multiple: bool
    divisible: bool


def classify_fibre(fibre: FibreDecomposition) -> FibreClassification:
    m, mp = fibre_multiplicities(fibre)
    coeff = Fraction(1) if m is INFINITY else 1 - Fraction(1, m)
    return FibreClassification(
        inf_mult=m,
        gcd_mult=mp,
        coefficient=coeff,
        inf_multiple=(m is INFINITY) or m >= 2,
        divisible=(mp is INFINITY) or mp >= 2,
    )


@dataclass(frozen=True)
class OrbifoldDivisorEntry:
    label: str
    classification: FibreClassification


@dataclass(frozen=True)
class OrbifoldBaseReport:
    entries: tuple[OrbifoldDivisorEntry, ...]

    def coefficient(self, label: str) -> Fraction:
        for e in self.entries:
            if e.label == label:
                return e.classification.coefficient
        raise KeyError(label)


def orbifold_base(fibres: Sequence[tuple[str, FibreDecomposition]]) -> OrbifoldBaseReport:
    """Classify the fibre over each queried divisor, preserving query order."""
    labels = [lbl for lbl, _ in fibres]
    if len(set(labels)) != len(labels):
        raise ValueError("divisor labels must be unique")
    return OrbifoldBaseReport(
        entries=tuple(OrbifoldDivisorEntry(lbl, classify_fibre(f)) for lbl, f in fibres)
    )


# -- weakly special fibration checklist ---------------------------------------


@dataclass(frozen=True)
class ChecklistReport:
    """Fibration checklist: certified iff all three conditions hold.

    Conditions 1 and 2 (the base is weakly special; weakly special fibres are
    dense) are geometry the caller must certify.  Condition 3 (no
    codimension-one fibre is divisible) is computed from the fibre data.
    """

    base_weakly_special: bool
    weakly_special_fibres_dense: bool
    no_divisible_fibre: bool
    divisible_witness: "str | None"

    @property
    def certified(self) -> bool:
        return self.base_weakly_special and self.weakly_special_fibres_dense and self.no_divisible_fibre


def weakly_special_checklist(
    base_weakly_special: bool,
    weakly_special_fibres_dense: bool,
    fibres: Sequence[tuple[str, FibreDecomposition]],
) -> ChecklistReport:
    witness = None
    for lbl, f in fibres:
        if classify_fibre(f).divisible:
            witness = lbl
            break
    return ChecklistReport(
        base_weakly_special=bool(base_weakly_special),
        weakly_special_fibres_dense=bool(weakly_special_fibres_dense),
        no_divisible_fibre=witness is None,
        divisible_witness=witness,
    )


# -- the x^a family ------------------------------------------------------------


@dataclass(frozen=True)
class XaClassification:
    a: tuple[int, ...]
    weakly_special: bool
    special: bool


def classify_xa_family(a: Iterable[int]) -> XaClassification:
    """Classify the complement of the hypersurface x1^a1 ... xn^an = 1 in affine space.

    Requires 1 <= a1 <= ... <= an with gcd 1 (otherwise the hypersurface is
    non-reduced and the family is not considered here).  The variety is always
    weakly special; it is special exactly when a1 = 1.
    """
    t = tuple(int(x) for x in a)
    if not t:
        raise ValueError("exponent tuple is empty")
    if any(x < 1 for x in t):
        raise ValueError(f"exponents must be positive, got {t}")
    if list(t) != sorted(t):
        raise ValueError(f"exponents must be sorted ascending, got {t}")
    if math.gcd(*t) != 1:
        raise ValueError(f"exponents must be coprime overall, gcd = {math.gcd(*t)}")
    return XaClassification(a=t, weakly_special=True, special=(t[0] == 1))


# -- Kodaira starred fibres ----------------------------------------------------


class KodairaStarredType(enum.Enum):
    II_STAR = "II*"
    III_STAR = "III*"
    IV_STAR = "IV*"


# component multiplicities from the Kodaira-Neron classification tables
KODAIRA_MULTIPLICITIES: dict[KodairaStarredType, tuple[int, ...]] = {
    KodairaStarredType.II_STAR: (1, 2, 3, 4, 5, 6, 4, 3, 2),
    KodairaStarredType.III_STAR: (1, 2, 3, 4, 3, 2, 1, 2),
    KodairaStarredType.IV_STAR: (1, 1, 1, 2, 2, 2, 3),
}


@dataclass(frozen=True)
class KodairaRemoval:
    type: KodairaStarredType
    removed_components: int
    fibre: FibreDecomposition
    classification: FibreClassification


def kodaira_reduced_removal(t: "KodairaStarredType | str") -> KodairaRemoval:
    """Drop the multiplicity-one components of a starred fibre; classify the rest.

    Only II*, III*, IV* are meaningful here: among complete Kodaira fibres only
    the multiple fibres (type mI_n) are inf-multiple, so every other type needs
    this surgery to produce one, and for these three the result is always an
    inf-multiple, non-divisible fibre with inf-multiplicity two.
    """
    if isinstance(t, str):
        try:
            t = KodairaStarredType(t.strip())
        except ValueError:
            raise ValueError(
                f"unsupported Kodaira type {t!r}: among complete Kodaira fibres only the "
                "multiple fibres mI_n are inf-multiple; reduced-component removal is "
                "implemented for the starred types II*, III*, IV*"
            ) from None
    mults = KODAIRA_MULTIPLICITIES[t]
    kept = tuple(m for m in mults if m > 1)
    fibre = FibreDecomposition(kept)
    return KodairaRemoval(
        type=t,
        removed_components=len(mults) - len(kept),
        fibre=fibre,
        classification=classify_fibre(fibre),
    )


# -- weight and lattice data of Campana spaces ---------------------------------


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def row_hnf(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form: positive pivots, entries above reduced."""
    mat = [list(map(int, r)) for r in rows]
    if not mat:
        return ()
    nrows, ncols = len(mat), len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, nrows):
            while mat[i][c] != 0:
                q = mat[r][c] // mat[i][c]
                mat[r] = [x - q * y for x, y in zip(mat[r], mat[i])]
                mat[r], mat[i] = mat[i], mat[r]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[r])]
        r += 1
    return tuple(tuple(row) for row in mat[:r])


@dataclass(frozen=True)
class CampanaWeightData:
    """Weight vector a, the kernel lattice of v -> a.v, and intersection strata.

    kernel_basis is the (r-1) x r Hermite normal form basis of
    {v in Z^r : a.v = 0}; splitting is a vector with a.splitting = 1 and is
    present exactly when gcd(a) = 1.  strata lists 1-based index pairs lying
    in distinct blocks.
    """

    a: tuple[int, ...]
    block_sizes: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]
    splitting: "tuple[int, ...] | None"
    strata: tuple[tuple[int, int], ...]
    inf_mult: int
    gcd_mult: int


def campana_weights(a: Iterable[int], block_sizes: "Iterable[int] | None" = None) -> CampanaWeightData:
    av = tuple(int(x) for x in a)
    if not av:
        raise ValueError("weight tuple is empty")
    if any(x < 1 for x in av):
        raise ValueError(f"weights must be positive, got {av}")
    r = len(av)
    if block_sizes is None:
        sizes = (r,)
    else:
        sizes = tuple(int(s) for s in block_sizes)
        if any(s < 1 for s in sizes) or sum(sizes) != r:
            raise ValueError(f"block sizes {sizes} do not partition {r} indices")

    # sequential Euclid: maintain c with a.c = g over the processed prefix
    g = av[0]
    c = [1] + [0] * (r - 1)
    kernel_rows: list[list[int]] = []
    for i in range(1, r):
        gi, s, t = _exgcd(g, av[i])
        row = [(av[i] // gi) * x for x in c]
        row[i] -= g // gi
        kernel_rows.append(row)
        c = [s * x for x in c]
        c[i] += t
        g = gi

    basis = row_hnf(kernel_rows)
    if len(basis) != r - 1:
        raise AssertionError("kernel basis lost rank during normalization")

    block_of = []
    for bi, size in enumerate(sizes):
        block_of.extend([bi] * size)
    strata = tuple(
        (i + 1, j + 1)
        for i in range(r)
        for j in range(i + 1, r)
        if block_of[i] != block_of[j]
    )

    return CampanaWeightData(
        a=av,
        block_sizes=sizes,
        kernel_basis=basis,
        splitting=tuple(c) if g == 1 else None,
        strata=strata,
        inf_mult=min(av),
        gcd_mult=g,
    )


@dataclass(frozen=True)
class CampanaSpaceReport:
    """Torus-rank / weight / fibre data of the model space attached to a condition."""

    atoms_per_block: tuple[tuple[int, ...], ...]
    a: tuple[int, ...]
    torus_rank: int
    weights: CampanaWeightData
    fibre: FibreDecomposition
    classification: FibreClassification

    @property
    def coefficient(self) -> Fraction:
        return self.classification.coefficient

    @property
    def divisible(self) -> bool:
        return self.classification.divisible


def campana_space_report(cond) -> CampanaSpaceReport:
    """Atoms, weight lattice, and orbifold data for a finite multiplicity condition.

    The weight tuple is the per-block concatenation of atoms; the associated
    fibre has exactly those multiplicities.  Log conditions have no finite
    multiplicities and are rejected.
    """
    if isinstance(cond, LogCondition):
        raise ValueError("a log condition has no Campana space model")
    union: SemigroupUnion = condition_element_union(cond)
    atoms = union.atoms_per_block()
    flat = tuple(x for blk in atoms for x in blk)
    if not flat:
        raise ValueError("condition accepts no finite multiplicity")
    sizes = tuple(len(blk) for blk in atoms if blk)
    weights = campana_weights(flat, sizes)
    fibre = FibreDecomposition(flat)
    return CampanaSpaceReport(
        atoms_per_block=atoms,
        a=flat,
        torus_rank=len(flat),
        weights=weights,
        fibre=fibre,
        classification=classify_fibre(fibre),
    )


# -- fibre JSON ----------------------------------------------------------------


def fibre_to_json_obj(label: str, fibre: FibreDecomposition) -> dict:
    return {
        "divisor": label,
        "mults": list(fibre.multiplicities),
        "exceptional": fibre.has_exceptional_part,
        "empty": fibre.empty,
    }


def fibre_from_json_obj(obj: Mapping) -> tuple[str, FibreDecomposition]:
    return str(obj["divisor"]), FibreDecomposition(
        multiplicities=obj.get("mults", []),
        has_exceptional_part=obj.get("exceptional", False),
        empty=obj.get("empty", False),
    )
