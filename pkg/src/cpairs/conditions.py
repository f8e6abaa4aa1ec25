"""Multiplicity conditions on divisors and point checks against them.

A pair assigns each divisor label one condition on intersection
multiplicities: `AtLeast(m)` (multiplicity at least m), `DivisibleBy(m)`,
`UnionCondition` (membership in a finite union of numerical semigroups,
with block structure retained for configuration checks), or `LOG`
(the point must stay away from the divisor entirely).

Points enter as valuation vectors: per divisor either "contained in the
divisor" or a finite map prime -> multiplicity >= 1.  Verdicts always carry
machine-readable witnesses (failing prime, support flags, block assignment).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import INFINITY, is_probable_prime
from .semigroups import (
    NumericalSemigroup,
    SemigroupUnion,
    format_union,
    parse_union,
)


@dataclass(frozen=True)
class AtLeast:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"AtLeast needs m >= 1, got {self.m}")


@dataclass(frozen=True)
class DivisibleBy:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"DivisibleBy needs m >= 1, got {self.m}")


@dataclass(frozen=True)
class UnionCondition:
    union: SemigroupUnion


@dataclass(frozen=True)
class LogCondition:
    """Infinite multiplicity: the divisor must be avoided altogether."""


LOG = LogCondition()

MultCondition = "AtLeast | DivisibleBy | UnionCondition | LogCondition"


def condition_element_union(cond) -> SemigroupUnion:
    """The set of accepted finite multiplicities, as a semigroup union."""
    if isinstance(cond, AtLeast):
        return SemigroupUnion([NumericalSemigroup.from_lower_bound(cond.m)])
    if isinstance(cond, DivisibleBy):
        return SemigroupUnion([NumericalSemigroup([cond.m])])
    if isinstance(cond, UnionCondition):
        return cond.union
    if isinstance(cond, LogCondition):
        return SemigroupUnion([NumericalSemigroup()])
    raise TypeError(f"not a multiplicity condition: {cond!r}")


def condition_inf(cond):
    """Smallest accepted finite multiplicity; INFINITY when none exists."""
    m = condition_element_union(cond).min_element()
    return INFINITY if m is None else m


def condition_accepts(cond, mult: int) -> bool:
    if isinstance(cond, LogCondition):
        return False
    return condition_element_union(cond).contains(mult)


def cpair_coefficient(cond) -> Fraction:
    """Coefficient 1 - 1/m of the associated divisor (1 when m is infinite)."""
    m = condition_inf(cond)
    if m is INFINITY:
        return Fraction(1)
    return 1 - Fraction(1, m)


# -- pair specifications -----------------------------------------------------


@dataclass(frozen=True)
class CPairSpec:
    """Ordered divisor labels, each with its multiplicity condition."""

    divisors: tuple[tuple[str, object], ...]

    def __init__(self, divisors: Iterable[tuple[str, object]]):
        entries = tuple((str(lbl), cond) for lbl, cond in divisors)
        seen = set()
        for lbl, cond in entries:
            if lbl in seen:
                raise ValueError(f"duplicate divisor label {lbl!r}")
            seen.add(lbl)
            condition_element_union(cond)  # type check
        object.__setattr__(self, "divisors", entries)

    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.divisors)

    def condition(self, label: str):
        for lbl, cond in self.divisors:
            if lbl == label:
                return cond
        raise KeyError(label)


def parse_condition(text: str):
    """Parse ">=m" | "div m" | "inf" | "union <...>|<...>"."""
    s = text.strip()
    if s == "inf":
        return LOG
    if s.startswith(">="):
        return AtLeast(int(s[2:].strip()))
    if s.startswith("div"):
        return DivisibleBy(int(s[3:].strip()))
    if s.startswith("union"):
        return UnionCondition(parse_union(s[5:].strip()))
    raise ValueError(f"cannot parse multiplicity condition: {text!r}")


def format_condition(cond) -> str:
    if isinstance(cond, LogCondition):
        return "inf"
    if isinstance(cond, AtLeast):
        return f">={cond.m}"
    if isinstance(cond, DivisibleBy):
        return f"div {cond.m}"
    if isinstance(cond, UnionCondition):
        return f"union {format_union(cond.union)}"
    raise TypeError(f"not a multiplicity condition: {cond!r}")


def parse_pair_spec(text: str) -> CPairSpec:
    """Parse "label: cond; label: cond" (semicolon-separated entries)."""
    entries = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        label, colon, cond = chunk.partition(":")
        if not colon:
            raise ValueError(f"pair entry needs 'label: condition', got {chunk!r}")
        entries.append((label.strip(), parse_condition(cond)))
    if not entries:
        raise ValueError("pair specification is empty")
    return CPairSpec(entries)


def format_pair_spec(spec: CPairSpec) -> str:
    return "; ".join(f"{lbl}: {format_condition(c)}" for lbl, c in spec.divisors)


# -- valuation vectors -------------------------------------------------------


@dataclass(frozen=True)
class DivisorValuations:
    """Local data of a point along one divisor.

    Either the point is contained in the divisor (`contained=True`, no finite
    multiplicities), or it meets the divisor with multiplicity mults[p] >= 1
    at finitely many primes p (primes with multiplicity 0 are omitted).
    """

    contained: bool = False
    mults: tuple[tuple[int, int], ...] = ()

    def __init__(self, contained: bool = False, mults: Mapping[int, int] | Iterable = ()):
        pairs = tuple(sorted((int(p), int(m)) for p, m in
                             (mults.items() if isinstance(mults, Mapping) else mults)))
        if contained and pairs:
            raise ValueError("a contained point carries no finite multiplicities")
        last = 1
        for p, m in pairs:
            if not is_probable_prime(p):
                raise ValueError(f"multiplicity key {p} is not prime")
            if p <= last:
                raise ValueError(f"duplicate prime {p} in valuation data")
            if m < 1:
                raise ValueError(f"multiplicities must be >= 1, got {m} at {p}")
            last = p
        object.__setattr__(self, "contained", bool(contained))
        object.__setattr__(self, "mults", pairs)

    def to_json_obj(self) -> dict:
        return {"contained": self.contained, "mults": [[p, m] for p, m in self.mults]}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "DivisorValuations":
        return cls(contained=obj.get("contained", False),
                   mults=[(p, m) for p, m in obj.get("mults", [])])


ValuationVector = "Mapping[str, DivisorValuations]"


def vector_to_json_obj(vec: Mapping[str, DivisorValuations]) -> dict:
    return {lbl: dv.to_json_obj() for lbl, dv in vec.items()}


def vector_from_json_obj(obj: Mapping) -> dict[str, DivisorValuations]:
    return {str(lbl): DivisorValuations.from_json_obj(dv) for lbl, dv in obj.items()}


# -- point verdicts ----------------------------------------------------------


@dataclass(frozen=True)
class DivisorVerdict:
    label: str
    passed: bool
    in_support: bool = False
    witness_prime: "int | None" = None


@dataclass(frozen=True)
class PointVerdict:
    accepted: bool
    divisors: tuple[DivisorVerdict, ...]

    @property
    def flags(self) -> tuple[str, ...]:
        return ("in_support",) if any(d.in_support for d in self.divisors) else ()

    def witness(self) -> "int | None":
        """Smallest failing prime across divisors, when one exists."""
        ps = [d.witness_prime for d in self.divisors if d.witness_prime is not None]
        return min(ps) if ps else None


def _check_divisor(label: str, cond, data: DivisorValuations) -> DivisorVerdict:
    if isinstance(cond, LogCondition):
        if data.contained:
            return DivisorVerdict(label, passed=False, in_support=True)
        for p, m in data.mults:
            if m >= 1:
                return DivisorVerdict(label, passed=False, witness_prime=p)
        return DivisorVerdict(label, passed=True)
    if data.contained:
        # supported convention: a point inside the divisor satisfies any finite
        # condition, but the verdict is flagged so callers can filter it out
        return DivisorVerdict(label, passed=True, in_support=True)
    union = condition_element_union(cond)
    for p, m in data.mults:
        if not union.contains(m):
            return DivisorVerdict(label, passed=False, witness_prime=p)
    return DivisorVerdict(label, passed=True)


def _check_point(spec: CPairSpec, vec: Mapping[str, DivisorValuations], allowed) -> PointVerdict:
    if set(vec.keys()) != set(spec.labels()):
        raise ValueError(
            f"valuation vector labels {sorted(vec.keys())} do not match pair labels {sorted(spec.labels())}"
        )
    for lbl, cond in spec.divisors:
        if allowed is not None and not isinstance(cond, (*allowed, LogCondition)):
            raise ValueError(f"divisor {lbl!r}: condition {format_condition(cond)!r} not allowed here")
    verdicts = tuple(_check_divisor(lbl, cond, vec[lbl]) for lbl, cond in spec.divisors)
    return PointVerdict(accepted=all(v.passed for v in verdicts), divisors=verdicts)


def check_campana_point(spec: CPairSpec, vec: Mapping[str, DivisorValuations]) -> PointVerdict:
    """Every finite condition must be AtLeast; multiplicities >= m at all primes."""
    return _check_point(spec, vec, allowed=(AtLeast,))


def check_darmon_point(spec: CPairSpec, vec: Mapping[str, DivisorValuations]) -> PointVerdict:
    """Every finite condition must be DivisibleBy; multiplicities divisible by m."""
    return _check_point(spec, vec, allowed=(DivisibleBy,))


def check_generalized_point_dedekind(spec: CPairSpec, vec: Mapping[str, DivisorValuations]) -> PointVerdict:
    """Multiplicities must lie in each condition's element set.

    On a Dedekind base, distinct primes are disjoint, so the block structure
    of a union is immaterial and membership in the element set is the whole
    condition.  Any condition kind is accepted; AtLeast/DivisibleBy behave as
    the unions they generate, which makes the campana/darmon agreement
    invariants directly testable.
    """
    return _check_point(spec, vec, allowed=None)


def cpair_divisor(spec: CPairSpec) -> list[tuple[str, Fraction]]:
    """Per-label coefficients 1 - 1/m of the associated orbifold divisor."""
    return [(lbl, cpair_coefficient(cond)) for lbl, cond in spec.divisors]


# -- divisor configurations (non-Dedekind bases) ------------------------------


@dataclass(frozen=True)
class DivisorConfiguration:
    """Finitely many prime-divisor components with multiplicities and crossings.

    Vertices are component ids with a multiplicity each; edges record which
    components intersect.  Self-loops are rejected; edges must reference
    declared ids.
    """

    components: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str], ...]

    def __init__(self, components: Iterable[tuple[str, int]], edges: Iterable[tuple[str, str]] = ()):
        comps = tuple((str(c), int(m)) for c, m in components)
        ids = [c for c, _ in comps]
        if len(set(ids)) != len(ids):
            raise ValueError("component ids must be unique")
        for c, m in comps:
            if m < 1:
                raise ValueError(f"component {c!r} needs multiplicity >= 1, got {m}")
        known = set(ids)
        es = []
        for a, b in edges:
            a, b = str(a), str(b)
            if a == b:
                raise ValueError(f"self-loop at component {a!r}")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a!r}, {b!r}) references unknown component")
            es.append((a, b))
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "edges", tuple(es))

    def connected_components(self) -> list[tuple[str, ...]]:
        """Vertex sets of the intersection graph, each sorted, in first-seen order."""
        adj: dict[str, set[str]] = {c: set() for c, _ in self.components}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen: set[str] = set()
        out = []
        for c, _ in self.components:
            if c in seen:
                continue
            stack, comp = [c], []
            seen.add(c)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(tuple(sorted(comp)))
        return out

    def multiplicity(self, cid: str) -> int:
        for c, m in self.components:
            if c == cid:
                return m
        raise KeyError(cid)

    def to_json_obj(self) -> dict:
        return {"components": [[c, m] for c, m in self.components],
                "edges": [[a, b] for a, b in self.edges]}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "DivisorConfiguration":
        return cls(components=[(c, m) for c, m in obj["components"]],
                   edges=[(a, b) for a, b in obj.get("edges", [])])


@dataclass(frozen=True)
class ConfigurationVerdict:
    accepted: bool
    # (component vertex set, 1-based block index) for each connected component
    assignment: "tuple[tuple[tuple[str, ...], int], ...] | None" = None
    failing_component: "tuple[str, ...] | None" = None


def check_generalized_configuration(union: SemigroupUnion, cfg: DivisorConfiguration) -> ConfigurationVerdict:
    """Assign each connected component to a block containing all its multiplicities.

    Components are independent: blocks may be reused.  Accepted verdicts carry
    the assignment (first admissible block per component); rejections name the
    first component admitting no block.
    """
    assignment = []
    for comp in cfg.connected_components():
        mults = [cfg.multiplicity(c) for c in comp]
        block = None
        for i, b in enumerate(union.blocks, start=1):
            if all(b.contains(m) for m in mults):
                block = i
                break
        if block is None:
            return ConfigurationVerdict(accepted=False, failing_component=comp)
        assignment.append((comp, block))
    return ConfigurationVerdict(accepted=True, assignment=tuple(assignment))
