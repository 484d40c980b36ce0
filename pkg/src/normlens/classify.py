"""Normal form classification and the preventing dependency partition.

A dependency prevents BCNF when its determinant is not a superkey of the
relation it projects into. That partition drives the completeness score:
attributes of non-preventing dependencies count toward completeness,
attributes of preventing dependencies count against it, and the two unions
are computed independently (an attribute may land in both).

Partial and transitive dependencies can be judged against different key
sets, so classification has two modes:

* PRIMARY: only the declared primary key matters. A partial dependency is a
  proper nonempty subset of the primary key determining an attribute outside
  it; a transitive dependency has a determinant disjoint from the primary
  key that is not a superkey and determines an attribute outside the key.
* STRICT: every candidate key matters and "non-prime" means belonging to no
  candidate key. This stronger reading can demote a relation PRIMARY
  accepts (a proper subset of any candidate key determining a non-prime
  attribute already blocks 2NF). STRICT is the only mode that enumerates
  candidate keys, so it is the only one that can hit the search cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .fd import DEFAULT_KEY_CAP, candidate_keys, closure, project_fds
from .model import FunctionalDependency, NormalForm, RelationSchema, normalize_fds


class ClassificationMode(Enum):
    PRIMARY = "primary"
    STRICT = "strict"


@dataclass(frozen=True)
class FDPartition:
    """Projected dependencies of one relation split by the superkey test.

    ``preventing`` and ``non_preventing`` together are exactly the relation's
    projected dependencies, in schema order. ``completeness_attributes`` is
    the union of all attributes of non-preventing dependencies,
    ``preventing_attributes`` the same for preventing ones; both are subsets
    of the heading, and they may overlap.
    """

    relation_name: str
    preventing: tuple[FunctionalDependency, ...]
    non_preventing: tuple[FunctionalDependency, ...]
    completeness_attributes: frozenset[str]
    preventing_attributes: frozenset[str]
    total_attributes: int

    @property
    def completeness_count(self) -> int:
        return len(self.completeness_attributes)

    @property
    def preventing_count(self) -> int:
        return len(self.preventing_attributes)


def partition_preventing(
    relation: RelationSchema, fds: Sequence[FunctionalDependency]
) -> FDPartition:
    """Split the schema's dependencies for one relation by the superkey test.

    ``fds`` may be the schema's global list; right-hand sides are normalized
    to singletons and projected onto the relation first.
    """
    attrs = relation.attribute_set
    projected = project_fds(normalize_fds(fds), attrs)
    preventing: list[FunctionalDependency] = []
    non_preventing: list[FunctionalDependency] = []
    for fd in projected:
        if closure(fd.determinant_set, projected) >= attrs:
            non_preventing.append(fd)
        else:
            preventing.append(fd)
    completeness: frozenset[str] = frozenset().union(
        *(fd.attributes for fd in non_preventing)
    )
    prevented: frozenset[str] = frozenset().union(
        *(fd.attributes for fd in preventing)
    )
    return FDPartition(
        relation_name=relation.name,
        preventing=tuple(preventing),
        non_preventing=tuple(non_preventing),
        completeness_attributes=completeness,
        preventing_attributes=prevented,
        total_attributes=len(relation.attributes),
    )


def classify_nf(
    relation: RelationSchema,
    fds: Sequence[FunctionalDependency],
    mode: ClassificationMode = ClassificationMode.PRIMARY,
    *,
    key_cap: int = DEFAULT_KEY_CAP,
) -> NormalForm:
    """Highest normal form whose cumulative conditions hold.

    Gate order: any non-atomic attribute leaves the relation unnormalized;
    otherwise it is at least 1NF, reaches 2NF without partial dependencies,
    3NF additionally without transitive dependencies, and BCNF once every
    projected dependency has a superkey determinant. ``fds`` may be passed
    unprojected; projection (after right-hand-side normalization) happens
    here.
    """
    if any(not spec.atomic for spec in relation.attributes):
        return NormalForm.UNF

    attrs = relation.attribute_set
    projected = project_fds(normalize_fds(fds), attrs)

    def superkey(det: frozenset[str]) -> bool:
        return closure(det, projected) >= attrs

    if mode is ClassificationMode.PRIMARY:
        pk = relation.primary_key_set

        def partial(fd: FunctionalDependency) -> bool:
            det = fd.determinant_set
            return bool(det) and det < pk and any(a not in pk for a in fd.dependents)

        def transitive(fd: FunctionalDependency) -> bool:
            det = fd.determinant_set
            return (
                det.isdisjoint(pk)
                and any(a not in pk for a in fd.dependents)
                and not superkey(det)
            )

    else:
        keys = candidate_keys(relation, projected, cap=key_cap)
        primes = frozenset().union(*keys) if keys else frozenset()

        def partial(fd: FunctionalDependency) -> bool:
            det = fd.determinant_set
            return (
                bool(det)
                and any(det < key for key in keys)
                and any(a not in primes for a in fd.dependents)
            )

        def transitive(fd: FunctionalDependency) -> bool:
            det = fd.determinant_set
            return not superkey(det) and any(a not in primes for a in fd.dependents)

    if any(partial(fd) for fd in projected):
        return NormalForm.FIRST
    if any(transitive(fd) for fd in projected):
        return NormalForm.SECOND
    if not all(superkey(fd.determinant_set) for fd in projected):
        return NormalForm.THIRD
    return NormalForm.BCNF
