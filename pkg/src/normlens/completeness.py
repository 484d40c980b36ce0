"""Fuzzy membership and normalization completeness scores.

A relation below BCNF scores ``NC = N + x`` where N is its normal form level
and the membership value

    x = ((c / n) + (1 - p / n)) / 2

combines c, the number of attributes under non-preventing dependencies, with
p, the number under preventing dependencies, over n total attributes. x lives
in [0, 1]: it hits 1 exactly when c = n and p = 0, hits 0 exactly when c = 0
and p = n, grows with c and shrinks with p.

A BCNF relation contributes exactly 4, the top of the ladder, not 4 + x: the
scale ends at BCNF, so schema totals stay additive as decomposition replaces
one scored relation with several. All arithmetic is exact ``Fraction`` math;
the only place precision is lost is the two-decimal display truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import (
    ClassificationMode,
    FDPartition,
    classify_nf,
    partition_preventing,
)
from .fd import DEFAULT_KEY_CAP
from .model import FunctionalDependency, NormalForm, RelationSchema, Schema


def truncated(value: Fraction) -> str:
    """Two-decimal truncation: 0.625 -> '0.62', 5/7 -> '0.71'. Floor, not round."""
    hundredths = math.floor(value * 100)
    return f"{hundredths // 100}.{hundredths % 100:02d}"


def fuzzy_membership(completeness: int, preventing: int, total: int) -> Fraction:
    """Membership value ((c/n) + (1 - p/n)) / 2 as an exact rational.

    Requires n >= 1 and 0 <= c, p <= n; raises ValueError otherwise.
    """
    if total < 1:
        raise ValueError(f"total attribute count must be >= 1, got {total}")
    if not 0 <= completeness <= total:
        raise ValueError(
            f"completeness count {completeness} out of range [0, {total}]"
        )
    if not 0 <= preventing <= total:
        raise ValueError(f"preventing count {preventing} out of range [0, {total}]")
    return (Fraction(completeness, total) + (1 - Fraction(preventing, total))) / 2


@dataclass(frozen=True)
class RelationNC:
    """Normalization completeness of one relation."""

    relation_name: str
    normal_form: NormalForm
    partition: FDPartition
    membership: Fraction
    nc: Fraction

    @property
    def nc_display(self) -> str:
        return truncated(self.nc)


@dataclass(frozen=True)
class SchemaNC:
    """Per-relation scores plus the schema total (their exact sum)."""

    schema_name: str
    mode: ClassificationMode
    per_relation: tuple[RelationNC, ...]

    @property
    def total(self) -> Fraction:
        return sum((r.nc for r in self.per_relation), Fraction(0))

    @property
    def total_display(self) -> str:
        return truncated(self.total)


def relation_nc(
    relation: RelationSchema,
    fds: Sequence[FunctionalDependency],
    mode: ClassificationMode = ClassificationMode.PRIMARY,
    *,
    key_cap: int = DEFAULT_KEY_CAP,
) -> RelationNC:
    """Score one relation: classify, partition, then NC = N + x (or exactly 4).

    A relation with no projected dependencies is vacuously BCNF, so the
    membership formula never sees n = 0.
    """
    form = classify_nf(relation, fds, mode, key_cap=key_cap)
    partition = partition_preventing(relation, fds)
    if form is NormalForm.BCNF:
        membership = Fraction(1)
        nc = Fraction(4)
    else:
        membership = fuzzy_membership(
            partition.completeness_count,
            partition.preventing_count,
            partition.total_attributes,
        )
        nc = form.value + membership
    return RelationNC(
        relation_name=relation.name,
        normal_form=form,
        partition=partition,
        membership=membership,
        nc=nc,
    )


def schema_nc(
    schema: Schema,
    mode: ClassificationMode = ClassificationMode.PRIMARY,
    *,
    key_cap: int = DEFAULT_KEY_CAP,
) -> SchemaNC:
    """Score every relation in schema order and total them exactly."""
    return SchemaNC(
        schema_name=schema.name,
        mode=mode,
        per_relation=tuple(
            relation_nc(rel, schema.fds, mode, key_cap=key_cap)
            for rel in schema.relations
        ),
    )
