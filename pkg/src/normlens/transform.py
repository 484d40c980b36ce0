"""Schema decomposition: split preventing dependencies out until BCNF.

Each step takes the first preventing dependency (schema FD order) of a
target relation, groups every other preventing dependency sharing its
determinant, and moves determinant plus dependents into a new relation keyed
by the determinant. The reduced relation keeps its key and loses only the
moved dependents. Both halves share exactly the determinant, which
functionally determines the whole new relation, so every split is lossless
under the binary join criterion. Dependency preservation is NOT guaranteed;
the trace lists dependencies that no longer project into any one relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .classify import ClassificationMode, classify_nf, partition_preventing
from .completeness import SchemaNC, schema_nc
from .errors import AlreadyBCNFError, DecompositionError
from .fd import DEFAULT_KEY_CAP
from .model import NormalForm, RelationSchema, Schema, normalize_fds


@dataclass(frozen=True)
class TransformStep:
    """One decomposition step with the schema scores around it.

    ``new_relation_bcnf`` records whether the freshly split-off relation is
    already in BCNF. It usually is (its key determines everything it holds),
    but an unrelated dependency can project into it with a non-superkey
    determinant; such a relation is flagged here and split again later.
    """

    source_name: str
    moved_fd_labels: tuple[str, ...]
    new_relation: RelationSchema
    reduced_relation: RelationSchema
    schema_after: Schema
    nc_before: SchemaNC
    nc_after: SchemaNC
    new_relation_bcnf: bool


@dataclass(frozen=True)
class TransformTrace:
    """Full decomposition run: initial schema, ordered steps, final schema."""

    initial: Schema
    steps: tuple[TransformStep, ...]
    final: Schema
    initial_nc: SchemaNC
    final_nc: SchemaNC
    unpreserved_fd_labels: tuple[str, ...]


def decompose_step(
    schema: Schema,
    relation_name: str,
    mode: ClassificationMode = ClassificationMode.PRIMARY,
    *,
    rename: Mapping[str, str] | None = None,
    key_cap: int = DEFAULT_KEY_CAP,
) -> TransformStep:
    """Split one preventing dependency group out of the named relation.

    The new relation's default name is ``<source>_<determinant attributes>``
    and the reduced relation keeps the source name by default; ``rename`` maps
    default names to wanted ones. Raises AlreadyBCNFError when the relation
    has no preventing dependency, DecompositionError when a moved dependent
    belongs to the source primary key (the step would break the key) or when
    renaming collides with an existing relation.
    """
    rename = rename or {}
    source = schema.relation(relation_name)
    partition = partition_preventing(source, schema.fds)
    if not partition.preventing:
        raise AlreadyBCNFError(
            f"relation {relation_name!r} has no preventing dependency to split off"
        )

    first = partition.preventing[0]
    group = tuple(
        fd for fd in partition.preventing if fd.determinant_set == first.determinant_set
    )
    determinant = first.determinant
    moved: list[str] = []
    for fd in group:
        for dep in fd.dependents:
            if dep not in first.determinant_set and dep not in moved:
                moved.append(dep)

    broken_key = sorted(set(moved) & source.primary_key_set)
    if broken_key:
        raise DecompositionError(
            f"cannot decompose {relation_name!r}: moved dependents {broken_key}"
            f" are part of its primary key"
        )

    spec_by_name = {spec.name: spec for spec in source.attributes}
    new_default = f"{source.name}_{'_'.join(determinant)}"
    new_relation = RelationSchema(
        name=rename.get(new_default, new_default),
        attributes=tuple(spec_by_name[name] for name in (*determinant, *moved)),
        primary_key=determinant,
    )
    reduced_relation = RelationSchema(
        name=rename.get(source.name, source.name),
        attributes=tuple(s for s in source.attributes if s.name not in moved),
        primary_key=source.primary_key,
    )

    other_names = {rel.name for rel in schema.relations if rel.name != source.name}
    produced = (new_relation.name, reduced_relation.name)
    if len(set(produced)) < 2 or other_names & set(produced):
        raise DecompositionError(
            f"decomposing {relation_name!r} produces duplicate relation names {produced}"
        )

    schema_after = Schema(
        name=schema.name,
        relations=tuple(
            reduced_relation if rel.name == source.name else rel
            for rel in schema.relations
        )
        + (new_relation,),
        fds=schema.fds,
    )
    return TransformStep(
        source_name=source.name,
        moved_fd_labels=tuple(fd.label for fd in group),
        new_relation=new_relation,
        reduced_relation=reduced_relation,
        schema_after=schema_after,
        nc_before=schema_nc(schema, mode, key_cap=key_cap),
        nc_after=schema_nc(schema_after, mode, key_cap=key_cap),
        new_relation_bcnf=classify_nf(new_relation, schema.fds, mode, key_cap=key_cap)
        is NormalForm.BCNF,
    )


def normalize_to_bcnf(
    schema: Schema,
    mode: ClassificationMode = ClassificationMode.PRIMARY,
    *,
    rename: Mapping[str, str] | None = None,
    key_cap: int = DEFAULT_KEY_CAP,
) -> TransformTrace:
    """Decompose the first relation below BCNF, repeatedly, until none is left.

    Terminates because each step replaces the source with two strictly
    smaller relations. Raises DecompositionError when a relation sits below
    BCNF with no preventing dependency: splitting cannot atomize attributes,
    nor fix a partial dependency whose determinant is already a superkey (an
    oversized primary key causes the latter).
    """
    steps: list[TransformStep] = []
    current = schema
    while True:
        target = next(
            (
                rel
                for rel in current.relations
                if classify_nf(rel, current.fds, mode, key_cap=key_cap)
                is not NormalForm.BCNF
            ),
            None,
        )
        if target is None:
            break
        if not partition_preventing(target, current.fds).preventing:
            raise DecompositionError(
                f"relation {target.name!r} is below BCNF but has no preventing"
                f" dependency; decomposition cannot raise it further"
            )
        step = decompose_step(
            current, target.name, mode, rename=rename, key_cap=key_cap
        )
        steps.append(step)
        current = step.schema_after

    unpreserved = tuple(
        fd.label
        for fd in normalize_fds(schema.fds)
        if not any(fd.attributes <= rel.attribute_set for rel in current.relations)
    )
    return TransformTrace(
        initial=schema,
        steps=tuple(steps),
        final=current,
        initial_nc=steps[0].nc_before if steps else schema_nc(schema, mode, key_cap=key_cap),
        final_nc=steps[-1].nc_after if steps else schema_nc(current, mode, key_cap=key_cap),
        unpreserved_fd_labels=unpreserved,
    )
