"""Brute-force oracles, deliberately independent of the package's algorithms."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from normlens import FunctionalDependency, RelationSchema


def naive_closure(
    start: Iterable[str], fds: Sequence[FunctionalDependency]
) -> frozenset[str]:
    """Fixpoint by rescanning the full dependency list until nothing changes."""
    pairs = [(frozenset(fd.determinant), frozenset(fd.dependents)) for fd in fds]
    result = set(start)
    while True:
        grew = False
        for det, deps in pairs:
            if det <= result and not deps <= result:
                result |= deps
                grew = True
        if not grew:
            return frozenset(result)


def brute_force_keys(
    relation: RelationSchema, fds: Sequence[FunctionalDependency]
) -> list[frozenset[str]]:
    """Enumerate every attribute subset, keep superkeys, drop non-minimal ones."""
    names = sorted(relation.attribute_names)
    target = frozenset(names)
    superkeys = [
        frozenset(combo)
        for size in range(len(names) + 1)
        for combo in itertools.combinations(names, size)
        if naive_closure(combo, fds) >= target
    ]
    return sorted(
        (key for key in superkeys if not any(other < key for other in superkeys)),
        key=lambda key: (len(key), tuple(sorted(key))),
    )
