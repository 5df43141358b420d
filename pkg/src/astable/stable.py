"""A-stable model checking and enumeration.

An interpretation I is A-stable for a formula F when I satisfies the reduct
of F w.r.t. I and no proper subset J of I with I - J contained in A does.
Atoms in A are intensional (the program decides them), all others are
extensional (fixed from outside).  With A = sigma this is ordinary stability,
with A empty it is classical satisfaction.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Iterator

from .formula import (
    Atom,
    AtomRef,
    CapExceeded,
    Conj,
    Formula,
    SignatureError,
    atoms_of,
    disj,
    neg,
    reduct,
    satisfies,
    truth_chunks,
)

Interpretation = frozenset[Atom]

DEFAULT_MAX_ATOMS = 24
_CHUNK_BITS = 16


def format_interpretation(interp: AbstractSet[Atom]) -> str:
    return "{" + ",".join(str(a) for a in sorted(interp)) + "}"


def interpretation_key(interp: AbstractSet[Atom]) -> tuple:
    """Canonical sort key: lexicographic over the sorted atom sequence."""
    return tuple((a.name, a.args) for a in sorted(interp))


@dataclass(frozen=True)
class ModelSet:
    """A canonically ordered set of interpretations over a fixed signature."""

    models: tuple[Interpretation, ...]
    signature: frozenset[Atom]

    @classmethod
    def from_iter(cls, models: Iterable[AbstractSet[Atom]], signature: AbstractSet[Atom]) -> "ModelSet":
        sig = frozenset(signature)
        ordered = sorted({frozenset(m) for m in models}, key=interpretation_key)
        for m in ordered:
            if not m <= sig:
                raise SignatureError(f"model {format_interpretation(m)} leaves the signature")
        return cls(tuple(ordered), sig)

    def __iter__(self) -> Iterator[Interpretation]:
        return iter(self.models)

    def __len__(self) -> int:
        return len(self.models)

    def __contains__(self, interp: AbstractSet[Atom]) -> bool:
        return frozenset(interp) in set(self.models)

    def as_set(self) -> frozenset[Interpretation]:
        return frozenset(self.models)

    def lines(self) -> list[str]:
        return [format_interpretation(m) for m in self.models]

    def intersection(self, other: "ModelSet") -> "ModelSet":
        if self.signature != other.signature:
            raise SignatureError("model sets over different signatures cannot be intersected")
        common = self.as_set() & other.as_set()
        return ModelSet.from_iter(common, self.signature)


def leq_a(i: AbstractSet[Atom], j: AbstractSet[Atom], a: AbstractSet[Atom]) -> bool:
    """The order: I <= J and J - I inside A (I, J agree on extensional atoms)."""
    i, j = frozenset(i), frozenset(j)
    return i <= j and (j - i) <= frozenset(a)


def _proper_subsets(items: list[Atom]) -> Iterator[frozenset[Atom]]:
    for size in range(len(items)):
        for combo in itertools.combinations(items, size):
            yield frozenset(combo)


def is_a_stable(f: Formula, interp: AbstractSet[Atom], a: AbstractSet[Atom]) -> bool:
    """Reference check: satisfies the own reduct, minimally so under leq_a.

    Only subsets that keep interp - a need inspecting, worst case
    2**len(interp & a) satisfaction checks.
    """
    i = frozenset(interp)
    a = frozenset(a)
    r = reduct(f, i)
    if not satisfies(i, r):
        return False
    base = i - a
    for sub in _proper_subsets(sorted(i & a)):
        if satisfies(base | sub, r):
            return False
    return True


def modred(f: Formula, interp: AbstractSet[Atom], a: AbstractSet[Atom]) -> Formula:
    """The reduct of f w.r.t. interp conjoined with every extensional atom
    of interp.  Subset-minimal models of the result are exactly the A-stable
    models among interpretations shaped like interp outside A."""
    i = frozenset(interp)
    extras = sorted(i - frozenset(a))
    r = reduct(f, i)
    if not extras:
        return r
    return Conj((r, *(AtomRef(p) for p in extras)))


def choice_extension(f: Formula, a: AbstractSet[Atom], sigma: AbstractSet[Atom]) -> Formula:
    """f conjoined with (p | not p) for every extensional atom p of sigma.

    Stable models of the result, with everything intensional, are the
    A-stable models of f over sigma.
    """
    a = frozenset(a)
    sig = frozenset(sigma)
    missing = (atoms_of(f) | a) - sig
    if missing:
        names = ", ".join(str(x) for x in sorted(missing))
        raise SignatureError(f"signature omits occurring atoms: {names}")
    extension = sorted(sig - a)
    if not extension:
        return f
    choices = [disj((AtomRef(p), neg(AtomRef(p)))) for p in extension]
    return Conj((f, *choices))


def _check_cap(n: int, max_atoms: int) -> None:
    if n > max_atoms:
        raise CapExceeded(
            f"enumeration over {n} atoms exceeds the cap of {max_atoms}; "
            f"pass a larger max_atoms (or --max-atoms) if this is intended"
        )


def _candidate_models(f: Formula, core: list[Atom]) -> Iterator[int]:
    """Bitmasks over `core` (bit b <-> core[b]) that classically satisfy f."""
    offset = 0
    for chunk in truth_chunks(f, core, chunk_bits=_CHUNK_BITS):
        base = offset
        while chunk:
            low = chunk & -chunk
            yield base + low.bit_length() - 1
            chunk ^= low
        offset += 1 << min(len(core), _CHUNK_BITS)


def _is_minimal(f: Formula, i: Interpretation, a_core: frozenset[Atom]) -> bool:
    """True iff i satisfies its reduct and no allowed proper subset does."""
    free = sorted(i & a_core)
    r = reduct(f, i)
    if not free:
        return satisfies(i, r)
    base = i - a_core
    k = len(free)
    cb = min(k, _CHUNK_BITS)
    n_chunks = 1 << (k - cb)
    full_bit = 1 << ((1 << cb) - 1)  # the assignment equal to i, in the last chunk
    for idx, chunk in enumerate(truth_chunks(r, free, base, chunk_bits=_CHUNK_BITS)):
        if idx == n_chunks - 1:
            if not (chunk & full_bit):
                return False
            chunk ^= full_bit
        if chunk:
            return False
    return True


def _stable_subset(args) -> list[Interpretation]:
    f, a_core, candidates = args
    return [i for i in candidates if _is_minimal(f, i, a_core)]


def enumerate_a_stable(
    f: Formula,
    a: AbstractSet[Atom],
    sigma: AbstractSet[Atom] | None = None,
    *,
    max_atoms: int = DEFAULT_MAX_ATOMS,
    workers: int = 1,
) -> ModelSet:
    """All A-stable models of f over sigma, canonically ordered.

    sigma defaults to the atoms occurring in f plus a; extra extensional
    atoms must be supplied explicitly since they change the result.  Models
    are found by a vectorized satisfiability sweep followed by a minimality
    check per model; intensional atoms that never occur in f cannot appear
    in any A-stable model and are pruned up front, while non-occurring
    extensional atoms contribute a free product at the end.
    """
    a = frozenset(a)
    occurring = atoms_of(f)
    sig = frozenset(sigma) if sigma is not None else occurring | a
    missing = (occurring | a) - sig
    if missing:
        names = ", ".join(str(x) for x in sorted(missing))
        raise SignatureError(f"signature omits occurring atoms: {names}")
    _check_cap(len(sig), max_atoms)

    core = sorted(occurring)
    a_core = a & occurring
    free_ext = sorted(sig - a - occurring)

    candidates = [
        frozenset(at for b, at in enumerate(core) if mask >> b & 1)
        for mask in _candidate_models(f, core)
    ]
    if workers > 1 and len(candidates) > 1:
        step = (len(candidates) + workers - 1) // workers
        batches = [(f, a_core, candidates[k : k + step]) for k in range(0, len(candidates), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stable = [i for part in pool.map(_stable_subset, batches) for i in part]
    else:
        stable = [i for i in candidates if _is_minimal(f, i, a_core)]

    if free_ext:
        models = [
            s | frozenset(extra)
            for s in stable
            for size in range(len(free_ext) + 1)
            for extra in itertools.combinations(free_ext, size)
        ]
    else:
        models = stable
    return ModelSet.from_iter(models, sig)
