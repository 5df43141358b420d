"""Ground formula AST with set-valued connectives.

Formulas are immutable trees built from atoms, set-valued conjunction and
disjunction nodes, and implications.  Conjunction and disjunction children are
deduplicated and kept in a fixed structural order, so structural equality is
decidable and every formula has exactly one representation.  `top` is the
empty conjunction, `bot` the empty disjunction, and `not F` abbreviates
`F -> bot`; none of these is a separate node kind.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Iterator, Sequence

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"not", "top", "bot", "And", "Or"})


class SignatureError(ValueError):
    """A supplied signature does not cover all occurring atoms."""


class CapExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured atom cap."""


@dataclass(frozen=True, order=True)
class Atom:
    """A propositional atom: a name plus a tuple of constant arguments.

    Atoms are totally ordered by (name, args); that order fixes all canonical
    output in the package.
    """

    name: str
    args: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not _IDENT_RE.match(self.name) or self.name in KEYWORDS:
            raise ValueError(f"invalid atom name: {self.name!r}")
        for a in self.args:
            if not _IDENT_RE.match(a):
                raise ValueError(f"invalid atom argument: {a!r}")

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(self.args)})"


class Formula:
    """Base class for formula nodes.  Instances are immutable values."""

    __slots__ = ()

    @property
    def rank(self) -> int:
        raise NotImplementedError

    def __str__(self) -> str:
        return format_formula(self)


def _sort_key(f: Formula):
    if isinstance(f, AtomRef):
        return (0, f.atom.name, f.atom.args)
    if isinstance(f, Conj):
        return (1, tuple(_sort_key(c) for c in f.children))
    if isinstance(f, Disj):
        return (2, tuple(_sort_key(c) for c in f.children))
    assert isinstance(f, Impl)
    return (3, _sort_key(f.lhs), _sort_key(f.rhs))


def _canonical(children: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(set(children), key=_sort_key))


@dataclass(frozen=True)
class AtomRef(Formula):
    atom: Atom

    @property
    def rank(self) -> int:
        return 0


@dataclass(frozen=True)
class Conj(Formula):
    children: tuple[Formula, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", _canonical(self.children))

    @property
    def rank(self) -> int:
        return max((c.rank for c in self.children), default=-1) + 1


@dataclass(frozen=True)
class Disj(Formula):
    children: tuple[Formula, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", _canonical(self.children))

    @property
    def rank(self) -> int:
        return max((c.rank for c in self.children), default=-1) + 1


@dataclass(frozen=True)
class Impl(Formula):
    lhs: Formula
    rhs: Formula

    @property
    def rank(self) -> int:
        return max(self.lhs.rank, self.rhs.rank) + 1


TOP: Formula = Conj(())
BOT: Formula = Disj(())


def atom(name: str, *args: str) -> AtomRef:
    return AtomRef(Atom(name, tuple(args)))


def conj(children: Iterable[Formula]) -> Conj:
    return Conj(tuple(children))


def disj(children: Iterable[Formula]) -> Disj:
    return Disj(tuple(children))


def impl(lhs: Formula, rhs: Formula) -> Impl:
    return Impl(lhs, rhs)


def neg(f: Formula) -> Impl:
    return Impl(f, BOT)


def iff(f: Formula, g: Formula) -> Conj:
    return conj((Impl(f, g), Impl(g, f)))


def atoms_of(f: Formula) -> frozenset[Atom]:
    """All atoms occurring anywhere in the tree."""
    out: set[Atom] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, AtomRef):
            out.add(g.atom)
        elif isinstance(g, (Conj, Disj)):
            stack.extend(g.children)
        else:
            assert isinstance(g, Impl)
            stack.append(g.lhs)
            stack.append(g.rhs)
    return frozenset(out)


def satisfies(interp: AbstractSet[Atom], f: Formula) -> bool:
    """Classical satisfaction of f by the set of true atoms `interp`."""
    if isinstance(f, AtomRef):
        return f.atom in interp
    if isinstance(f, Conj):
        return all(satisfies(interp, c) for c in f.children)
    if isinstance(f, Disj):
        return any(satisfies(interp, c) for c in f.children)
    assert isinstance(f, Impl)
    return not satisfies(interp, f.lhs) or satisfies(interp, f.rhs)


def reduct(f: Formula, interp: AbstractSet[Atom]) -> Formula:
    """Reduct of f w.r.t. `interp`.

    Atoms outside `interp` become bot; an implication not satisfied by
    `interp` becomes bot, a satisfied one keeps both reduced sides.  The
    result is canonical but deliberately not simplified further.
    """
    if isinstance(f, AtomRef):
        return f if f.atom in interp else BOT
    if isinstance(f, Conj):
        return Conj(tuple(reduct(c, interp) for c in f.children))
    if isinstance(f, Disj):
        return Disj(tuple(reduct(c, interp) for c in f.children))
    assert isinstance(f, Impl)
    if not satisfies(interp, f):
        return BOT
    return Impl(reduct(f.lhs, interp), reduct(f.rhs, interp))


def _bit_pattern(bit: int, width: int) -> int:
    """Vector over assignment indexes 0..width-1 whose entry is 1 iff the
    index has `bit` set."""
    block = 1 << bit
    v = ((1 << block) - 1) << block
    span = block << 1
    while span < width:
        v |= v << span
        span <<= 1
    return v


def truth_chunks(
    f: Formula,
    var_atoms: Sequence[Atom],
    true_atoms: AbstractSet[Atom] = frozenset(),
    chunk_bits: int = 16,
) -> Iterator[int]:
    """Satisfaction of f over all assignments to `var_atoms`, as bit vectors.

    Assignment index m makes var_atoms[b] true iff bit b of m is set.  Atoms
    in `true_atoms` are always true, every other atom is false.  Yields
    integers of 2**min(len(var_atoms), chunk_bits) bits each, lowest indexes
    first, so that big signatures never materialize one huge vector.
    """
    n = len(var_atoms)
    cb = min(n, chunk_bits)
    width = 1 << cb
    all_ones = (1 << width) - 1
    low = {a: _bit_pattern(b, width) for b, a in enumerate(var_atoms[:cb])}
    high = list(var_atoms[cb:])

    for hi in range(1 << (n - cb)):
        env = dict(low)
        for b, a in enumerate(high):
            env[a] = all_ones if (hi >> b) & 1 else 0
        memo: dict[Formula, int] = {}

        def ev(g: Formula) -> int:
            got = memo.get(g)
            if got is not None:
                return got
            if isinstance(g, AtomRef):
                v = env.get(g.atom, all_ones if g.atom in true_atoms else 0)
            elif isinstance(g, Conj):
                v = all_ones
                for c in g.children:
                    v &= ev(c)
                    if not v:
                        break
            elif isinstance(g, Disj):
                v = 0
                for c in g.children:
                    v |= ev(c)
                    if v == all_ones:
                        break
            else:
                assert isinstance(g, Impl)
                v = ((all_ones ^ ev(g.lhs)) | ev(g.rhs)) & all_ones
            memo[g] = v
            return v

        yield ev(f)


def equivalent(
    f: Formula,
    g: Formula,
    sigma: AbstractSet[Atom] | None = None,
    max_atoms: int = 24,
) -> bool:
    """True iff f and g are satisfied by exactly the same interpretations.

    `sigma`, when given, must cover every atom occurring in f or g; atoms of
    sigma occurring in neither cannot influence the answer and are skipped.
    """
    occurring = atoms_of(f) | atoms_of(g)
    if sigma is not None:
        missing = occurring - frozenset(sigma)
        if missing:
            names = ", ".join(str(a) for a in sorted(missing))
            raise SignatureError(f"signature omits occurring atoms: {names}")
    varying = sorted(occurring)
    if len(varying) > max_atoms:
        raise CapExceeded(
            f"equivalence check over {len(varying)} atoms exceeds the cap of "
            f"{max_atoms}; raise max_atoms explicitly if this is intended"
        )
    for cf, cg in zip(truth_chunks(f, varying), truth_chunks(g, varying)):
        if cf != cg:
            return False
    return True


_LVL_IMPL, _LVL_DISJ, _LVL_CONJ, _LVL_UNARY = 0, 1, 2, 3


def format_formula(f: Formula) -> str:
    """Canonical text form; `parse_formula` inverts it exactly."""
    return _fmt(f, _LVL_IMPL)


def format_program(formulas: Iterable[Formula]) -> str:
    return "".join(format_formula(f) + ".\n" for f in formulas)


def _fmt(f: Formula, ctx: int) -> str:
    if isinstance(f, AtomRef):
        return str(f.atom)
    if isinstance(f, Conj):
        if not f.children:
            return "top"
        if len(f.children) == 1:
            return "And{" + _fmt(f.children[0], _LVL_IMPL) + "}"
        s = " & ".join(_fmt(c, _LVL_UNARY) for c in f.children)
        return s if ctx <= _LVL_CONJ else "(" + s + ")"
    if isinstance(f, Disj):
        if not f.children:
            return "bot"
        if len(f.children) == 1:
            return "Or{" + _fmt(f.children[0], _LVL_IMPL) + "}"
        s = " | ".join(_fmt(c, _LVL_CONJ) for c in f.children)
        return s if ctx <= _LVL_DISJ else "(" + s + ")"
    assert isinstance(f, Impl)
    if f.rhs == BOT:
        s = "not " + _fmt(f.lhs, _LVL_UNARY)
        return s if ctx <= _LVL_UNARY else "(" + s + ")"
    s = _fmt(f.lhs, _LVL_DISJ) + " -> " + _fmt(f.rhs, _LVL_IMPL)
    return s if ctx == _LVL_IMPL else "(" + s + ")"
