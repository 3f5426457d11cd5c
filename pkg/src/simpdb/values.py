"""Cell contents.

Every vertex of a complex and every entry of an instance is a :class:`Value`.
Values are immutable, hashable and totally ordered by a structural key, which
fixes the canonical layout of faces, rows and families everywhere else.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

__all__ = [
    "Value",
    "Atom",
    "Unit",
    "UNIT",
    "Pair",
    "Tag",
    "Row",
    "Family",
    "as_value",
    "format_value",
    "format_vertex",
]


class Value:
    """Base class. Subclasses set ``_key`` once; equality, hashing and order follow it."""

    __slots__ = ("_key", "_hash")

    def _init_key(self, key: tuple) -> None:
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def key(self) -> tuple:
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Value):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return self._hash

    def __lt__(self, other: Value):
        return self._key < other._key

    def __le__(self, other: Value):
        return self._key <= other._key

    def __gt__(self, other: Value):
        return self._key > other._key

    def __ge__(self, other: Value):
        return self._key >= other._key

    def __str__(self):
        return format_value(self)


class Atom(Value):
    __slots__ = ("token",)

    def __init__(self, token: str):
        if not isinstance(token, str) or not token:
            raise ValueError(f"atom token must be a nonempty string, got {token!r}")
        object.__setattr__(self, "token", token)
        self._init_key((0, token))

    def __repr__(self):
        return f"Atom({self.token!r})"


class Unit(Value):
    """The empty tuple. Use the module constant :data:`UNIT`."""

    __slots__ = ()

    def __init__(self):
        self._init_key((1,))

    def __repr__(self):
        return "UNIT"


UNIT = Unit()


class Pair(Value):
    __slots__ = ("fst", "snd")

    def __init__(self, fst: Value, snd: Value):
        object.__setattr__(self, "fst", fst)
        object.__setattr__(self, "snd", snd)
        self._init_key((2, fst._key, snd._key))

    def __repr__(self):
        return f"Pair({self.fst!r}, {self.snd!r})"


class Tag(Value):
    __slots__ = ("bit", "value")

    def __init__(self, bit: int, value: Value):
        if bit not in (0, 1):
            raise ValueError(f"tag bit must be 0 or 1, got {bit!r}")
        object.__setattr__(self, "bit", bit)
        object.__setattr__(self, "value", value)
        self._init_key((3, bit, value._key))

    def __repr__(self):
        return f"Tag({self.bit}, {self.value!r})"


class _Keyed(Value):
    """Shared machinery for Row and Family: sorted, duplicate-free key/value items."""

    __slots__ = ("items", "_map")
    _rank = -1

    def __init__(self, items: Iterable[tuple[Value, Value]] | Mapping[Value, Value]):
        if isinstance(items, Mapping):
            items = items.items()
        ordered = tuple(sorted(items, key=lambda kv: kv[0]._key))
        mapping = dict(ordered)
        if len(mapping) != len(ordered):
            raise ValueError(f"duplicate keys in {type(self).__name__}")
        object.__setattr__(self, "items", ordered)
        object.__setattr__(self, "_map", mapping)
        self._init_key((self._rank, tuple((k._key, v._key) for k, v in ordered)))

    @classmethod
    def from_sorted(cls, items: tuple):
        """Build from items already sorted by key with distinct keys (not re-checked)."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "items", items)
        object.__setattr__(obj, "_map", dict(items))
        obj._init_key((cls._rank, tuple((k._key, v._key) for k, v in items)))
        return obj

    def __getitem__(self, k: Value) -> Value:
        return self._map[k]

    def get(self, k: Value, default=None):
        return self._map.get(k, default)

    def keys(self) -> tuple[Value, ...]:
        return tuple(k for k, _ in self.items)

    def values(self) -> tuple[Value, ...]:
        return tuple(v for _, v in self.items)

    def __iter__(self) -> Iterator[Value]:
        return iter(self.keys())

    def __len__(self):
        return len(self.items)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.items)!r})"


class Row(_Keyed):
    """A tuple keyed by attributes (the vertices of a face)."""

    __slots__ = ()
    _rank = 4


class Family(_Keyed):
    """A finite function between values; used for dependent products."""

    __slots__ = ()
    _rank = 5


def as_value(x) -> Value:
    """Coerce plain strings to atoms; pass values through."""
    if isinstance(x, Value):
        return x
    if isinstance(x, str):
        return Atom(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return Atom(str(x))
    raise TypeError(f"cannot interpret {x!r} as a value")


def _wrap(v: Value) -> str:
    s = format_value(v)
    return f"({s})" if isinstance(v, Tag) else s


def format_value(v: Value) -> str:
    """Canonical printing: atoms bare, ``*``, ``(x,y)``, ``inl x``/``inr x``, ``{k↦v, …}``."""
    if isinstance(v, Atom):
        return v.token
    if isinstance(v, Unit):
        return "*"
    if isinstance(v, Pair):
        return f"({format_value(v.fst)},{format_value(v.snd)})"
    if isinstance(v, Tag):
        return ("inl " if v.bit == 0 else "inr ") + _wrap(v.value)
    if isinstance(v, Family):
        return "{" + ", ".join(f"{format_value(k)}↦{format_value(x)}" for k, x in v.items) + "}"
    if isinstance(v, Row):
        return "⟨" + ", ".join(f"{format_vertex(k)}:{format_value(x)}" for k, x in v.items) + "⟩"
    raise TypeError(f"not a value: {v!r}")


def format_vertex(v: Value) -> str:
    """Attribute names for table headers; element vertices print as ``value_attribute``.

    The base attribute is dropped when it is a bare numeral, so the vertex
    ⟨0, A⟩ of an extended simplex prints as ``A`` and ⟨⟨0, A⟩, a⟩ as ``a_A``.
    """
    if isinstance(v, Atom):
        return v.token
    if isinstance(v, Pair):
        if isinstance(v.fst, Atom) and v.fst.token.isdigit():
            return format_value(v.snd)
        return f"{format_value(v.snd)}_{format_vertex(v.fst)}"
    return format_value(v)
