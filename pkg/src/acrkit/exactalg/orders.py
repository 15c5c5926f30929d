"""Monomial orders.

Every order is realised as a sort key on exponent tuples: a larger key
means a larger monomial. Keys are plain tuples of ints so they compare
quickly and can be negated for heap use.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

Monomial = Tuple[int, ...]


def _lex_key(perm):
    def key(m):
        return tuple(m[i] for i in perm)
    return key


def _grevlex_key(perm):
    rev = tuple(reversed(perm))

    def key(m):
        return (sum(m[i] for i in perm),) + tuple(-m[i] for i in rev)
    return key


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on a fixed number of variables.

    kind is "lex", "grevlex" or "block". For lex and grevlex, ``perm``
    lists variable indices from most to least significant. For block
    orders, ``blocks`` is a tuple of (kind, perm) pairs compared in turn.
    """

    kind: str
    nvars: int
    perm: Tuple[int, ...] = ()
    blocks: Tuple[Tuple[str, Tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if self.kind in ("lex", "grevlex"):
            if sorted(self.perm) != list(range(self.nvars)):
                raise ValueError(f"{self.kind} permutation must cover all {self.nvars} variables")
        elif self.kind == "block":
            seen = sorted(i for _, p in self.blocks for i in p)
            if seen != list(range(self.nvars)):
                raise ValueError("block order must partition the variables")
            for k, _ in self.blocks:
                if k not in ("lex", "grevlex"):
                    raise ValueError(f"unknown inner order {k!r}")
        else:
            raise ValueError(f"unknown order kind {self.kind!r}")

    @property
    def key(self) -> Callable[[Monomial], tuple]:
        k = _KEY_CACHE.get(self)
        if k is None:
            with _KEY_LOCK:
                k = _KEY_CACHE.setdefault(self, self._build_key())
        return k

    def _build_key(self):
        if self.kind == "lex":
            return _lex_key(self.perm)
        if self.kind == "grevlex":
            return _grevlex_key(self.perm)
        inner = [(_lex_key(p) if k == "lex" else _grevlex_key(p)) for k, p in self.blocks]
        if len(inner) == 2:
            a, b = inner
            return lambda m: a(m) + b(m)

        def key(m):
            out = ()
            for f in inner:
                out += f(m)
            return out
        return key

    def describe(self, names: Sequence[str] | None = None) -> str:
        def nm(i):
            return names[i] if names else f"x{i + 1}"
        if self.kind in ("lex", "grevlex"):
            return f"{self.kind}:" + ",".join(nm(i) for i in self.perm)
        return "block(" + "; ".join(f"{k}:" + ",".join(nm(i) for i in p) for k, p in self.blocks) + ")"


_KEY_CACHE: dict = {}
_KEY_LOCK = threading.Lock()


def lex(nvars: int, perm: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", nvars, tuple(range(nvars)) if perm is None else tuple(perm))


def grevlex(nvars: int, perm: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("grevlex", nvars, tuple(range(nvars)) if perm is None else tuple(perm))


def elimination(nvars: int, eliminate: Sequence[int], inner: str = "grevlex",
                keep_inner: str = "grevlex") -> MonomialOrder:
    """Block order with the variables in ``eliminate`` forming the leading block."""
    elim = tuple(eliminate)
    rest = tuple(i for i in range(nvars) if i not in set(elim))
    if not elim:
        return MonomialOrder(keep_inner, nvars, rest)
    if not rest:
        return MonomialOrder(inner, nvars, elim)
    return MonomialOrder("block", nvars, blocks=((inner, elim), (keep_inner, rest)))


def parse_order(spec: str, names: Sequence[str]) -> MonomialOrder:
    """Parse "lex:B,C,D,A" or "grevlex" (natural order) against variable names."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind not in ("lex", "grevlex"):
        raise ValueError(f"unsupported order {spec!r}")
    if not rest.strip():
        return MonomialOrder(kind, len(names), tuple(range(len(names))))
    idx = {n: i for i, n in enumerate(names)}
    perm = []
    for tok in rest.split(","):
        tok = tok.strip()
        if tok not in idx:
            raise ValueError(f"unknown variable {tok!r} in order")
        perm.append(idx[tok])
    return MonomialOrder(kind, len(names), tuple(perm))
