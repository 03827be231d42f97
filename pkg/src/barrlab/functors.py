"""Polynomial endofunctors on finite sets, given as syntax trees.

Constructors: constant, identity, finite products and coproducts, powers by
a finite exponent set, and composition.  Expressions evaluate on sets and on
functions; the arrow action is also available pointwise, which is what the
larger modules use to avoid materialising huge intermediate tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import itertools

from .finset import Element, FinFn, FinSet, guard_size


class FunctorExpr:
    """Base class for functor syntax trees."""

    def __call__(self, X: FinSet) -> FinSet:
        return eval_functor(self, X)


@dataclass(frozen=True)
class Const(FunctorExpr):
    value: FinSet

    def __str__(self):
        return self.value.name


@dataclass(frozen=True)
class Id(FunctorExpr):
    def __str__(self):
        return "X"


@dataclass(frozen=True)
class Prod(FunctorExpr):
    factors: tuple

    def __init__(self, *factors):
        if len(factors) == 1 and isinstance(factors[0], (list, tuple)):
            factors = tuple(factors[0])
        object.__setattr__(self, "factors", tuple(factors))

    def __str__(self):
        return "(" + "*".join(str(f) for f in self.factors) + ")"


@dataclass(frozen=True)
class Coprod(FunctorExpr):
    summands: tuple

    def __init__(self, *summands):
        if len(summands) == 1 and isinstance(summands[0], (list, tuple)):
            summands = tuple(summands[0])
        object.__setattr__(self, "summands", tuple(summands))

    def __str__(self):
        return "(" + "+".join(str(s) for s in self.summands) + ")"


@dataclass(frozen=True)
class Power(FunctorExpr):
    exponent: FinSet
    body: FunctorExpr

    def __str__(self):
        return f"({self.body}^{self.exponent.name})"


@dataclass(frozen=True)
class Compose(FunctorExpr):
    outer: FunctorExpr
    inner: FunctorExpr

    def __str__(self):
        return f"({self.outer}.{self.inner})"


def cardinality(expr: FunctorExpr, n: int) -> int:
    """|expr(X)| as a function of |X| = n."""
    if isinstance(expr, Const):
        return len(expr.value)
    if isinstance(expr, Id):
        return n
    if isinstance(expr, Prod):
        out = 1
        for f in expr.factors:
            out *= cardinality(f, n)
        return out
    if isinstance(expr, Coprod):
        return sum(cardinality(s, n) for s in expr.summands)
    if isinstance(expr, Power):
        return cardinality(expr.body, n) ** len(expr.exponent)
    if isinstance(expr, Compose):
        return cardinality(expr.outer, cardinality(expr.inner, n))
    raise TypeError(f"not a functor expression: {expr!r}")


def eval_functor(expr: FunctorExpr, X: FinSet) -> FinSet:
    """Apply the functor to a set; enumeration order is canonical."""
    guard_size(cardinality(expr, len(X)), f"evaluating {expr} on {X.name}")
    return FinSet(f"{expr}({X.name})", _enumerate(expr, X))


def _enumerate(expr: FunctorExpr, X: FinSet) -> Iterator[Element]:
    if isinstance(expr, Const):
        yield from expr.value
    elif isinstance(expr, Id):
        yield from X
    elif isinstance(expr, Prod):
        parts = [tuple(_enumerate(f, X)) for f in expr.factors]
        yield from itertools.product(*parts)
    elif isinstance(expr, Coprod):
        for tag, s in enumerate(expr.summands):
            for el in _enumerate(s, X):
                yield (tag, el)
    elif isinstance(expr, Power):
        body = tuple(_enumerate(expr.body, X))
        yield from itertools.product(body, repeat=len(expr.exponent))
    elif isinstance(expr, Compose):
        yield from _enumerate(expr.outer, eval_functor(expr.inner, X))
    else:
        raise TypeError(f"not a functor expression: {expr!r}")


def map_element(expr: FunctorExpr, fn: Callable, el: Element) -> Element:
    """The arrow action of the functor on a single element."""
    if isinstance(expr, Const):
        return el
    if isinstance(expr, Id):
        return fn(el)
    if isinstance(expr, Prod):
        return tuple(map_element(f, fn, c) for f, c in zip(expr.factors, el))
    if isinstance(expr, Coprod):
        tag, val = el
        return (tag, map_element(expr.summands[tag], fn, val))
    if isinstance(expr, Power):
        return tuple(map_element(expr.body, fn, v) for v in el)
    if isinstance(expr, Compose):
        return map_element(expr.outer, lambda v: map_element(expr.inner, fn, v), el)
    raise TypeError(f"not a functor expression: {expr!r}")


def eval_functor_map(expr: FunctorExpr, f: FinFn) -> FinFn:
    """Apply the functor to a function, materialising the full table."""
    dom = eval_functor(expr, f.dom)
    cod = eval_functor(expr, f.cod)
    return FinFn(dom, cod, {el: map_element(expr, f, el) for el in dom},
                 name=f"{expr}({f.name})")


def positions(expr: FunctorExpr, el: Element) -> list[Element]:
    """Values sitting at the identity leaves of el, in traversal order."""
    if isinstance(expr, Const):
        return []
    if isinstance(expr, Id):
        return [el]
    if isinstance(expr, Prod):
        out = []
        for f, c in zip(expr.factors, el):
            out.extend(positions(f, c))
        return out
    if isinstance(expr, Coprod):
        tag, val = el
        return positions(expr.summands[tag], val)
    if isinstance(expr, Power):
        out = []
        for v in el:
            out.extend(positions(expr.body, v))
        return out
    if isinstance(expr, Compose):
        out = []
        for v in positions(expr.outer, el):
            out.extend(positions(expr.inner, v))
        return out
    raise TypeError(f"not a functor expression: {expr!r}")


def refill(expr: FunctorExpr, el: Element, values: Iterator[Element]) -> Element:
    """Rebuild el with its identity-leaf values replaced, in traversal order."""
    if isinstance(expr, Const):
        return el
    if isinstance(expr, Id):
        return next(values)
    if isinstance(expr, Prod):
        return tuple(refill(f, c, values) for f, c in zip(expr.factors, el))
    if isinstance(expr, Coprod):
        tag, val = el
        return (tag, refill(expr.summands[tag], val, values))
    if isinstance(expr, Power):
        return tuple(refill(expr.body, v, values) for v in el)
    if isinstance(expr, Compose):
        inner_filled = (refill(expr.inner, v, values) for v in positions(expr.outer, el))
        return refill(expr.outer, el, inner_filled)
    raise TypeError(f"not a functor expression: {expr!r}")


def moore_functor(outputs: FinSet, alphabet: FinSet) -> FunctorExpr:
    """outputs x X^alphabet: the type of deterministic output automata."""
    return Prod(Const(outputs), Power(alphabet, Id()))
