import pytest

from barrlab import (BlowUpGuard, Compose, Const, Coprod, FinSet, Id, Power,
                     Prod, all_functions, carrier, eval_functor,
                     eval_functor_map, identity_fn, moore_functor)
from barrlab.functors import cardinality, map_element, positions, refill

A1 = FinSet("A", ("a",))
K2 = FinSet("k", (0, 1))

CORPUS = [
    Id(),
    Const(K2),
    Prod(Const(K2), Id()),
    Coprod(Const(FinSet("1", ("*",))), Prod(Const(A1), Id())),
    Power(A1, Id()),
    moore_functor(K2, FinSet("A", ("a", "b"))),
    Compose(Prod(Const(K2), Id()), Coprod(Id(), Id())),
]


def test_constant_and_identity_evaluation():
    X = carrier(3)
    assert eval_functor(Const(K2), X).elements == K2.elements
    assert eval_functor(Id(), X) == X


def test_moore_size_is_polynomial():
    # |k| * |X|^|A| with |k|=2, |A|=1, |X|=3
    X = carrier(3)
    assert len(eval_functor(moore_functor(K2, A1), X)) == 6


def test_cardinality_matches_enumeration():
    for expr in CORPUS:
        for n in range(4):
            assert cardinality(expr, n) == len(eval_functor(expr, carrier(n)))


def test_enumeration_is_deterministic():
    for expr in CORPUS:
        X = carrier(3)
        assert eval_functor(expr, X).elements == eval_functor(expr, X).elements


def test_map_preserves_identity_and_composition():
    sizes = [(2, 2), (2, 3), (3, 2), (0, 2)]
    for expr in CORPUS:
        for n in range(3):
            X = carrier(n)
            assert eval_functor_map(expr, identity_fn(X)) == identity_fn(eval_functor(expr, X))
        for (m, n) in sizes:
            X, Y, Z = carrier(m), carrier(n), carrier(2)
            for f in all_functions(X, Y):
                for g in all_functions(Y, Z):
                    lhs = eval_functor_map(expr, f.then(g))
                    rhs = eval_functor_map(expr, f).then(eval_functor_map(expr, g))
                    assert lhs == rhs


def test_pair_functor_maps_componentwise():
    # oracle: enumerate all pairs and apply f to each slot
    X = carrier(2)
    pair = Prod(Id(), Id())
    for f in all_functions(X, X):
        table = eval_functor_map(pair, f).table
        expected = {(x, y): (f(x), f(y)) for x in X for y in X}
        assert table == expected


def test_coproduct_tags_are_preserved():
    X, Y = carrier(2), carrier(2)
    expr = Coprod(Const(K2), Id())
    f = list(all_functions(X, Y))[1]
    Ff = eval_functor_map(expr, f)
    for tag, v in Ff.dom:
        out_tag, out_v = Ff((tag, v))
        assert out_tag == tag
        assert out_v == (v if tag == 0 else f(v))


def test_positions_and_refill_roundtrip():
    X = carrier(3)
    for expr in CORPUS:
        FX = eval_functor(expr, X)
        for el in FX:
            vals = positions(expr, el)
            assert all(v in X for v in vals)
            assert refill(expr, el, iter(vals)) == el
            # refilling is the pointwise arrow action
            bumped = refill(expr, el, iter([(v + 1) % 3 for v in vals]))
            assert bumped == map_element(expr, lambda v: (v + 1) % 3, el)


def test_blow_up_guard_trips(monkeypatch):
    monkeypatch.setenv("BARRLAB_BLOWUP_GUARD", "100")
    big = Power(FinSet("E", range(12)), Const(K2))
    with pytest.raises(BlowUpGuard):
        eval_functor(big, carrier(1))
    monkeypatch.delenv("BARRLAB_BLOWUP_GUARD")
    assert len(eval_functor(big, carrier(1))) == 2 ** 12
