"""The natural join of two tables, computed as a dependent product.

A schema S with attributes A, B, C and relations R on AB and Q on BC is an
instance of the 2-simplex. An instance I of S lives over the elements of S.
Π_S I, back over the 2-simplex, is the join R ⋈ Q together with its faces.
"""

from simpdb.complex import simplex
from simpdb.instance import count_full_tuples, elements, full_tuples, make_instance
from simpdb.render import format_tuple, render_ascii
from simpdb.semantics import apply_tuple, pi
from simpdb.values import Atom, Pair


def main():
    D2 = simplex(2)
    S = make_instance(D2, {"0": ["A"], "1": ["B"], "2": ["C"], "01": [("A", "B")], "12": [("B", "C")]})
    E, _ = elements(D2, S)
    A, B, C = (Pair(Atom(str(k)), Atom(x)) for k, x in enumerate("ABC"))
    I = make_instance(
        E,
        {
            (A,): ["a", "a'"],
            (B,): ["b", "d"],
            (C,): ["c", "e"],
            (A, B): [("a", "b"), ("a'", "b")],
            (B, C): [("b", "c"), ("d", "e")],
        },
    )
    print("I, over the elements of S:")
    print(render_ascii(I))
    P = pi(D2, S, I)
    print("Π_S I, over the 2-simplex (one-entry families shown by their entry):")
    print(render_ascii(P, compact=True))
    print(f"I has {count_full_tuples(I)} full tuples; each is the image of one full tuple of Π_S I:")
    for s in full_tuples(P):
        print(" ", format_tuple(s, compact=True), "↦", format_tuple(apply_tuple(D2, S, I, s)))


if __name__ == "__main__":
    main()
