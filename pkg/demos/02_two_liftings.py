"""One functor, two distributive laws, two different liftings.

Over the writer monad of a group G, the functor G x X admits (at least) two
distributive laws: one built from the group multiplication, one from
conjugation.  Both satisfy the axioms, but they induce different algebra
structures on lifted carriers, so "the" lifting of a functor is genuinely
extra structure.  Already over Z/2 the two laws differ: conjugation
degenerates to the swap rule, which is not the multiplication rule.
"""

from barrlab import (carrier, check_distlaw_em, cyclic_group, free_algebra,
                     gset_distlaws, lift_algebra, symmetric_group)

for group in (symmetric_group(3), cyclic_group(2)):
    law_mult, law_conj = gset_distlaws(group)
    print(f"=== group {group.name} ===")
    for law in (law_mult, law_conj):
        report = check_distlaw_em(law, 2)
        print(f"  {law.name:<18} axioms: {'PASS' if report.passed else 'FAIL'}")

    base = free_algebra(law_mult.M, carrier(1))
    lifted_mult = lift_algebra(law_mult, base)
    lifted_conj = lift_algebra(law_conj, base)
    same = lifted_mult.same_table_as(lifted_conj)
    print(f"  liftings of the free algebra on one generator "
          f"{'coincide' if same else 'differ'}")
    if not same:
        t1, t2 = lifted_mult.structure(), lifted_conj.structure()
        for el in t1.dom:
            if t1(el) != t2(el):
                print(f"  witness: {el}")
                print(f"    multiplication law sends it to {t1(el)}")
                print(f"    conjugation law sends it to    {t2(el)}")
                break
    print()
