import random

import pytest
from hypothesis import given, settings, strategies as st

from cosetint.groups import FiniteAbelianGroup, SubgroupGens, subgroup_enumerate
from cosetint.model import (
    ProblemInstance,
    SolveResult,
    SubsetS,
    oracle_solve,
    verify_certificate,
    witness_point,
)

from helpers import (
    enum_oracle,
    flatten,
    random_instance,
    random_subset,
    small_groups,
    unflatten,
)


Z4 = FiniteAbelianGroup((4,))


class TestSubsetS:
    def test_validates_membership(self):
        with pytest.raises(ValueError):
            SubsetS.of(Z4, [(4,)])

    def test_dedup_and_contains(self):
        S = SubsetS.of(Z4, [(1,), (1,), (3,)])
        assert len(S) == 2
        assert (1,) in S and (0,) not in S

    def test_translate_dilate(self):
        S = SubsetS.of(Z4, [(1,), (3,)])
        assert S.translate((1,)).sorted_elements() == ((0,), (2,))
        assert S.dilate(2).sorted_elements() == ((2,),)


class TestProblemInstance:
    def test_length_checks(self):
        with pytest.raises(ValueError):
            ProblemInstance(Z4, 2, ((0,),), ())
        with pytest.raises(ValueError):
            ProblemInstance(Z4, 1, ((0,),), (((1,), (2,)),))

    def test_homogeneous_flag(self):
        assert ProblemInstance(Z4, 1, ((0,),), (((2,),),)).is_homogeneous()
        assert not ProblemInstance(Z4, 1, ((1,),), ()).is_homogeneous()


class TestVerifyCertificate:
    def test_t0_vacuous(self):
        inst = ProblemInstance(Z4, 0, (), ())
        assert verify_certificate(inst, SubsetS.of(Z4, []), ())

    def test_worked_example(self):
        inst = ProblemInstance(Z4, 1, ((1,),), (((2,),),))
        S = SubsetS.of(Z4, [(0,), (1,)])
        assert verify_certificate(inst, S, (0,))
        assert not verify_certificate(inst, S, (1,))

    def test_length_mismatch(self):
        inst = ProblemInstance(Z4, 1, ((1,),), (((2,),),))
        with pytest.raises(ValueError):
            verify_certificate(inst, SubsetS.of(Z4, [(0,)]), (0, 0))

    def test_coefficients_mod_exponent(self):
        inst = ProblemInstance(Z4, 1, ((1,),), (((2,),),))
        S = SubsetS.of(Z4, [(1,)])
        assert verify_certificate(inst, S, (4,)) == verify_certificate(inst, S, (0,))


class TestOracleSolve:
    def test_yes_with_smallest_cert(self):
        inst = ProblemInstance(Z4, 1, ((1,),), (((2,),),))
        res = oracle_solve(inst, SubsetS.of(Z4, [(0,), (1,)]))
        assert res == SolveResult("yes", (0,))

    def test_no(self):
        inst = ProblemInstance(Z4, 1, ((3,),), ())
        assert oracle_solve(inst, SubsetS.of(Z4, [(0,), (1,)])).kind == "no"

    def test_t0_always_yes(self):
        inst = ProblemInstance(Z4, 0, (), ())
        assert oracle_solve(inst, SubsetS.of(Z4, [])) == SolveResult("yes", ())

    def test_budget_exceeded_is_a_value(self):
        G = FiniteAbelianGroup((8,))
        inst = ProblemInstance(
            G, 4, tuple((1,) for _ in range(4)),
            tuple(tuple((i == j,) for i in range(4)) for j in range(4)),
        )
        res = oracle_solve(inst, SubsetS.of(G, [(7,)]), budget=5)
        assert res == SolveResult("budget_exceeded")

    def test_agrees_with_enumeration_oracle(self):
        rng = random.Random(20240817)
        groups = [G for G in small_groups(8) if G.order <= 8]
        for trial in range(1000):
            G = rng.choice(groups)
            inst = random_instance(rng, G)
            S = random_subset(rng, G)
            res = oracle_solve(inst, S)
            assert res.kind in ("yes", "no")
            assert (res.kind == "yes") == enum_oracle(inst, S), (inst, sorted(S.elements))
            if res.kind == "yes":
                assert verify_certificate(inst, S, res.certificate)

    def test_invariant_under_permutation_and_negation(self):
        rng = random.Random(7)
        groups = [G for G in small_groups(8) if G.order <= 8]
        for trial in range(200):
            G = rng.choice(groups)
            inst = random_instance(rng, G)
            S = random_subset(rng, G)
            base = oracle_solve(inst, S).kind
            perm = list(inst.hgens)
            rng.shuffle(perm)
            Gt = G.power(inst.t)
            perm = [
                unflatten(G, inst.t, Gt.neg(flatten(G, gen))) if rng.random() < 0.5 else gen
                for gen in perm
            ]
            twisted = ProblemInstance(G, inst.t, inst.xstar, tuple(perm))
            assert oracle_solve(twisted, S).kind == base

    def test_lex_smallest_certificate(self):
        rng = random.Random(99)
        for trial in range(200):
            G = rng.choice([FiniteAbelianGroup((4,)), FiniteAbelianGroup((2, 2)), FiniteAbelianGroup((6,))])
            inst = random_instance(rng, G, max_t=2, max_gens=2)
            S = random_subset(rng, G)
            res = oracle_solve(inst, S)
            if res.kind != "yes":
                continue
            exp = G.exponent
            all_certs = [(a, b) for a in range(exp) for b in range(exp)] if len(inst.hgens) == 2 \
                else ([(a,) for a in range(exp)] if len(inst.hgens) == 1 else [()])
            verifying = [c for c in all_certs if verify_certificate(inst, S, c)]
            assert res.certificate == min(verifying)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_yes_implies_verifies(self, data):
        moduli = tuple(data.draw(st.lists(st.integers(2, 4), min_size=1, max_size=2)))
        G = FiniteAbelianGroup(moduli)
        t = data.draw(st.integers(0, 2))
        elem = st.tuples(*(st.integers(0, d - 1) for d in moduli))
        inst = ProblemInstance(
            G, t,
            tuple(data.draw(elem) for _ in range(t)),
            tuple(tuple(data.draw(elem) for _ in range(t))
                  for _ in range(data.draw(st.integers(0, 2)))),
        )
        S = SubsetS.of(G, data.draw(st.sets(elem, max_size=G.order)))
        res = oracle_solve(inst, S)
        if res.kind == "yes":
            assert verify_certificate(inst, S, res.certificate)
            assert witness_point(inst, res.certificate) in [witness_point(inst, res.certificate)]
