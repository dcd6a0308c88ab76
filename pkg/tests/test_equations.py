import pytest

from wordeq import (
    Alphabet,
    BudgetExceeded,
    EqClass,
    Equation,
    EquationSyntaxError,
    Identity,
    InvalidPseudoSolution,
    MissingImage,
    MorphicPermutation,
    PseudoSolution,
    Solution,
    Word,
    align_equivalent_sides,
    bounded_rank_certificate,
    check_pseudo_solution,
    check_solution,
    close_pairs,
    descend,
    elementary_transform,
    enumerate_pseudo_solutions,
    is_in_monoid,
    parse_equation,
    solution_rank,
)

AB = Alphabet("ab")
ABC = Alphabet("abc")


def swap_ab():
    return MorphicPermutation.from_cycles(AB, "(a b)")


def three_letter_table():
    return close_pairs(
        ABC,
        [
            (ABC.word("a"), ABC.word("c")),
            (ABC.word("ab"), ABC.word("cb")),
            (ABC.word("bc"), ABC.word("ba")),
            (ABC.word("abc"), ABC.word("cba")),
        ],
    )


def length_one_swap():
    # a~b at length one; longer words only equivalent to themselves
    return close_pairs(AB, [(AB.word("a"), AB.word("b"))])


def psol(rel, e, **reps):
    alphabet = rel.alphabet
    return PseudoSolution(rel, {x: EqClass.of(rel, alphabet.word(t)) for x, t in reps.items()})


class TestParse:
    def test_commutation(self):
        e = parse_equation("x y = y x")
        assert e.unknowns.symbols == ("x", "y")
        assert str(e) == "x y = y x"

    def test_exponents(self):
        e = parse_equation("x^2 y^2 = z^4")
        assert e.occurrence_names() == (["x", "x", "y", "y"], ["z", "z", "z", "z"])

    def test_three_unknowns(self):
        e = parse_equation("x y z = z y x")
        assert e.occurrence_names() == (["x", "y", "z"], ["z", "y", "x"])

    def test_zero_exponent(self):
        with pytest.raises(EquationSyntaxError):
            parse_equation("x^0 y = y")

    def test_missing_equals(self):
        with pytest.raises(EquationSyntaxError):
            parse_equation("x y y x")

    def test_double_equals(self):
        with pytest.raises(EquationSyntaxError):
            parse_equation("x = y = x")

    def test_empty_side(self):
        with pytest.raises(EquationSyntaxError):
            parse_equation("= x y")

    def test_bad_exponent(self):
        with pytest.raises(EquationSyntaxError):
            parse_equation("x^two = y")


class TestCheckSolution:
    def test_three_unknown_solution(self):
        e = parse_equation("x y = z x")
        phi = Solution({"x": ABC.word("a"), "y": ABC.word("bca"), "z": ABC.word("abc")})
        assert check_solution(e, phi)

    def test_non_solution(self):
        e = parse_equation("x y = y x")
        phi = Solution({"x": AB.word("ab"), "y": AB.word("a")})
        assert not check_solution(e, phi)

    def test_all_epsilon(self):
        e = parse_equation("x y = y x")
        phi = Solution({"x": AB.word(""), "y": AB.word("")})
        assert check_solution(e, phi)

    def test_missing_image(self):
        e = parse_equation("x y = y x")
        with pytest.raises(MissingImage):
            check_solution(e, Solution({"x": AB.word("a")}))


class TestSolutionRank:
    def test_rank_two(self):
        phi = Solution({"x": ABC.word("a"), "y": ABC.word("bca"), "z": ABC.word("abc")})
        assert solution_rank(phi) == 2

    def test_powers(self):
        phi = Solution({"x": AB.word("a"), "y": AB.word("aa")})
        assert solution_rank(phi) == 1

    def test_all_epsilon(self):
        phi = Solution({"x": AB.word(""), "y": AB.word("")})
        assert solution_rank(phi) == 0


class TestCheckPseudoSolution:
    def test_table_instance(self):
        e = parse_equation("x y z = z y x")
        verdict = check_pseudo_solution(e, psol(three_letter_table(), e, x="abc", y="b", z="a"))
        assert verdict.valid
        assert str(verdict.common) == "abcba"
        assert [str(w) for w in verdict.lhs_language] == ["abcba", "abcbc", "cbaba", "cbabc"]
        assert [str(w) for w in verdict.rhs_language] == ["ababc", "abcba", "cbabc", "cbcba"]

    def test_length_one_swap_valid(self):
        e = parse_equation("x y = y x")
        verdict = check_pseudo_solution(e, psol(length_one_swap(), e, x="a", y="b"))
        assert verdict.valid
        assert [str(w) for w in verdict.lhs_language] == ["aa", "ab", "ba", "bb"]
        assert verdict.lhs_language == verdict.rhs_language

    def test_length_one_swap_invalid(self):
        e = parse_equation("x y = y x")
        verdict = check_pseudo_solution(e, psol(length_one_swap(), e, x="ab", y="a"))
        assert not verdict.valid
        assert verdict.common is None
        assert [str(w) for w in verdict.lhs_language] == ["aba", "abb"]
        assert [str(w) for w in verdict.rhs_language] == ["aab", "bab"]

    def test_swap_powers(self):
        e = parse_equation("x y = y x")
        verdict = check_pseudo_solution(e, psol(swap_ab(), e, x="aa", y="a"))
        assert verdict.valid
        assert str(verdict.common) == "aaa"
        assert [str(w) for w in verdict.lhs_language] == ["aaa", "aab", "bba", "bbb"]
        assert [str(w) for w in verdict.rhs_language] == ["aaa", "abb", "baa", "bbb"]


class TestAlign:
    def test_swap_recut(self):
        e = parse_equation("x y = y x")
        rel = swap_ab()
        got = align_equivalent_sides(
            e, rel, [AB.word("aa"), AB.word("a"), AB.word("b"), AB.word("bb")]
        )
        assert [str(w) for w in got] == ["aa", "a", "a", "aa"]

    def test_identity_returns_input(self):
        e = parse_equation("x y = y x")
        rel = Identity(AB)
        side_words = [AB.word("a"), AB.word("a"), AB.word("a"), AB.word("a")]
        assert list(align_equivalent_sides(e, rel, side_words)) == side_words

    def test_swap_single_letters(self):
        e = parse_equation("x y = y x")
        rel = swap_ab()
        got = align_equivalent_sides(e, rel, [AB.word("a"), AB.word("b"), AB.word("b"), AB.word("a")])
        assert [str(w) for w in got] == ["a", "b", "a", "b"]

    def test_exact_output_properties(self):
        e = parse_equation("x y = y x")
        rel = swap_ab()
        got = align_equivalent_sides(
            e, rel, [AB.word("aa"), AB.word("a"), AB.word("b"), AB.word("bb")]
        )
        lhs = sum((w.letters for w in got[:2]), ())
        rhs = sum((w.letters for w in got[2:]), ())
        assert lhs == rhs

    def test_rejects_nonequivalent_same_unknown(self):
        e = parse_equation("x y = y x")
        rel = swap_ab()
        with pytest.raises(ValueError):
            align_equivalent_sides(
                e, rel, [AB.word("aa"), AB.word("a"), AB.word("a"), AB.word("ab")]
            )

    def test_rejects_nonequivalent_sides(self):
        e = parse_equation("x y = y x")
        rel = Identity(AB)
        with pytest.raises(ValueError):
            align_equivalent_sides(
                e, rel, [AB.word("a"), AB.word("b"), AB.word("b"), AB.word("a")]
            )

    def test_rejects_wrong_arity(self):
        e = parse_equation("x y = y x")
        with pytest.raises(ValueError):
            align_equivalent_sides(e, Identity(AB), [AB.word("a")])


class TestDescend:
    def test_table_instance(self):
        e = parse_equation("x y z = z y x")
        result = descend(e, psol(three_letter_table(), e, x="abc", y="b", z="a"))
        sol = result.solution
        assert str(sol["x"]) == "[a] [b] [a]"
        assert str(sol["y"]) == "[b]"
        assert str(sol["z"]) == "[a]"
        assert result.solution_rank() == 2
        assert result.pseudo_rank() == 2
        assert check_solution(e, sol)

    def test_commutation_length_one(self):
        e = parse_equation("x y = y x")
        result = descend(e, psol(length_one_swap(), e, x="a", y="b"))
        assert str(result.solution["x"]) == "[a]"
        assert str(result.solution["y"]) == "[a]"
        assert result.solution_rank() == 1

    def test_identity_lifts_ordinary_solution(self):
        e = parse_equation("x y = z x")
        rel = Identity(ABC)
        result = descend(e, psol(rel, e, x="a", y="bca", z="abc"))
        # letter-for-letter the same solution, letters renamed to classes
        assert str(result.solution["x"]) == "[a]"
        assert str(result.solution["y"]) == "[bc] [a]"
        assert result.solution_rank() == 2

    def test_invalid_pseudo_solution_rejected(self):
        e = parse_equation("x y = y x")
        with pytest.raises(InvalidPseudoSolution):
            descend(e, psol(length_one_swap(), e, x="ab", y="a"))

    def test_all_epsilon(self):
        e = parse_equation("x y = y x")
        result = descend(e, psol(swap_ab(), e, x="", y=""))
        assert result.pseudo_rank() == 0
        assert result.solution_rank() == 0


class TestEnumerate:
    def test_swap_commutation_all_rank_one(self):
        e = parse_equation("x y = y x")
        rel = swap_ab()
        found = list(enumerate_pseudo_solutions(e, rel, 2))
        assert found
        for ps in found:
            assert descend(e, ps).pseudo_rank() <= 1

    def test_table_enumeration_contains_expected_witness(self):
        e = parse_equation("x y z = z y x")
        rel = three_letter_table()
        target = psol(rel, e, x="abc", y="b", z="a")
        assert any(ps == target for ps in enumerate_pseudo_solutions(e, rel, 3))

    def test_identity_max_len_zero(self):
        e = parse_equation("x y = y x")
        found = list(enumerate_pseudo_solutions(e, Identity(AB), 0))
        assert len(found) == 1
        assert all(len(c.rep) == 0 for c in found[0].images.values())

    def test_identity_emits_exactly_ordinary_solutions(self):
        e = parse_equation("x y = y x")
        identity = Identity(AB)
        found = {
            tuple(str(ps[x].rep) for x in "xy")
            for ps in enumerate_pseudo_solutions(e, identity, 2)
        }
        expect = set()
        for u in AB.words_up_to(2):
            for v in AB.words_up_to(2):
                if check_solution(e, Solution({"x": u, "y": v})):
                    expect.add((str(u), str(v)))
        assert found == expect

    def test_budget(self):
        e = parse_equation("x y = y x")
        with pytest.raises(BudgetExceeded) as exc:
            list(enumerate_pseudo_solutions(e, Identity(AB), 2, budget=5))
        assert exc.value.examined == 5

    def test_deterministic_order(self):
        e = parse_equation("x y = y x")
        rel = swap_ab()
        first = [repr(ps) for ps in enumerate_pseudo_solutions(e, rel, 2)]
        second = [repr(ps) for ps in enumerate_pseudo_solutions(e, rel, 2)]
        assert first == second


class TestCertificate:
    def test_commutation_swap(self):
        e = parse_equation("x y = y x")
        cert = bounded_rank_certificate(e, AB, swap_ab(), 3)
        assert cert.max_pseudo_rank == 1
        assert cert.descent_ok

    def test_ordinary_witness(self):
        e = parse_equation("x y = z x")
        cert = bounded_rank_certificate(e, ABC, Identity(ABC), 3)
        assert cert.max_ordinary_rank == 2
        w = cert.ordinary_witness
        assert (str(w["x"]), str(w["y"]), str(w["z"])) == ("a", "ba", "ab")

    def test_table_instance(self):
        e = parse_equation("x y z = z y x")
        cert = bounded_rank_certificate(e, ABC, three_letter_table(), 3)
        assert cert.max_pseudo_rank == 2
        assert cert.descent_ok

    def test_identity_reports_coincide(self):
        e = parse_equation("x y = y x")
        cert = bounded_rank_certificate(e, AB, Identity(AB), 2)
        assert cert.ordinary_count == cert.pseudo_count
        assert cert.max_ordinary_rank == cert.max_pseudo_rank


class TestElementaryTransform:
    def test_commutation_fixpoint(self):
        e = parse_equation("x y = y x")
        got = elementary_transform(e, "x", "y")
        assert str(got) == "x y = y x"

    def test_shortening(self):
        e = parse_equation("x y = z x")
        got = elementary_transform(e, "x", "z")
        assert str(got) == "y = z x"

    def test_rename(self):
        e = parse_equation("x y = y x")
        got = elementary_transform(e, "x", "y", rename=True)
        assert str(got) == "x x = x x"

    def test_rejects_same_unknown(self):
        e = parse_equation("x y = y x")
        with pytest.raises(ValueError):
            elementary_transform(e, "x", "x")

    def test_rejects_wrong_heads(self):
        e = parse_equation("x y = y x")
        with pytest.raises(ValueError):
            elementary_transform(e, "x", "z" if "z" in e.unknowns.symbols else "y" * 2)
        e2 = parse_equation("x y z = z y x")
        with pytest.raises(ValueError):
            elementary_transform(e2, "x", "y")

    def test_solution_set_preserved(self):
        # any solution of the transformed equation extends to one of the original
        e = parse_equation("x y = z x")
        transformed = elementary_transform(e, "x", "z")
        cert = bounded_rank_certificate(transformed, AB, Identity(AB), 3)
        count = 0
        for ps in enumerate_pseudo_solutions(transformed, Identity(AB), 3):
            psi = {x: c.rep for x, c in ps.images.items()}
            extended = dict(psi)
            extended["z"] = psi["x"] + psi["z"]
            assert check_solution(e, Solution(extended))
            count += 1
        assert count == cert.pseudo_count > 0


class TestDescentOnRandomTables:
    def test_descent_property_on_random_relations(self):
        import random

        from wordeq import pseudo_rank, verify_axioms

        rng = random.Random(4242)
        checked = 0
        for _ in range(25):
            size = rng.randint(2, 3)
            alphabet = Alphabet("abc"[:size])
            pairs = []
            for _ in range(rng.randint(1, 3)):
                n = rng.randint(1, 2)
                u = Word(alphabet, tuple(rng.randrange(size) for _ in range(n)))
                v = Word(alphabet, tuple(rng.randrange(size) for _ in range(n)))
                pairs.append((u, v))
            rel = close_pairs(alphabet, pairs)
            assert verify_axioms(rel, 3) is None
            e = parse_equation(
                rng.choice(["x y = y x", "x y z = z y x", "x x y = y x x", "x y = z x"])
            )
            for ps in enumerate_pseudo_solutions(e, rel, 2):
                result = descend(e, ps)
                assert check_solution(e, result.solution)
                assert result.solution_rank() == pseudo_rank(rel, ps.union_members())
                checked += 1
        assert checked > 500


class TestReversalNegativeControl:
    def test_literal_identity_holds(self):
        x, y, z = AB.word("aabaaab"), AB.word("a"), AB.word("aaba")
        lhs = x + x + y + y
        rhs = z + z + z.reverse() + z.reverse()
        assert lhs == rhs
        assert len(lhs) == 16

    def test_no_palindromic_generator_pair(self):
        targets = [AB.word("aabaaab"), AB.word("a"), AB.word("aaba")]
        for n in range(1, 8):
            for t in AB.words_of_length(n):
                basis = [t] if t == t.reverse() else [t, t.reverse()]
                assert not all(is_in_monoid(w, basis) for w in targets)
