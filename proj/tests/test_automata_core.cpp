#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/nfa.hpp"
#include "shufflekit/shuffle.hpp"

using namespace shufflekit;
using oracle::w;

namespace {

const Alphabet kAB({"a", "b"});

Nfa a_star(const Alphabet& alphabet) {
  Nfa m(alphabet);
  StateId s = m.add_state("s");
  m.set_start(s);
  m.set_final(s);
  m.add_transition(s, "a", s);
  return m;
}

Nfa a_plus_nfa() {
  Nfa m(Alphabet({"a"}));
  StateId q0 = m.add_state("q0"), q1 = m.add_state("q1");
  m.set_start(q0);
  m.set_final(q1);
  m.add_transition(q0, "a", q0);
  m.add_transition(q0, "a", q1);
  return m;
}

// a* b over {a,b}
Nfa a_star_b() {
  Nfa m(kAB);
  StateId s = m.add_state("s"), f = m.add_state("f");
  m.set_start(s);
  m.set_final(f);
  m.add_transition(s, "a", s);
  m.add_transition(s, "b", f);
  return m;
}

// a b* over {a,b}
Nfa a_b_star() {
  Nfa m(kAB);
  StateId s = m.add_state("s"), f = m.add_state("f");
  m.set_start(s);
  m.set_final(f);
  m.add_transition(s, "a", f);
  m.add_transition(f, "b", f);
  return m;
}

void require_same_language(const Nfa& a, const Nfa& b, std::size_t len) {
  for (const auto& x : oracle::words_up_to(a.alphabet().symbols(), len))
    REQUIRE_MESSAGE(oracle::nfa_run(a, x) == oracle::nfa_run(b, x), oracle::str(x));
}

}  // namespace

TEST_SUITE("automata_core") {
  TEST_CASE("alphabet indexing, merging and word formatting") {
    Alphabet a({"x", "y"});
    CHECK(a.index_of("y") == 1);
    CHECK_THROWS_AS(a.index_of("z"), InputError);
    CHECK_THROWS_AS(Alphabet({"x", "x"}), InputError);
    CHECK_THROWS_AS(Alphabet({kEpsilonToken}), InputError);
    CHECK(a.merged_with(Alphabet({"z", "x"})).symbols() == std::vector<Symbol>{"x", "y", "z"});
    CHECK(Alphabet({"y", "x"}).same_set(a));
    CHECK(Alphabet::of_word(w("bab")).symbols() == std::vector<Symbol>{"a", "b"});
    CHECK(format_word(w("abc")) == "abc");
    CHECK(format_word({}) == "[]");
    CHECK(format_word({"ab", "c"}) == "[\"ab\",\"c\"]");
    CHECK(parse_word("[\"ab\",\"c\"]") == Word{"ab", "c"});
    CHECK(parse_word("[]").empty());
    CHECK(parse_word("acb") == w("acb"));
  }

  TEST_CASE("accepts") {
    CHECK(accepts(a_star(kAB), {}));
    const Nfa n = naive_shuffle_nfa(w("ab"), w("cd"));
    CHECK(accepts(n, w("acbd")));
    CHECK_FALSE(accepts(n, w("abdc")));
    CHECK_THROWS_AS(accepts(n, w("abce")), InputError);
  }

  TEST_CASE("epsilon closure and removal") {
    Nfa m(kAB);
    StateId s = m.add_state("s"), t = m.add_state("t"), f = m.add_state("f");
    m.set_start(s);
    m.set_final(f);
    m.add_transition(s, kEpsilon, t);
    m.add_transition(t, "a", f);
    m.add_transition(f, kEpsilon, s);
    CHECK(epsilon_closure(m, {s}) == StateSet{s, t});
    const Nfa r = remove_epsilon(m);
    CHECK_FALSE(r.has_epsilon());
    require_same_language(m, r, 6);
  }

  TEST_CASE("determinize") {
    const Nfa d = determinize(a_plus_nfa());
    CHECK(d.is_complete_deterministic());
    for (std::size_t n = 0; n <= 6; ++n) CHECK(accepts(d, Word(n, "a")) == (n > 0));

    const Nfa dfa = determinize(a_star_b());
    CHECK(determinize(dfa).num_states() <= dfa.num_states() + 1);
    require_same_language(dfa, determinize(dfa), 6);

    const Nfa n = naive_shuffle_nfa(w("ab"), w("ab"));
    CHECK(equivalent(n, determinize(n)).holds);
  }

  TEST_CASE("complement") {
    const Nfa d = determinize(a_star(kAB));
    require_same_language(d, complement(complement(d)), 6);
    const Nfa everything = complement(determinize(empty_language_nfa(kAB)));
    CHECK(is_universal(everything).holds);
    const Nfa c = complement(d);
    for (const auto& x : oracle::words_up_to({"a", "b"}, 6))
      CHECK(accepts(c, x) == (std::count(x.begin(), x.end(), "b") > 0));
    CHECK_THROWS_AS(complement(a_plus_nfa()), ContractError);
  }

  TEST_CASE("intersect and union") {
    const Nfa i = intersect(a_star_b(), a_b_star());
    for (const auto& x : oracle::words_up_to({"a", "b"}, 5)) CHECK(accepts(i, x) == (x == w("ab")));
    const Nfa m = a_star_b();
    require_same_language(intersect(m, universal_nfa(kAB)), m, 6);
    CHECK(is_empty(intersect(m, complement(determinize(m)))).holds);

    require_same_language(nfa_union(m, empty_language_nfa(kAB)), m, 6);
    require_same_language(nfa_union(m, m), m, 6);
    const Nfa u = nfa_union(single_word_nfa(w("a"), kAB), single_word_nfa(w("b"), kAB));
    CHECK(oracle::nfa_language(u, 4) == std::set<Word>{w("a"), w("b")});
  }

  TEST_CASE("emptiness") {
    Nfa none(kAB);
    none.set_start(none.add_state("s"));
    CHECK(is_empty(none).holds);
    auto e = is_empty(a_star(kAB));
    CHECK_FALSE(e.holds);
    CHECK(e.witness == Word{});
    Nfa n = naive_shuffle_nfa(w("ab"), w("c"));
    e = is_empty(n);
    REQUIRE(e.witness);
    CHECK(e.witness->size() == 3);
    CHECK(accepts(n, *e.witness));
  }

  TEST_CASE("equivalence") {
    const Nfa m = a_star_b();
    CHECK(equivalent(m, m).holds);
    Nfa star = a_star(Alphabet({"a"}));
    auto e = equivalent(star, a_plus_nfa());
    CHECK_FALSE(e.holds);
    CHECK(e.witness == Word{});
    e = equivalent(naive_shuffle_nfa(w("ab"), w("ba")), naive_shuffle_nfa(w("ab"), w("ab")));
    REQUIRE(e.witness);
    CHECK(oracle::shuffle_set(w("ab"), w("ba")).count(*e.witness) !=
          oracle::shuffle_set(w("ab"), w("ab")).count(*e.witness));
  }

  TEST_CASE("trim and acyclicity") {
    Nfa m = a_star_b();
    StateId orphan = m.add_state("orphan");
    m.set_final(orphan);
    m.add_transition(orphan, "a", orphan);
    StateId dead = m.add_state("dead");
    m.add_transition(0, "b", dead);
    const Nfa t = trim(m);
    CHECK(t.num_states() == 2);
    require_same_language(m, t, 6);
    CHECK(trim(a_star_b()).num_states() == 2);

    CHECK(is_acyclic(naive_shuffle_nfa(w("abb"), w("ba"))));
    CHECK_FALSE(is_acyclic(a_star(kAB)));
  }

  TEST_CASE("universality") {
    CHECK(universal_nfa(kAB).num_states() == 1);
    CHECK(is_universal(universal_nfa(kAB)).holds);
    Nfa no_b = finite_language_nfa({w(""), w("a"), w("aa")}, kAB);
    Nfa m = complement(determinize(single_word_nfa(w("b"), kAB)));
    auto e = is_universal(m);
    CHECK_FALSE(e.holds);
    CHECK(e.witness == w("b"));
    CHECK_FALSE(is_universal(no_b).holds);
  }

  TEST_CASE("property: constructions agree with set simulation on random NFAs") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 60; ++round) {
      const Nfa a = oracle::random_nfa(rng, {"a", "b"}, 1 + round % 5, 0.3);
      const Nfa b = oracle::random_nfa(rng, {"a", "b"}, 1 + (round * 3) % 4, 0.35);
      const Nfa da = determinize(a);
      const Nfa ca = complement(da);
      const Nfa ab = intersect(a, b);
      const Nfa uab = nfa_union(a, b);
      const Nfa ta = trim(a);
      for (const auto& x : oracle::words_up_to({"a", "b"}, 6)) {
        const bool in_a = oracle::nfa_run(a, x), in_b = oracle::nfa_run(b, x);
        REQUIRE(accepts(a, x) == in_a);
        REQUIRE(accepts(da, x) == in_a);
        REQUIRE(accepts(ca, x) == !in_a);
        REQUIRE(accepts(ab, x) == (in_a && in_b));
        REQUIRE(accepts(uab, x) == (in_a || in_b));
        REQUIRE(accepts(ta, x) == in_a);
      }
      const auto e = is_empty(a);
      CHECK(e.holds == oracle::nfa_language(a, static_cast<std::size_t>(a.num_states())).empty());
      const auto eq = equivalent(a, b);
      if (!eq.holds) {
        REQUIRE(eq.witness);
        CHECK(oracle::nfa_run(a, *eq.witness) != oracle::nfa_run(b, *eq.witness));
      } else {
        require_same_language(a, b, 6);
      }
    }
  }
}
