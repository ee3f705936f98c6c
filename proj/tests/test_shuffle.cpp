#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/semilinear.hpp"
#include "shufflekit/shuffle.hpp"

using namespace shufflekit;
using oracle::w;

TEST_SUITE("shuffle") {
  TEST_CASE("naive automaton shape") {
    CHECK(naive_shuffle_nfa(w("ab"), w("cd")).num_states() == 9);
    const Nfa e = naive_shuffle_nfa({}, {}, Alphabet({"a"}));
    CHECK(e.num_states() == 1);
    CHECK(accepts(e, {}));
    CHECK_FALSE(accepts(e, w("a")));
    CHECK(oracle::nfa_language(naive_shuffle_nfa(w("a"), w("b")), 3) == std::set<Word>{w("ab"), w("ba")});
    const Nfa n = naive_shuffle_nfa(w("ab"), w("cd"));
    CHECK(n.state_name(grid_state_id({1, 2}, 2)) == "(1,2)");
  }

  TEST_CASE("disjoint letters give a DFA") {
    CHECK(is_dfa_when_disjoint(w("aa"), w("bb")));
    CHECK_FALSE(is_dfa_when_disjoint(w("ab"), w("ba")));
    CHECK(is_dfa_when_disjoint(Word(4, "a"), Word(3, "b")));
    CHECK(naive_shuffle_nfa(Word(4, "a"), Word(3, "b")).is_deterministic());
    CHECK_FALSE(naive_shuffle_nfa(w("ab"), w("ba")).is_deterministic());
  }

  TEST_CASE("grid membership") {
    CHECK_FALSE(word_in_shuffle(w("abc"), w("ab"), w("cd")));
    CHECK(word_in_shuffle(w("acbd"), w("ab"), w("cd")));
    CHECK_FALSE(word_in_shuffle(w("ba"), w("a"), w("a")));
  }

  TEST_CASE("shuffle of automata") {
    const Alphabet a({"a"}), b({"b"});
    Nfa lambda(a);
    lambda.set_final(lambda.add_state("s"));
    const Nfa m2 = single_word_nfa(w("aa"), a);
    CHECK(equivalent(shuffle_nfas(lambda, m2), m2).holds);

    const Nfa both = shuffle_nfas(universal_nfa(a), universal_nfa(b));
    CHECK(is_universal(both).holds);

    const Nfa s = shuffle_nfas(single_word_nfa(w("ab"), Alphabet({"a", "b"})),
                               single_word_nfa(w("cd"), Alphabet({"c", "d"})));
    CHECK(equivalent(s, naive_shuffle_nfa(w("ab"), w("cd"), s.alphabet())).holds);
  }

  TEST_CASE("enumeration") {
    CHECK(enumerate_shuffle({}, {}) == std::set<Word>{Word{}});
    CHECK(enumerate_shuffle(w("a"), w("b")) == std::set<Word>{w("ab"), w("ba")});
    const Alphabet ab({"a", "b"});
    for (const auto& x : enumerate_shuffle(w("ab"), w("ab"))) {
      CHECK(x.size() == 4);
      CHECK(parikh(x, ab) == ParikhVector{2, 2});
    }
    CHECK(enumerate_shuffle(w("ab"), w("ab")) == std::set<Word>{w("aabb"), w("abab")});
    CHECK_THROWS_AS(enumerate_shuffle(Word(9, "a"), Word(8, "b")), ResourceError);
    CHECK(enumerate_shuffle(Word(3, "a"), Word(3, "b"), 6).size() == 20);
  }

  TEST_CASE("property: routes agree on random words") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> letters{"a", "b", "c"};
    for (int round = 0; round < 200; ++round) {
      const Word u = oracle::random_word(rng, letters, 4), v = oracle::random_word(rng, letters, 4);
      const auto set = oracle::shuffle_set(u, v);
      REQUIRE(enumerate_shuffle(u, v) == set);
      const Nfa n = naive_shuffle_nfa(u, v, Alphabet(letters));
      REQUIRE(n.num_states() == (u.size() + 1) * (v.size() + 1));
      REQUIRE(is_acyclic(trim(n)));
      for (const auto& x : oracle::words_of_length(letters, u.size() + v.size())) {
        const bool in = set.count(x) > 0;
        REQUIRE(word_in_shuffle(x, u, v) == in);
        REQUIRE(oracle::in_shuffle(x, u, v) == in);
        REQUIRE(accepts(n, x) == in);
      }
      // commutativity
      REQUIRE(enumerate_shuffle(v, u) == set);
    }
  }

  TEST_CASE("property: shuffle of random NFAs matches pairwise interleaving") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 20; ++round) {
      const Nfa a = oracle::random_nfa(rng, {"a", "b"}, 3, 0.3);
      const Nfa b = oracle::random_nfa(rng, {"b", "c"}, 3, 0.3);
      const Nfa s = shuffle_nfas(a, b);
      const auto la = oracle::nfa_language(a, 4), lb = oracle::nfa_language(b, 4);
      std::set<Word> expected;
      for (const auto& x : la)
        for (const auto& y : lb)
          if (x.size() + y.size() <= 4)
            for (const auto& z : oracle::shuffle_set(x, y)) expected.insert(z);
      std::set<Word> got;
      for (const auto& x : oracle::words_up_to(s.alphabet().symbols(), 4))
        if (accepts(s, x)) got.insert(x);
      REQUIRE(got == expected);
    }
  }
}
