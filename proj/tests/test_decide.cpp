#include "doctest.h"
#include "oracles.hpp"
#include "shufflekit/decide.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/fixtures.hpp"
#include "shufflekit/shuffle.hpp"

using namespace shufflekit;
using oracle::w;

namespace {

const Alphabet kAB({"a", "b"});

Nfa unary_finite(std::vector<std::size_t> lengths) {
  std::vector<Word> ws;
  for (auto n : lengths) ws.push_back(Word(n, "a"));
  return finite_language_nfa(ws, Alphabet({"a"}));
}

Nfa star_of(const std::string& letter, const Alphabet& alphabet) {
  Nfa m(alphabet);
  StateId s = m.add_state("s");
  m.set_start(s);
  m.set_final(s);
  m.add_transition(s, letter, s);
  return m;
}

bool unary_accepts_by_simulation(const Nfa& m, std::uint64_t d) {
  std::set<StateId> cur{m.start()};
  for (std::uint64_t i = 0; i < d; ++i) {
    std::set<StateId> next;
    for (StateId q : cur)
      for (const Edge& e : m.edges(q)) next.insert(e.target);
    cur = next;
  }
  for (StateId q : cur)
    if (m.is_final(q)) return true;
  return false;
}

}  // namespace

TEST_SUITE("decide") {
  TEST_CASE("word shuffle inside a language") {
    CHECK(word_shuffle_subset_lang(w("ab"), w("cd"), naive_shuffle_nfa(w("ab"), w("cd"))).holds);
    const auto o = word_shuffle_subset_lang(w("a"), w("b"), single_word_nfa(w("ab"), kAB));
    CHECK_FALSE(o.holds);
    CHECK(o.witness == w("ba"));
    CHECK(o.method.find("holds=") != std::string::npos);
  }

  TEST_CASE("language inside a word shuffle") {
    CHECK(lang_subset_word_shuffle(empty_language_nfa(kAB), w("ab"), w("ba")).holds);
    CHECK(lang_subset_word_shuffle(naive_shuffle_nfa(w("ab"), w("ba")), w("ab"), w("ba")).holds);
    const Nfa extra = nfa_union(naive_shuffle_nfa(w("ab"), w("ba"), kAB), single_word_nfa(w("bbaa"), kAB));
    auto o = lang_subset_word_shuffle(extra, w("ab"), w("ba"));
    CHECK_FALSE(o.holds);
    CHECK(o.witness == w("bbaa"));
    o = lang_subset_word_shuffle(star_of("a", kAB), w("a"), w("a"));
    CHECK_FALSE(o.holds);
    CHECK(o.witness->size() != 2);
  }

  TEST_CASE("language equal to a word shuffle") {
    CHECK(lang_equals_word_shuffle(naive_shuffle_nfa(w("ab"), w("ba")), w("ab"), w("ba")).holds);
    const Nfa sub = finite_language_nfa({w("abba"), w("aabb")}, kAB);
    auto o = lang_equals_word_shuffle(sub, w("ab"), w("ba"));
    CHECK_FALSE(o.holds);
    REQUIRE(o.witness);
    CHECK(oracle::in_shuffle(*o.witness, w("ab"), w("ba")));
    CHECK_FALSE(oracle::nfa_run(sub, *o.witness));
    const Nfa sup = nfa_union(naive_shuffle_nfa(w("ab"), w("ba"), kAB), single_word_nfa(w("bbbb"), kAB));
    o = lang_equals_word_shuffle(sup, w("ab"), w("ba"));
    CHECK_FALSE(o.holds);
    CHECK(o.witness == w("bbbb"));
  }

  TEST_CASE("regular shuffle inside a deterministic pushdown language") {
    const Alphabet ab = kAB;
    const Nfa a = single_word_nfa(w("a"), ab), b = single_word_nfa(w("b"), ab);
    Npda both = npda_with_alphabet(equal_ab_dpda(), ab);
    CHECK(shuffle_inclusion_regular_dpda(a, b, both).holds);
    const auto o = shuffle_inclusion_regular_dpda(star_of("a", ab), star_of("b", ab), equal_ab_dpda());
    CHECK_FALSE(o.holds);
    REQUIRE(o.witness);
    CHECK_FALSE(oracle::is_equal_ab(*o.witness));
    CHECK(o.witness->size() == 1);
    CHECK_THROWS_AS(shuffle_inclusion_regular_dpda(a, b, [] {
                      Npda m(Alphabet({"a", "b"}), Alphabet({"Z"}));
                      StateId s = m.add_state("s");
                      m.set_start(s);
                      m.add_rule({s, 0, 0, s, {0}});
                      m.add_rule({s, 0, 0, s, {}});
                      return m;
                    }()),
                    ContractError);
  }

  TEST_CASE("counter shuffle inside a deterministic counter language") {
    const Ncm a = ncm_from_nfa(single_word_nfa(w("a"), kAB)), b = ncm_from_nfa(single_word_nfa(w("b"), kAB));
    const Ncm both = ncm_from_nfa(determinize(finite_language_nfa({w("ab"), w("ba")}, kAB)));
    CHECK(shuffle_inclusion_ncm_dcm(a, b, both).holds);
    const Ncm one = ncm_from_nfa(determinize(single_word_nfa(w("ab"), kAB)));
    const auto o = shuffle_inclusion_ncm_dcm(a, b, one);
    CHECK_FALSE(o.holds);
    CHECK(o.witness == w("ba"));
    Ncm lambda(0, 1, kAB);
    lambda.set_final(lambda.add_state("s"));
    CHECK(shuffle_inclusion_ncm_dcm(lambda, lambda, dcm_complement(anbn_dcm())).holds);
    // complete DFA sources carry a sink state that must not widen the search
    const Ncm eps = ncm_from_nfa(determinize(finite_language_nfa({Word{}}, kAB)));
    const auto same = shuffle_inclusion_ncm_dcm(eps, anbn_dcm(), anbn_dcm());
    CHECK(same.holds);
    CHECK(same.stats.at("emptiness.useless_states") > 0);
  }

  TEST_CASE("unary lengths in binary") {
    Nfa start_final = unary_finite({0});
    CHECK(unary_finite_shuffle_inclusion({0}, {0}, start_final).holds);
    const auto ok = unary_finite_shuffle_inclusion({1, 2}, {3}, unary_finite({4, 5}));
    CHECK(ok.holds);
    const auto bad = unary_finite_shuffle_inclusion({1}, {1}, unary_finite({3}));
    CHECK_FALSE(bad.holds);
    CHECK(bad.witness == w("10"));
    CHECK(bad.stats.at("failing_length") == 2);
    CHECK_THROWS_AS(unary_finite_shuffle_inclusion({1}, {1}, naive_shuffle_nfa(w("a"), w("b"))), InputError);
    CHECK(parse_binary_list("1,10,0") == std::vector<std::uint64_t>{1, 2, 0});
    CHECK_THROWS_AS(parse_binary_list("12"), InputError);
    CHECK(to_binary(0) == "0");
    CHECK(to_binary(6) == "110");
  }

  TEST_CASE("finite shuffle outside a pushdown language") {
    const Alphabet abc({"a", "b", "c"});
    const Npda m = npda_with_alphabet(anbn_dpda(), abc);
    CHECK_FALSE(finite_shuffle_npda_noninclusion({w("ab")}, {{}}, m).holds);
    CHECK_FALSE(finite_shuffle_npda_noninclusion({}, {w("c")}, m).holds);
    const auto o = finite_shuffle_npda_noninclusion({w("ab")}, {w("c")}, m);
    CHECK(o.holds);
    REQUIRE(o.witness);
    CHECK(oracle::in_shuffle(*o.witness, w("ab"), w("c")));
    CHECK_THROWS_AS(finite_shuffle_npda_noninclusion({Word(300, "a")}, {Word(300, "b")}, m), ResourceError);
  }

  TEST_CASE("commutative shuffle of semilinear sets") {
    const SemilinearSet all{kAB, {LinearSet{{0, 0}, {{1, 0}, {0, 1}}}}};
    CHECK(comm_semilinear_shuffle_superset(universal_nfa(kAB), all, all).holds);
    const auto qa = sl_singleton(kAB, {1, 0}), qb = sl_singleton(kAB, {0, 1});
    auto o = comm_semilinear_shuffle_superset(single_word_nfa(w("ab"), kAB), qa, qb);
    CHECK(o.holds);
    CHECK_FALSE(o.bounded);
    o = comm_semilinear_shuffle_superset(single_word_nfa(w("aab"), kAB), qa, qb);
    CHECK_FALSE(o.holds);
    CHECK(o.witness == w("aab"));
    o = comm_semilinear_shuffle_superset(universal_nfa(kAB), all, all);
    CHECK(o.bounded);
  }

  TEST_CASE("disjoint deterministic counter shuffle") {
    const Alphabet abc({"a", "b", "c"});
    const Ncm c = ncm_from_nfa(determinize(single_word_nfa(w("c"), Alphabet({"c"}))));
    CHECK(disjoint_alphabet_dcm_shuffle_superset(single_word_nfa(w("acb"), abc), anbn_dcm(), c).holds);
    const auto o = disjoint_alphabet_dcm_shuffle_superset(single_word_nfa(w("ab"), abc), anbn_dcm(), c);
    CHECK_FALSE(o.holds);
    CHECK(o.witness == w("ab"));
    CHECK(disjoint_alphabet_dcm_shuffle_superset(empty_language_nfa(abc), anbn_dcm(), c).holds);
  }

  TEST_CASE("property: word-shuffle procedures agree with enumeration") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 80; ++round) {
      const Word u = oracle::random_word(rng, {"a", "b"}, 4), v = oracle::random_word(rng, {"a", "b"}, 4);
      const Nfa m = round % 3 == 0 ? determinize(oracle::random_nfa(rng, {"a", "b"}, 4, 0.4))
                                   : oracle::random_nfa(rng, {"a", "b"}, 3 + round % 4, 0.3);
      const auto set = oracle::shuffle_set(u, v);
      bool all_in = true;
      for (const auto& x : set) all_in = all_in && oracle::nfa_run(m, x);
      const auto o1 = word_shuffle_subset_lang(u, v, m);
      REQUIRE(o1.holds == all_in);

      bool inside = true;
      for (const auto& x : oracle::nfa_language(m, u.size() + v.size() + m.num_states()))
        if (!set.count(x)) inside = false;
      const auto o2 = lang_subset_word_shuffle(m, u, v);
      REQUIRE(o2.holds == inside);
      if (!o2.holds) REQUIRE((oracle::nfa_run(m, *o2.witness) && !set.count(*o2.witness)));
      REQUIRE(lang_equals_word_shuffle(m, u, v).holds == (inside && all_in));
    }
  }

  TEST_CASE("property: unary procedure agrees with simulation") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 15; ++round) {
      Nfa m = oracle::random_nfa(rng, {"a"}, 2 + round % 5, 0.4);
      for (std::uint64_t d = 0; d <= 200; d += 1 + round % 3) {
        const auto o = unary_finite_shuffle_inclusion({d / 2}, {d - d / 2}, m);
        REQUIRE(o.holds == unary_accepts_by_simulation(m, d));
      }
    }
  }
}
