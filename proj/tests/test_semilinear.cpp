#include "doctest.h"
#include "oracles.hpp"
#include "shufflekit/bool_matrix.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/regex.hpp"
#include "shufflekit/semilinear.hpp"
#include "shufflekit/shuffle.hpp"

using namespace shufflekit;
using oracle::w;

namespace {

const Alphabet kAB({"a", "b"});

SemilinearSet linear(ParikhVector c, std::vector<ParikhVector> periods) {
  return SemilinearSet{kAB, {LinearSet{std::move(c), std::move(periods)}}};
}

SemilinearSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> comps(1, 2), periods(0, 2), entry(0, 2);
  SemilinearSet q{kAB, {}};
  for (int c = comps(rng); c > 0; --c) {
    LinearSet l{{entry(rng), entry(rng)}, {}};
    for (int p = periods(rng); p > 0; --p) l.periods.push_back({entry(rng), entry(rng)});
    q.components.push_back(l);
  }
  return q;
}

Nfa ab_star() {
  Nfa m(kAB);
  StateId s = m.add_state("s"), t = m.add_state("t");
  m.set_start(s);
  m.set_final(s);
  m.add_transition(s, "a", t);
  m.add_transition(t, "b", s);
  return m;
}

}  // namespace

TEST_SUITE("semilinear") {
  TEST_CASE("Parikh vectors") {
    CHECK(parikh({}, kAB) == ParikhVector{0, 0});
    CHECK(parikh(w("aab"), kAB) == ParikhVector{2, 1});
    CHECK(add({1, 2}, {3, 4}) == ParikhVector{4, 6});
    CHECK(is_zero({0, 0}));
    for (const auto& x : enumerate_shuffle(w("aba"), w("bb"))) CHECK(parikh(x, kAB) == ParikhVector{2, 3});
  }

  TEST_CASE("membership") {
    CHECK(sl_membership(sl_singleton(kAB, {2, 1}), {2, 1}));
    const auto q = linear({0, 0}, {{1, 1}});
    CHECK(sl_membership(q, {3, 3}));
    CHECK_FALSE(sl_membership(q, {2, 3}));
    CHECK_FALSE(sl_membership(sl_empty(kAB), {0, 0}));
    CHECK_THROWS_AS(sl_membership(q, {1}), InputError);
    CHECK(linear_membership(LinearSet{{1, 0}, {{2, 0}, {0, 3}}}, {5, 6}));
    CHECK_FALSE(linear_membership(LinearSet{{1, 0}, {{2, 0}, {0, 3}}}, {4, 6}));
  }

  TEST_CASE("sum, union and star") {
    const auto q = linear({1, 0}, {{1, 2}});
    const auto s = sl_sum(q, sl_singleton(kAB, {0, 0}));
    for (const auto& v : oracle::semilinear_members(q, 8)) CHECK(sl_membership(s, v));
    CHECK(sl_sum(sl_singleton(kAB, {1, 0}), sl_singleton(kAB, {0, 1})).components.size() == 1);
    CHECK(sl_membership(sl_sum(sl_singleton(kAB, {1, 0}), sl_singleton(kAB, {0, 1})), {1, 1}));
    const auto u = sl_union(sl_singleton(kAB, {1, 0}), sl_singleton(kAB, {0, 1}));
    CHECK(sl_members_up_to(u, 3).size() == 2);
    const auto st = sl_star(u);
    for (std::int64_t i = 0; i <= 4; ++i)
      for (std::int64_t j = 0; j <= 4; ++j) CHECK(sl_membership(st, {i, j}));
    CHECK(sl_membership(sl_star(sl_singleton(kAB, {2, 1})), {0, 0}));
    CHECK_FALSE(sl_membership(sl_star(sl_singleton(kAB, {2, 1})), {3, 1}));
  }

  TEST_CASE("simplify drops covered components") {
    SemilinearSet q{kAB, {LinearSet{{0, 0}, {{1, 0}}}, LinearSet{{2, 0}, {}}, LinearSet{{0, 0}, {{1, 0}, {0, 0}}}}};
    q.simplify();
    CHECK(q.components.size() == 1);
    CHECK(q.has_periods());
  }

  TEST_CASE("Parikh image of automata") {
    Nfa astar(Alphabet({"a"}));
    StateId s = astar.add_state("s");
    astar.set_start(s);
    astar.set_final(s);
    astar.add_transition(s, "a", s);
    const auto img = nfa_parikh_image(astar);
    CHECK(sl_membership(img, {0}));
    CHECK(sl_membership(img, {7}));

    const auto ab = nfa_parikh_image(ab_star());
    for (std::int64_t i = 0; i <= 6; ++i)
      for (std::int64_t j = 0; j <= 6; ++j) CHECK(sl_membership(ab, {i, j}) == (i == j));
  }

  TEST_CASE("commutative membership") {
    const Nfa only_ab = single_word_nfa(w("ab"), kAB);
    CHECK(comm_membership(only_ab, w("ab")));
    CHECK(comm_membership(only_ab, w("ba")));
    CHECK_FALSE(comm_membership(only_ab, w("aa")));
  }

  TEST_CASE("sum acceptor") {
    const auto q1 = linear({1, 0}, {{1, 0}});
    const auto q2 = linear({0, 1}, {{0, 2}});
    const Ncm m = sum_acceptor_ncm(q1, q2);
    for (const auto& x : oracle::words_up_to({"a", "b"}, 7)) {
      bool ordered = true;
      for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i - 1] == "b" && x[i] == "a") ordered = false;
      const auto v = parikh(x, kAB);
      const bool expected = ordered && v[0] >= 1 && v[1] % 2 == 1;
      REQUIRE(cm_accepts(m, x) == expected);
    }
  }

  TEST_CASE("regular expressions from automata") {
    const auto r = nfa_to_regex(ab_star(), 8);
    CHECK(regex_to_string(r, kAB).find('*') != std::string::npos);
    CHECK(regex_to_string(re_empty(), kAB) != regex_to_string(re_epsilon(), kAB));
    CHECK(regex_to_string(re_union(re_empty(), re_symbol(0)), kAB) == "a");
    CHECK(regex_to_string(re_concat(re_epsilon(), re_symbol(1)), kAB) == "b");
    CHECK(regex_to_string(re_star(re_symbol(0)), kAB) == "(a)*");
  }

  TEST_CASE("Boolean matrices") {
    BoolMatrix a(3);
    a.set(0, 1);
    a.set(1, 2);
    a.set(2, 0);
    std::size_t products = 0;
    const BoolMatrix a3 = matrix_power(a, 3, &products);
    for (std::size_t i = 0; i < 3; ++i) CHECK(a3.get(i, i));
    CHECK(products <= 3);
    CHECK(matrix_power(a, 1) == a);
    CHECK(matrix_power(a, 4) == a);
  }

  TEST_CASE("property: membership agrees with generation") {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 40; ++round) {
      const auto q = random_set(rng);
      const auto members = oracle::semilinear_members(q, 10);
      for (std::int64_t i = 0; i <= 10; ++i)
        for (std::int64_t j = 0; j <= 10; ++j) REQUIRE(sl_membership(q, {i, j}) == (members.count({i, j}) > 0));
      const auto listed = sl_members_up_to(q, 10);
      REQUIRE(std::set<ParikhVector>(listed.begin(), listed.end()) == members);
    }
  }

  TEST_CASE("property: sums agree with the double loop") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 30; ++round) {
      const auto q1 = random_set(rng), q2 = random_set(rng);
      const auto m1 = oracle::semilinear_members(q1, 8), m2 = oracle::semilinear_members(q2, 8);
      std::set<ParikhVector> expected;
      for (const auto& x : m1)
        for (const auto& y : m2)
          if (x[0] + y[0] <= 8 && x[1] + y[1] <= 8) expected.insert(add(x, y));
      const auto s = sl_sum(q1, q2);
      for (std::int64_t i = 0; i <= 8; ++i)
        for (std::int64_t j = 0; j <= 8; ++j) REQUIRE(sl_membership(s, {i, j}) == (expected.count({i, j}) > 0));
    }
  }

  TEST_CASE("property: Parikh images agree with accepted words") {
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int round = 0; round < 30; ++round) {
      const Nfa m = oracle::random_nfa(rng, {"a", "b"}, 1 + round % 4, 0.35);
      SemilinearSet img;
      try {
        img = nfa_parikh_image(m);
      } catch (const ResourceError&) {
        continue;
      }
      ++checked;
      std::set<ParikhVector> seen;
      for (const auto& x : oracle::words_up_to({"a", "b"}, 8))
        if (oracle::nfa_run(m, x)) seen.insert(parikh(x, kAB));
      for (std::int64_t i = 0; i <= 8; ++i)
        for (std::int64_t j = 0; i + j <= 8; ++j)
          REQUIRE(sl_membership(img, {i, j}) == (seen.count({i, j}) > 0));
    }
    CHECK(checked >= 20);
  }
}
