#include "doctest.h"
#include "oracles.hpp"
#include "shufflekit/counters.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/fixtures.hpp"
#include "shufflekit/shuffle.hpp"

using namespace shufflekit;
using oracle::w;

namespace {

const std::vector<std::string> kAB{"a", "b"};

void rule(Ncm& m, StateId from, const std::string& on, std::vector<std::uint8_t> guard, StateId to, HeadMove move,
          std::vector<int> update) {
  const int input = on == kEndMarkerToken ? kEndMarker : static_cast<int>(m.alphabet().index_of(on));
  m.add_rule({from, input, std::move(guard), to, move, std::move(update)});
}

constexpr auto R = HeadMove::Right;
constexpr auto S = HeadMove::Stay;

// {a^n b^n a^m b^m | n, m > 0} on one counter with three reversals.
Ncm twice_anbn() {
  Ncm m(1, 3, Alphabet(kAB));
  StateId q0 = m.add_state("q0"), a1 = m.add_state("a1"), b1 = m.add_state("b1"), a2 = m.add_state("a2"),
          b2 = m.add_state("b2"), acc = m.add_state("acc");
  m.set_start(q0);
  m.set_final(acc);
  rule(m, q0, "a", {0}, a1, R, {1});
  rule(m, a1, "a", {1}, a1, R, {1});
  rule(m, a1, "b", {1}, b1, R, {-1});
  rule(m, b1, "b", {1}, b1, R, {-1});
  rule(m, b1, "a", {0}, a2, R, {1});
  rule(m, a2, "a", {1}, a2, R, {1});
  rule(m, a2, "b", {1}, b2, R, {-1});
  rule(m, b2, "b", {1}, b2, R, {-1});
  rule(m, b2, kEndMarkerToken, {0}, acc, S, {0});
  return m;
}

bool is_twice_anbn(const Word& x) {
  for (std::size_t i = 2; i + 2 <= x.size(); i += 2)
    if (oracle::is_anbn(Word(x.begin(), x.begin() + i), false) && oracle::is_anbn(Word(x.begin() + i, x.end()), false))
      return true;
  return false;
}

// Nondeterministic two-counter machine: a^i b^j with i == j or j == 2i.
Ncm one_or_two() {
  Ncm m(2, 1, Alphabet(kAB));
  StateId q = m.add_state("q"), p1 = m.add_state("p1"), p2 = m.add_state("p2"), h = m.add_state("h"),
          acc = m.add_state("acc");
  m.set_start(q);
  m.set_final(acc);
  for (std::uint8_t g0 : {0, 1})
    for (std::uint8_t g1 : {0, 1}) {
      if (g0 != g1) continue;
      rule(m, q, "a", {g0, g1}, q, R, {1, 1});
      rule(m, q, "b", {g0, g1}, p1, S, {0, 0});
      rule(m, q, "b", {g0, g1}, p2, S, {0, 0});
    }
  for (std::uint8_t g1 : {0, 1}) {
    rule(m, p1, "b", {1, g1}, p1, R, {-1, 0});
    rule(m, p1, kEndMarkerToken, {0, g1}, acc, S, {0, 0});
  }
  for (std::uint8_t g0 : {0, 1}) {
    rule(m, p2, "b", {g0, 1}, h, R, {0, 0});
    rule(m, h, "b", {g0, 1}, p2, R, {0, -1});
    rule(m, p2, kEndMarkerToken, {g0, 0}, acc, S, {0, 0});
  }
  return m;
}

bool is_one_or_two(const Word& x) {
  std::size_t i = 0;
  while (i < x.size() && x[i] == "a") ++i;
  for (std::size_t k = i; k < x.size(); ++k)
    if (x[k] != "b") return false;
  const std::size_t j = x.size() - i;
  return j > 0 && (i == j || j == 2 * i);
}

Ncm finite_ncm(const std::vector<std::string>& words, const std::vector<std::string>& letters) {
  std::vector<Word> ws;
  for (const auto& s : words) ws.push_back(w(s));
  return ncm_from_nfa(finite_language_nfa(ws, Alphabet(letters)));
}

}  // namespace

TEST_SUITE("counters") {
  TEST_CASE("membership on the small fixtures") {
    CHECK(cm_accepts(anbn_dcm(), w("aabb")));
    CHECK_FALSE(cm_accepts(anbn_dcm(), {}));
    CHECK(cm_accepts(aba_dcm(), w("ababa")));
    CHECK(cm_accepts(bma_dcm(), w("bbaaa")));
    CHECK_FALSE(cm_accepts(bma_dcm(), w("bbaa")));
    CHECK_THROWS_AS(cm_accepts(anbn_dcm(), w("abc")), InputError);
  }

  TEST_CASE("rule validation") {
    Ncm m(1, 1, Alphabet(kAB));
    StateId s = m.add_state("s");
    CHECK_THROWS(rule(m, s, "a", {0}, s, R, {-1}));
    CHECK_THROWS(rule(m, s, kEndMarkerToken, {0}, s, R, {0}));
    CHECK_THROWS(rule(m, s, "a", {0, 0}, s, R, {0}));
  }

  TEST_CASE("guards") {
    CHECK(guard_of({0, 3, 1}) == std::vector<std::uint8_t>{0, 1, 1});
    CHECK(all_guards(2).size() == 4);
    CHECK(format_guard({1, 0}) == "10");
  }

  TEST_CASE("shuffle of counter machines") {
    Ncm lambda(0, 1, Alphabet(kAB));
    lambda.set_final(lambda.add_state("s"));
    const Ncm s1 = cm_shuffle(anbn_dcm(), lambda);
    for (const auto& x : oracle::words_up_to(kAB, 6)) REQUIRE(cm_accepts(s1, x) == oracle::is_anbn(x, false));

    const Alphabet abc({"a", "b", "c"});
    const Ncm s2 = cm_shuffle(cm_with_alphabet(anbn_dcm(), abc), finite_ncm({"c"}, {"a", "b", "c"}));
    for (const auto& x : oracle::words_up_to({"a", "b", "c"}, 5)) {
      bool expected = false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == "c") {
          Word rest = x;
          rest.erase(rest.begin() + static_cast<long>(i));
          if (oracle::is_anbn(rest, false)) expected = true;
        }
      REQUIRE(cm_accepts(s2, x) == expected);
    }

    Nfa astar{Alphabet(kAB)}, bstar{Alphabet(kAB)};
    for (auto [m, l] : {std::pair{&astar, "a"}, std::pair{&bstar, "b"}}) {
      StateId q = m->add_state("q");
      m->set_start(q);
      m->set_final(q);
      m->add_transition(q, l, q);
    }
    const Ncm s3 = cm_shuffle(ncm_from_nfa(astar), ncm_from_nfa(bstar));
    for (const auto& x : oracle::words_up_to(kAB, 6)) REQUIRE(cm_accepts(s3, x));
  }

  TEST_CASE("product") {
    const Ncm all = ncm_from_nfa(universal_nfa(Alphabet(kAB)));
    const Ncm p = cm_product(anbn_dcm(), all);
    Nfa astar_bstar{Alphabet(kAB)};
    StateId x = astar_bstar.add_state("x"), y = astar_bstar.add_state("y");
    astar_bstar.set_start(x);
    astar_bstar.set_final(x);
    astar_bstar.set_final(y);
    astar_bstar.add_transition(x, "a", x);
    astar_bstar.add_transition(x, "b", y);
    astar_bstar.add_transition(y, "b", y);
    const Ncm q = cm_product(anbn_dcm(), ncm_from_nfa(astar_bstar));
    for (const auto& word : oracle::words_up_to(kAB, 7)) {
      REQUIRE(cm_accepts(p, word) == oracle::is_anbn(word, false));
      REQUIRE(cm_accepts(q, word) == oracle::is_anbn(word, false));
    }
    CHECK(cm_is_empty(cm_product(finite_ncm({"ab"}, kAB), finite_ncm({"ba"}, kAB))).holds);
  }

  TEST_CASE("halting check") {
    CHECK(check_complete_halting(anbn_dcm()).holds);
    CHECK(check_complete_halting(aba_dcm()).holds);
    CHECK(check_complete_halting(bma_dcm()).holds);
    Ncm m(1, 1, Alphabet(kAB));
    StateId s = m.add_state("s");
    m.set_start(s);
    rule(m, s, "a", {0}, s, S, {0});
    CHECK_FALSE(check_complete_halting(m).holds);
    CHECK_THROWS_AS(dcm_complement(m), ContractError);
    CHECK_FALSE(check_complete_halting(one_or_two()).holds);
  }

  TEST_CASE("complement") {
    const Ncm c = dcm_complement(anbn_dcm());
    CHECK(cm_accepts(c, {}));
    CHECK(check_complete_halting(c).holds);
    const Ncm cc = dcm_complement(c);
    for (const auto& x : oracle::words_up_to(kAB, 7)) REQUIRE(cm_accepts(cc, x) == oracle::is_anbn(x, false));
  }

  TEST_CASE("emptiness") {
    Ncm none(1, 1, Alphabet(kAB));
    none.set_start(none.add_state("s"));
    for (std::int64_t cap : {1, 5, 50}) CHECK(cm_is_empty(none, {cap}).holds);
    auto e = cm_is_empty(anbn_dcm());
    CHECK_FALSE(e.holds);
    CHECK(e.witness == w("ab"));
    e = cm_is_empty(cm_product(anbn_dcm(), dcm_complement(anbn_dcm())), {64});
    CHECK(e.holds);
    CHECK(default_emptiness_cap(anbn_dcm()) == 4 * 2 * 2 * 4);
    e = cm_is_empty(cm_product(bma_dcm(), finite_ncm({"bbbaaaa"}, kAB)));
    REQUIRE(e.witness);
    CHECK(*e.witness == w("bbbaaaa"));
  }

  TEST_CASE("reversal normalization") {
    CHECK(normalize_reversals(anbn_dcm()).k() == 1);
    const Ncm m = twice_anbn();
    const Ncm n = normalize_reversals(m);
    CHECK(n.k() == 2);
    CHECK(n.r() == 1);
    for (const auto& x : oracle::words_up_to(kAB, 8)) REQUIRE(cm_accepts(n, x) == is_twice_anbn(x));
    Ncm r2 = twice_anbn();
    r2.set_r(2);
    const Ncm n2 = normalize_reversals(r2);
    CHECK(n2.k() == 2);
    for (const auto& x : oracle::words_up_to(kAB, 6)) REQUIRE(cm_accepts(n2, x) == cm_accepts(r2, x));
  }

  TEST_CASE("disjoint deterministic shuffle") {
    Ncm cd(1, 1, Alphabet({"c", "d"}));
    {
      StateId q0 = cd.add_state("q0"), qc = cd.add_state("qc"), qd = cd.add_state("qd"), acc = cd.add_state("acc");
      cd.set_start(q0);
      cd.set_final(acc);
      rule(cd, q0, "c", {0}, qc, R, {1});
      rule(cd, qc, "c", {1}, qc, R, {1});
      rule(cd, qc, "d", {1}, qd, R, {-1});
      rule(cd, qd, "d", {1}, qd, R, {-1});
      rule(cd, qd, kEndMarkerToken, {0}, acc, S, {0});
    }
    const Ncm s = disjoint_dcm_shuffle(anbn_dcm(), cd);
    CHECK(s.is_deterministic());
    for (const auto& x : oracle::words_up_to({"a", "b", "c", "d"}, 6)) {
      Word ab, cdw;
      for (const auto& l : x) (l == "a" || l == "b" ? ab : cdw).push_back(l);
      bool expected = oracle::is_anbn(ab, false) && !cdw.empty();
      if (expected) {
        for (auto& l : cdw) l = l == "c" ? "a" : "b";
        expected = oracle::is_anbn(cdw, false);
      }
      REQUIRE(cm_accepts(s, x) == expected);
    }
  }

  TEST_CASE("property: search agrees with the configuration oracle") {
    const std::vector<Ncm> machines{anbn_dcm(), aba_dcm(), bma_dcm(), twice_anbn(), one_or_two(),
                                    dcm_complement(anbn_dcm())};
    for (const auto& m : machines)
      for (const auto& x : oracle::words_up_to(kAB, 8)) REQUIRE(cm_accepts(m, x) == oracle::cm_run(m, x));
    for (const auto& x : oracle::words_up_to(kAB, 9)) {
      REQUIRE(cm_accepts(twice_anbn(), x) == is_twice_anbn(x));
      REQUIRE(cm_accepts(one_or_two(), x) == is_one_or_two(x));
    }
  }

  TEST_CASE("property: shuffle of finite slices") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 12; ++round) {
      std::vector<Word> f1, f2;
      for (int i = 0; i < 4; ++i) {
        f1.push_back(oracle::random_word(rng, kAB, 3));
        f2.push_back(oracle::random_word(rng, kAB, 3));
      }
      const Ncm s = cm_shuffle(ncm_from_nfa(finite_language_nfa(f1, Alphabet(kAB))),
                               ncm_from_nfa(finite_language_nfa(f2, Alphabet(kAB))));
      std::set<Word> expected;
      for (const auto& x : f1)
        for (const auto& y : f2)
          for (const auto& z : enumerate_shuffle(x, y)) expected.insert(z);
      for (const auto& x : oracle::words_up_to(kAB, 6)) REQUIRE(cm_accepts(s, x) == (expected.count(x) > 0));
      const auto e = cm_is_empty(s);
      REQUIRE_FALSE(e.holds);
      REQUIRE(expected.count(*e.witness));
    }
  }
}
