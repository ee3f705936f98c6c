#include "doctest.h"
#include "oracles.hpp"
#include "shufflekit/decide.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/fixtures.hpp"
#include "shufflekit/reduce.hpp"
#include "shufflekit/shuffle.hpp"

using namespace shufflekit;
using oracle::w;

namespace {

bool noninclusion_by_enumeration(const SatInstance& inst) {
  for (const auto& x : interleavings(inst.u, inst.v))
    if (!oracle::nfa_run(inst.m, x)) return true;
  return false;
}

}  // namespace

TEST_SUITE("reduce") {
  TEST_CASE("DIMACS parsing") {
    const Cnf3 f = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 0\n");
    CHECK(f.p == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0][1] == Literal{2, false});
    CHECK(f.clauses[1][2] == Literal{1, false});
    CHECK(parse_dimacs(format_dimacs(f)).clauses == f.clauses);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 1 2 0\n"), InputError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 5 0\n"), InputError);
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), InputError);
  }

  TEST_CASE("brute force satisfiability") {
    CHECK(sat_brute_force(parse_dimacs(tiny_sat_dimacs())));
    CHECK_FALSE(sat_brute_force(parse_dimacs(tiny_unsat_dimacs())));
    Cnf3 big;
    big.p = 25;
    big.clauses.push_back({Literal{1, true}, Literal{1, true}, Literal{1, true}});
    CHECK_THROWS_AS(sat_brute_force(big), ResourceError);
  }

  TEST_CASE("variable codes") {
    CHECK(code_width(1) == 1);
    CHECK(code_width(2) == 2);
    CHECK(code_width(4) == 3);
    CHECK(code_width(5) == 4);
    CHECK(encode_b(1, 1) == w("111"));
    CHECK(encode_b(1, 2) == w("1011"));
    CHECK(encode_b(2, 2) == w("1101"));
  }

  TEST_CASE("instance shape") {
    const SatInstance inst = sat_to_shuffle_noninclusion(parse_dimacs(tiny_sat_dimacs()));
    CHECK(inst.u == w("1111"));
    CHECK(inst.v == w("0"));
    CHECK(inst.y == 1);
    std::mt19937_64 rng(1);
    const SatInstance two = sat_to_shuffle_noninclusion(random_cnf3(2, 2, rng));
    const Nfa t = t_language_dfa(2);
    CHECK(t.is_complete_deterministic());
    const auto words = oracle::nfa_language(t, 12);
    CHECK(words.size() == 4);
    for (const auto& x : words) {
      CHECK(x.size() == two.u.size() + two.v.size());
      CHECK(oracle::in_shuffle(x, two.u, two.v));
    }
  }

  TEST_CASE("tiny formulas") {
    const SatInstance sat = sat_to_shuffle_noninclusion(parse_dimacs(tiny_sat_dimacs()));
    CHECK(noninclusion_by_enumeration(sat));
    CHECK_FALSE(word_shuffle_subset_lang(sat.u, sat.v, sat.m).holds);
    const SatInstance unsat = sat_to_shuffle_noninclusion(parse_dimacs(tiny_unsat_dimacs()));
    CHECK_FALSE(noninclusion_by_enumeration(unsat));
    CHECK(word_shuffle_subset_lang(unsat.u, unsat.v, unsat.m).holds);
    CHECK(verify_sat_reduction(parse_dimacs(tiny_sat_dimacs())).holds);
    CHECK(verify_sat_reduction(parse_dimacs(tiny_unsat_dimacs())).holds);
  }

  TEST_CASE("interleavings") {
    const auto list = interleavings(w("ab"), w("cd"));
    CHECK(list.size() == 6);
    CHECK(std::set<Word>(list.begin(), list.end()) == oracle::shuffle_set(w("ab"), w("cd")));
    CHECK_THROWS_AS(interleavings(Word(10, "a"), Word(10, "b"), 100), ResourceError);
  }

  TEST_CASE("inequality reduction") {
    const Nfa naive = determinize(naive_shuffle_nfa(w("ab"), w("ba")));
    const auto inst = dfa_noninclusion_to_inequality(naive, w("ab"), w("ba"));
    CHECK(inst.p == 2);
    CHECK(inst.q == 2);
    CHECK(equivalent(inst.m, naive_shuffle_nfa(Word(2, "a"), Word(2, "b"), inst.m.alphabet())).holds);
    const Nfa outside = single_word_nfa(w("bbaa"), Alphabet({"a", "b"}));
    const auto bad = dfa_noninclusion_to_inequality(outside, w("ab"), w("ba"));
    CHECK_FALSE(equivalent(bad.m, naive_shuffle_nfa(Word(2, "a"), Word(2, "b"), bad.m.alphabet())).holds);
    CHECK(verify_inequality_reduction(outside, w("ab"), w("ba")).holds);
  }

  TEST_CASE("property: SAT iff non-inclusion") {
    std::mt19937_64 rng(31);
    int sat = 0, unsat = 0;
    for (int round = 0; round < 40; ++round) {
      const int p = 1 + round % 3, q = 1 + round % 6;
      const Cnf3 f = random_cnf3(p, q, rng);
      const bool s = sat_brute_force(f);
      REQUIRE(s == oracle::sat_dpll(f));
      REQUIRE(s == noninclusion_by_enumeration(sat_to_shuffle_noninclusion(f)));
      (s ? sat : unsat)++;
    }
    CHECK(sat > 0);
  }

  TEST_CASE("property: brute force agrees with DPLL on larger formulas") {
    std::mt19937_64 rng(37);
    for (int round = 0; round < 200; ++round) {
      const Cnf3 f = random_cnf3(3 + round % 6, 5 + round % 40, rng);
      REQUIRE(sat_brute_force(f) == oracle::sat_dpll(f));
    }
  }
}
