#ifndef SHUFFLEKIT_REDUCE_HPP
#define SHUFFLEKIT_REDUCE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shufflekit/nfa.hpp"

namespace shufflekit {

struct Literal {
  int var;  // 1..p
  bool positive;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause3 = std::array<Literal, 3>;

struct Cnf3 {
  int p = 0;
  std::vector<Clause3> clauses;
};

/// DIMACS CNF. Clauses with one or two literals are padded by repeating
/// their last literal; longer clauses and empty clauses are rejected.
Cnf3 parse_dimacs(const std::string& text);
std::string format_dimacs(const Cnf3& f);

/// Uniformly random clauses over variables 1..p.
Cnf3 random_cnf3(int p, int q, std::mt19937_64& rng);

/// Exhaustive over 2^p assignments; ResourceError when p > 24.
bool sat_brute_force(const Cnf3& f);

/// y = ceil(log2 p) + 1.
int code_width(int p);
/// "1", the y-bit binary numeral of i, "1".
Word encode_b(int i, int p);

/// F satisfiable iff u ⧢ v ⊄ L(m).
struct SatInstance {
  Word u;
  Word v;
  Nfa m;
  int p = 0;
  int q = 0;
  int y = 0;
};

/// e_1 b(1) ... e_p b(p) with e_i ∈ {10, 01}, as a complete DFA.
Nfa t_language_dfa(int p);
/// Union over non-tautological clauses j of f(1,j) ... f(p,j).
Nfa clause_blocks_nfa(const Cnf3& f);
SatInstance sat_to_shuffle_noninclusion(const Cnf3& f);

/// L(M) ⊆ u ⧢ v iff L(m) = a^p ⧢ b^q.
struct InequalityInstance {
  Nfa m;
  std::size_t p = 0;
  std::size_t q = 0;
};

/// M, u and v over {a,b}; M is determinized when it is not a complete DFA.
InequalityInstance dfa_noninclusion_to_inequality(const Nfa& m, const Word& u, const Word& v);

/// Every word of u ⧢ v, listed by choosing the positions of v. Throws
/// ResourceError above `limit` words.
std::vector<Word> interleavings(const Word& u, const Word& v, std::size_t limit = 2'000'000);

/// holds = (F satisfiable) == (u ⧢ v ⊄ L(M'')), the right side by
/// enumerating u ⧢ v. Stats record both sides.
DecisionOutcome verify_sat_reduction(const Cnf3& f);

/// holds = (L(M) ⊆ u ⧢ v) == (L(M') = a^p ⧢ b^q).
DecisionOutcome verify_inequality_reduction(const Nfa& m, const Word& u, const Word& v);

}  // namespace shufflekit

#endif
