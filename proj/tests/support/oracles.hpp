#ifndef SHUFFLEKIT_TESTS_ORACLES_HPP
#define SHUFFLEKIT_TESTS_ORACLES_HPP

// Brute-force reference implementations. None of them calls into the
// library's algorithms; they only read machine structure.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "shufflekit/counters.hpp"
#include "shufflekit/nfa.hpp"
#include "shufflekit/pushdown.hpp"
#include "shufflekit/reduce.hpp"
#include "shufflekit/semilinear.hpp"

namespace oracle {

using shufflekit::Word;

Word w(const std::string& chars);
std::string str(const Word& w);

/// Every word over `letters` of length exactly n / at most n.
std::vector<Word> words_of_length(const std::vector<std::string>& letters, std::size_t n);
std::vector<Word> words_up_to(const std::vector<std::string>& letters, std::size_t n);

/// u ⧢ v by recursion on the first letters.
std::set<Word> shuffle_set(const Word& u, const Word& v);
/// Membership by recursive splitting without memo tables.
bool in_shuffle(const Word& x, const Word& u, const Word& v);
/// Every interleaving, listed by choosing which positions hold v's letters.
std::vector<Word> interleavings_by_positions(const Word& u, const Word& v);
/// x ∈ L1 ⧢ L2, trying every split of x's positions into two subwords.
bool in_shuffle_of(const Word& x, const std::function<bool(const Word&)>& in1,
                   const std::function<bool(const Word&)>& in2);

/// Set-of-states simulation over the raw edge lists.
bool nfa_run(const shufflekit::Nfa& m, const Word& x);
std::set<Word> nfa_language(const shufflekit::Nfa& m, std::size_t max_len);

/// Configuration search with a stack height limit.
bool pda_run(const shufflekit::Npda& m, const Word& x, std::size_t max_height = 64);

/// Configuration search with a counter limit and a step limit.
bool cm_run(const shufflekit::Ncm& m, const Word& x, std::int64_t max_counter = 32, std::size_t max_steps = 200000);

/// DPLL with unit propagation.
bool sat_dpll(const shufflekit::Cnf3& f);

/// Members of a semilinear set with every entry at most `bound`, generated
/// by adding periods.
std::set<shufflekit::ParikhVector> semilinear_members(const shufflekit::SemilinearSet& q, std::int64_t bound);

/// Every (x, y), x <= y, x and y nonempty, with x ⧢ y equal to `language`.
std::vector<std::pair<Word, Word>> decompositions(const std::set<Word>& language);

// Language predicates written straight from their definitions.
bool is_anbn(const Word& x, bool allow_empty);
bool is_aba(const Word& x);    // a^n b a b^n a, n > 0
bool is_bma(const Word& x);    // b^m a^(m+1), m > 0
bool is_equal_ab(const Word& x);
/// Blocks over {a,#,$}; `odd` selects which neighbouring exponents step by one.
bool is_step_word(const Word& x, bool odd);

/// Random ε-free NFA with the given alphabet.
shufflekit::Nfa random_nfa(std::mt19937_64& rng, const std::vector<std::string>& letters, std::size_t states,
                           double density);
Word random_word(std::mt19937_64& rng, const std::vector<std::string>& letters, std::size_t max_len);

}  // namespace oracle

#endif
