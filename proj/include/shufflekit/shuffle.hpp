#ifndef SHUFFLEKIT_SHUFFLE_HPP
#define SHUFFLEKIT_SHUFFLE_HPP

#include <cstddef>
#include <set>

#include "shufflekit/nfa.hpp"

namespace shufflekit {

/// Position pair in the naive shuffle automaton: i letters of u and j of v
/// have been read.
struct GridState {
  std::size_t i = 0;
  std::size_t j = 0;
  friend auto operator<=>(const GridState&, const GridState&) = default;
};

inline constexpr std::size_t kDefaultEnumerationBound = 16;

/// The (|u|+1)(|v|+1)-state grid automaton accepting u ⧢ v. State (i,j)
/// has id i*(|v|+1)+j and display name "(i,j)".
Nfa naive_shuffle_nfa(const Word& u, const Word& v, const Alphabet& alphabet);
/// Same, over the sorted letters of u and v.
Nfa naive_shuffle_nfa(const Word& u, const Word& v);

inline StateId grid_state_id(GridState g, std::size_t v_len) { return g.i * (v_len + 1) + g.j; }

/// True iff u and v share no letter; then the naive automaton is a DFA.
bool is_dfa_when_disjoint(const Word& u, const Word& v);

/// Grid dynamic program, O(|u|·|v|).
bool word_in_shuffle(const Word& w, const Word& u, const Word& v);

/// Pair construction for L(a) ⧢ L(b); each move advances one side.
/// Alphabets are merged (a's order first).
Nfa shuffle_nfas(const Nfa& a, const Nfa& b);

/// The set u ⧢ v by memoized interleaving. Throws ResourceError when
/// |u|+|v| exceeds `bound`.
std::set<Word> enumerate_shuffle(const Word& u, const Word& v,
                                 std::size_t bound = kDefaultEnumerationBound);

}  // namespace shufflekit

#endif
