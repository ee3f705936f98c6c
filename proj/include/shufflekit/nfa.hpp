#ifndef SHUFFLEKIT_NFA_HPP
#define SHUFFLEKIT_NFA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shufflekit/alphabet.hpp"
#include "shufflekit/outcome.hpp"

namespace shufflekit {

using StateId = std::size_t;
using StateSet = std::vector<StateId>;  // sorted, unique

/// Transition label for silent moves.
inline constexpr int kEpsilon = -1;

struct Edge {
  int label;  // alphabet index or kEpsilon
  StateId target;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite automaton with optional epsilon moves.
///
/// States are dense ids with unique display names. A DFA is an Nfa for
/// which is_complete_deterministic() holds; constructions that produce DFAs
/// always add an explicit dead state.
class Nfa {
 public:
  explicit Nfa(Alphabet alphabet = {}) : alphabet_(std::move(alphabet)) {}

  StateId add_state(std::string name);
  /// Adds a state named by its id, suffixed until unique.
  StateId add_fresh_state(std::string_view hint = "q");
  void set_start(StateId s);
  void set_final(StateId s, bool final = true);
  void add_transition(StateId from, int label, StateId to);
  void add_transition(StateId from, const Symbol& symbol, StateId to) {
    add_transition(from, static_cast<int>(alphabet_.index_of(symbol)), to);
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_[s]; }
  std::optional<StateId> find_state(const std::string& name) const;
  StateId start() const { return start_; }
  bool is_final(StateId s) const { return finals_[s]; }
  StateSet finals() const;
  const std::vector<Edge>& edges(StateId s) const { return edges_[s]; }
  /// Targets of `s` on `label`, without epsilon closure.
  StateSet targets(StateId s, int label) const;
  std::size_t num_transitions() const;

  bool has_epsilon() const;
  /// No epsilon moves and at most one target per (state, symbol).
  bool is_deterministic() const;
  /// No epsilon moves and exactly one target per (state, symbol).
  bool is_complete_deterministic() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> name_index_;
  std::vector<bool> finals_;
  std::vector<std::vector<Edge>> edges_;
  StateId start_ = 0;
};

// Builders.
Nfa empty_language_nfa(const Alphabet& alphabet);
Nfa universal_nfa(const Alphabet& alphabet);
Nfa single_word_nfa(const Word& w, const Alphabet& alphabet);
/// Accepts exactly the listed words (a trie).
Nfa finite_language_nfa(const std::vector<Word>& words, const Alphabet& alphabet);

StateSet epsilon_closure(const Nfa& m, StateSet states);
/// Symbol step followed by epsilon closure.
StateSet step(const Nfa& m, const StateSet& states, int label);

/// Throws InputError for symbols outside M's alphabet.
bool accepts(const Nfa& m, const Word& w);
bool accepts_encoded(const Nfa& m, const std::vector<int>& w);

/// Re-indexes M over `alphabet`, which must contain M's alphabet.
Nfa with_alphabet(const Nfa& m, const Alphabet& alphabet);

Nfa remove_epsilon(const Nfa& m);
/// Subset construction over reachable subsets, completed with a dead state.
Nfa determinize(const Nfa& m);
/// Requires a complete DFA; throws ContractError otherwise.
Nfa complement(const Nfa& m);
/// Product automaton; alphabets must hold the same symbols.
Nfa intersect(const Nfa& a, const Nfa& b);
/// Fresh start state with epsilon moves into both operands.
Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa trim(const Nfa& m);
bool is_acyclic(const Nfa& m);

/// holds = L(M) is empty; otherwise witness = a shortest accepted word.
DecisionOutcome is_empty(const Nfa& m);
/// holds = equal languages; otherwise witness lies in the symmetric difference.
DecisionOutcome equivalent(const Nfa& a, const Nfa& b);
/// holds = L(M) is everything over M's alphabet; otherwise witness is rejected.
DecisionOutcome is_universal(const Nfa& m);

}  // namespace shufflekit

#endif
