#ifndef SHUFFLEKIT_DECOMPOSE_HPP
#define SHUFFLEKIT_DECOMPOSE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "shufflekit/nfa.hpp"

namespace shufflekit {

/// Subset construction evaluated on demand. Subset 0 is the empty set.
class LazyDeterminizer {
 public:
  explicit LazyDeterminizer(const Nfa& m);

  int start() const { return start_; }
  int step(int subset, int label);
  const StateSet& subset(int id) const { return sets_[id]; }
  bool contains(int id, StateId s) const;
  std::size_t materialized() const { return sets_.size(); }

 private:
  int intern(StateSet set);

  const Nfa& m_;
  std::map<StateSet, int> ids_;
  std::vector<StateSet> sets_;
  std::vector<std::vector<int>> next_;  // -1 = not computed yet
  int start_;
};

struct Decomposition {
  /// Present when a pair was found; u <= v lexicographically.
  std::optional<std::pair<Word, Word>> pair;
  /// Why no pair exists, when `pair` is empty.
  std::string reason;
  std::map<std::string, std::int64_t> stats;
};

/// Looks for u, v ∈ Σ⁺ with L(M) = u ⧢ v. Throws ContractError when the
/// trimmed machine has a cycle or uses fewer than two letters.
Decomposition extract_candidate(const Nfa& m);

/// holds = L(M) = u ⧢ v; otherwise witness separates them.
DecisionOutcome verify_word_decomposition(const Nfa& m, const Word& u, const Word& v);

/// extract_candidate followed by verify_word_decomposition; the pair is
/// only reported when the verifier agrees.
Decomposition decompose(const Nfa& m);

}  // namespace shufflekit

#endif
