#ifndef SHUFFLEKIT_COUNTERS_HPP
#define SHUFFLEKIT_COUNTERS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shufflekit/nfa.hpp"

namespace shufflekit {

/// Input label for moves on the right end-marker.
inline constexpr int kEndMarker = -2;

enum class HeadMove { Stay, Right };

/// One counter-machine move. `guard[i]` is 1 when counter i must be
/// positive and 0 when it must be zero.
struct CmRule {
  StateId from;
  int input;  // alphabet index or kEndMarker
  std::vector<std::uint8_t> guard;
  StateId to;
  HeadMove move;
  std::vector<int> update;  // each in {-1, 0, +1}
};

/// One-way k-counter machine whose counters may reverse at most r times.
class Ncm {
 public:
  Ncm(std::size_t k, std::size_t r, Alphabet alphabet) : k_(k), r_(r), alphabet_(std::move(alphabet)) {}

  StateId add_state(std::string name);
  StateId add_fresh_state(const std::string& hint = "q");
  void set_start(StateId s) { start_ = s; }
  void set_final(StateId s, bool final = true) { finals_[s] = final; }
  /// Validates shapes, the zero-guard rule, and that end-marker moves stay.
  void add_rule(CmRule rule);

  std::size_t k() const { return k_; }
  std::size_t r() const { return r_; }
  void set_r(std::size_t r) { r_ = r; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_[s]; }
  std::optional<StateId> find_state(const std::string& name) const;
  StateId start() const { return start_; }
  bool is_final(StateId s) const { return finals_[s]; }
  const std::vector<CmRule>& rules() const { return rules_; }
  const std::vector<std::size_t>& rules_from(StateId s) const { return by_state_[s]; }

  /// The transition relation is a function of (state, input, guard).
  bool is_deterministic() const;

 private:
  std::size_t k_;
  std::size_t r_;
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> name_index_;
  std::vector<bool> finals_;
  std::vector<std::vector<std::size_t>> by_state_;
  std::vector<CmRule> rules_;
  StateId start_ = 0;
};

/// Guard pattern of a counter vector.
std::vector<std::uint8_t> guard_of(const std::vector<std::int64_t>& counters);
/// Every vector in {0,1}^k, in lexicographic order.
std::vector<std::vector<std::uint8_t>> all_guards(std::size_t k);
std::string format_guard(const std::vector<std::uint8_t>& g);

/// Same machine over a larger alphabet (the new symbols have no moves).
Ncm cm_with_alphabet(const Ncm& m, const Alphabet& alphabet);

/// Counter-free machine for L(A).
Ncm ncm_from_nfa(const Nfa& a);

struct CmAcceptOptions {
  /// Consecutive stay moves allowed from a configuration; 0 selects
  /// |Q| * (largest counter + unread symbols + 2).
  std::size_t stay_bound = 0;
  std::size_t config_budget = 2'000'000;
};

/// Configuration search. Throws InputError for foreign symbols and
/// ResourceError when the budget is exhausted.
bool cm_accepts(const Ncm& m, const Word& w, const CmAcceptOptions& options = {});

/// L(M1) ⧢ L(M2) with M1 on the first k1 counters.
Ncm cm_shuffle(const Ncm& m1, const Ncm& m2);

/// L(M1) ∩ L(M2); M1 finishes its stay moves on a symbol before M2 starts.
Ncm cm_product(const Ncm& m1, const Ncm& m2);

/// holds = deterministic, and no unbounded run of stay moves exists.
/// On failure `method` names the offending state and guard.
DecisionOutcome check_complete_halting(const Ncm& m);

/// Requires check_complete_halting; throws ContractError otherwise.
Ncm dcm_complement(const Ncm& m);

struct CmEmptinessOptions {
  /// Largest counter value explored; 0 selects |Q| * 2^k * (r+1) * 4.
  std::int64_t cap = 0;
  std::size_t config_budget = 4'000'000;
};

std::int64_t default_emptiness_cap(const Ncm& m);

/// holds = no accepted word was found among runs whose counters stay within
/// the cap. `bounded` is set when some run was cut at the cap; otherwise the
/// verdict is exact. A witness is always replayed through cm_accepts.
DecisionOutcome cm_is_empty(const Ncm& m, const CmEmptinessOptions& options = {});

/// Equivalent machine whose counters reverse at most once.
Ncm normalize_reversals(const Ncm& m);

/// Deterministic machine for L(M1) ⧢ L(M2) when the alphabets are disjoint.
/// Requires both to pass check_complete_halting. `extra` symbols join the
/// alphabet without moves.
Ncm disjoint_dcm_shuffle(const Ncm& m1, const Ncm& m2, const Alphabet& extra = {});

}  // namespace shufflekit

#endif
