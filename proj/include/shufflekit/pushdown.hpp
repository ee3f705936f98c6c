#ifndef SHUFFLEKIT_PUSHDOWN_HPP
#define SHUFFLEKIT_PUSHDOWN_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shufflekit/grammar.hpp"
#include "shufflekit/nfa.hpp"

namespace shufflekit {

/// One pushdown move. `push` replaces the top symbol; push[0] becomes the
/// new top and the last element sits deepest.
struct PdaRule {
  StateId from;
  int input;  // alphabet index or kEpsilon
  int top;
  StateId to;
  std::vector<int> push;
};

/// Pushdown automaton accepting by final state after the whole input.
class Npda {
 public:
  Npda(Alphabet input, Alphabet stack) : input_(std::move(input)), stack_(std::move(stack)) {}

  StateId add_state(std::string name);
  StateId add_fresh_state(const std::string& hint = "q");
  void set_start(StateId s) { start_ = s; }
  void set_initial_stack(int symbol) { initial_stack_ = symbol; }
  void set_final(StateId s, bool final = true) { finals_[s] = final; }
  void add_rule(PdaRule rule);

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& stack_alphabet() const { return stack_; }
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_[s]; }
  std::optional<StateId> find_state(const std::string& name) const;
  StateId start() const { return start_; }
  int initial_stack() const { return initial_stack_; }
  bool is_final(StateId s) const { return finals_[s]; }
  const std::vector<PdaRule>& rules() const { return rules_; }
  const std::vector<std::size_t>& rules_from(StateId s) const { return by_state_[s]; }

 private:
  Alphabet input_;
  Alphabet stack_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> name_index_;
  std::vector<bool> finals_;
  std::vector<std::vector<std::size_t>> by_state_;
  std::vector<PdaRule> rules_;
  StateId start_ = 0;
  int initial_stack_ = 0;
};

/// Determinism plus the complementability restriction: silent moves push at
/// most one symbol, and the silent moves that keep the height unchanged form
/// an acyclic graph on (state, top). Throws ContractError naming the first
/// offending rule.
void require_dpda(const Npda& m);
bool is_dpda(const Npda& m);

/// Same language over a larger input alphabet.
Npda npda_with_alphabet(const Npda& m, const Alphabet& alphabet);

/// Triple grammar [p X q] restricted to productive, reachable nonterminals.
Grammar npda_to_grammar(const Npda& m);

class NpdaRecognizer {
 public:
  explicit NpdaRecognizer(const Npda& m);
  /// Throws InputError for symbols outside the input alphabet.
  bool accepts(const Word& w) const;
  bool accepts_encoded(const std::vector<int>& w) const { return cyk_.accepts(w); }
  std::size_t grammar_size() const { return grammar_productions_; }

 private:
  Alphabet alphabet_;
  CykRecognizer cyk_;
  std::size_t grammar_productions_;
};

bool npda_accepts(const Npda& m, const Word& w);

/// holds = L(M) is empty; otherwise witness = a shortest accepted word.
DecisionOutcome npda_is_empty(const Npda& m);

/// Requires require_dpda(m). The result again satisfies it.
Npda dpda_complement(const Npda& m);

/// L(A) ∩ L(M). A must be epsilon-free; alphabets are merged.
Npda product_nfa_npda(const Nfa& a, const Npda& m);

}  // namespace shufflekit

#endif
