#ifndef SHUFFLEKIT_GRAMMAR_HPP
#define SHUFFLEKIT_GRAMMAR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shufflekit/alphabet.hpp"

namespace shufflekit {

/// Right-hand-side item: nonterminal index (>= 0) or terminal t encoded as -(t+1).
inline int terminal_item(int t) { return -(t + 1); }
inline bool is_terminal_item(int x) { return x < 0; }
inline int terminal_of(int x) { return -x - 1; }

struct Production {
  int lhs;
  std::vector<int> rhs;
};

/// Context-free grammar over an indexed terminal alphabet.
struct Grammar {
  Alphabet terminals;
  std::vector<std::string> names;  // one per nonterminal
  int start = 0;
  std::vector<Production> productions;

  int add_nonterminal(std::string name) {
    names.push_back(std::move(name));
    return static_cast<int>(names.size()) - 1;
  }
  int num_nonterminals() const { return static_cast<int>(names.size()); }
};

/// A shortest terminal word derivable from the start symbol, if any.
std::optional<std::vector<int>> shortest_derivable_word(const Grammar& g);

/// Membership via CYK on the binarized grammar, with nullable symbols and
/// unit chains handled by closure instead of eliminating them.
class CykRecognizer {
 public:
  explicit CykRecognizer(const Grammar& g);
  bool accepts(const std::vector<int>& w) const;
  std::size_t num_binary_productions() const { return binary_.size(); }

 private:
  using Bits = std::vector<std::uint64_t>;
  struct Binary {
    int lhs, left, right;
  };

  void add_closure(Bits& set) const;

  int num_symbols_ = 0;  // nonterminals then terminals
  int num_nonterminals_ = 0;
  int start_ = 0;
  bool start_nullable_ = false;
  std::vector<Binary> binary_;
  std::vector<Bits> unit_up_;  // unit_up_[x]: nonterminals A with A =>* x
};

}  // namespace shufflekit

#endif
