#ifndef SHUFFLEKIT_REGEX_HPP
#define SHUFFLEKIT_REGEX_HPP

#include <memory>
#include <string>

#include "shufflekit/nfa.hpp"

namespace shufflekit {

/// Regular expression tree; nodes are shared and immutable.
struct Regex {
  enum class Kind { Empty, Epsilon, Symbol, Union, Concat, Star };
  Kind kind;
  int symbol = -1;
  std::shared_ptr<const Regex> left, right;
};
using RegexPtr = std::shared_ptr<const Regex>;

RegexPtr re_empty();
RegexPtr re_epsilon();
RegexPtr re_symbol(int a);
/// The combinators simplify around the empty set and the empty word.
RegexPtr re_union(RegexPtr a, RegexPtr b);
RegexPtr re_concat(RegexPtr a, RegexPtr b);
RegexPtr re_star(RegexPtr a);

/// State elimination. Throws ResourceError above `state_bound` states.
RegexPtr nfa_to_regex(const Nfa& m, std::size_t state_bound);

std::string regex_to_string(const RegexPtr& r, const Alphabet& alphabet);

}  // namespace shufflekit

#endif
