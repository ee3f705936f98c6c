#ifndef SHUFFLEKIT_OUTCOME_HPP
#define SHUFFLEKIT_OUTCOME_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "shufflekit/alphabet.hpp"

namespace shufflekit {

/// Verdict of a decision procedure.
///
/// `method` names the procedure and the polarity of `holds` (e.g.
/// "nfa-emptiness: holds=empty"). `bounded` marks a positive verdict that
/// is only certified up to a search cap recorded in `stats`.
struct DecisionOutcome {
  bool holds = false;
  std::optional<Word> witness;
  std::string method;
  std::map<std::string, std::int64_t> stats;
  bool bounded = false;

  static DecisionOutcome yes(std::string method) {
    DecisionOutcome o;
    o.holds = true;
    o.method = std::move(method);
    return o;
  }
  static DecisionOutcome no(std::string method, std::optional<Word> witness = std::nullopt) {
    DecisionOutcome o;
    o.holds = false;
    o.method = std::move(method);
    o.witness = std::move(witness);
    return o;
  }
};

}  // namespace shufflekit

#endif
