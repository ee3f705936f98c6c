#include "shufflekit/regex.hpp"

#include <map>

#include "shufflekit/errors.hpp"

namespace shufflekit {

namespace {

RegexPtr make(Regex::Kind kind, int symbol = -1, RegexPtr left = nullptr, RegexPtr right = nullptr) {
  return std::make_shared<const Regex>(Regex{kind, symbol, std::move(left), std::move(right)});
}

bool is(const RegexPtr& r, Regex::Kind k) { return r->kind == k; }

}  // namespace

RegexPtr re_empty() {
  static const RegexPtr e = make(Regex::Kind::Empty);
  return e;
}

RegexPtr re_epsilon() {
  static const RegexPtr e = make(Regex::Kind::Epsilon);
  return e;
}

RegexPtr re_symbol(int a) { return make(Regex::Kind::Symbol, a); }

RegexPtr re_union(RegexPtr a, RegexPtr b) {
  if (is(a, Regex::Kind::Empty)) return b;
  if (is(b, Regex::Kind::Empty) || a == b) return a;
  return make(Regex::Kind::Union, -1, std::move(a), std::move(b));
}

RegexPtr re_concat(RegexPtr a, RegexPtr b) {
  if (is(a, Regex::Kind::Empty) || is(b, Regex::Kind::Empty)) return re_empty();
  if (is(a, Regex::Kind::Epsilon)) return b;
  if (is(b, Regex::Kind::Epsilon)) return a;
  return make(Regex::Kind::Concat, -1, std::move(a), std::move(b));
}

RegexPtr re_star(RegexPtr a) {
  if (is(a, Regex::Kind::Empty) || is(a, Regex::Kind::Epsilon)) return re_epsilon();
  if (is(a, Regex::Kind::Star)) return a;
  return make(Regex::Kind::Star, -1, std::move(a));
}

RegexPtr nfa_to_regex(const Nfa& m, std::size_t state_bound) {
  const std::size_t n = m.num_states();
  if (n > state_bound)
    throw ResourceError("state elimination: " + std::to_string(n) + " states exceed bound " +
                        std::to_string(state_bound));
  if (n == 0) return re_empty();
  // Generalized automaton: states 0..n-1, fresh source n and sink n+1.
  const std::size_t src = n, sink = n + 1;
  std::map<std::pair<std::size_t, std::size_t>, RegexPtr> edge;
  auto add = [&](std::size_t i, std::size_t j, RegexPtr r) {
    auto [it, fresh] = edge.emplace(std::make_pair(i, j), r);
    if (!fresh) it->second = re_union(it->second, std::move(r));
  };
  add(src, m.start(), re_epsilon());
  for (StateId s = 0; s < n; ++s) {
    if (m.is_final(s)) add(s, sink, re_epsilon());
    for (const Edge& e : m.edges(s))
      add(s, e.target, e.label == kEpsilon ? re_epsilon() : re_symbol(e.label));
  }
  for (std::size_t k = 0; k < n; ++k) {
    RegexPtr loop = re_epsilon();
    if (auto it = edge.find({k, k}); it != edge.end()) loop = re_star(it->second);
    std::vector<std::pair<std::size_t, RegexPtr>> in, out;
    for (const auto& [key, r] : edge) {
      if (key.second == k && key.first != k) in.emplace_back(key.first, r);
      if (key.first == k && key.second != k) out.emplace_back(key.second, r);
    }
    for (auto it = edge.begin(); it != edge.end();) {
      if (it->first.first == k || it->first.second == k) {
        it = edge.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [i, ri] : in)
      for (const auto& [j, rj] : out) add(i, j, re_concat(re_concat(ri, loop), rj));
  }
  auto it = edge.find({src, sink});
  return it == edge.end() ? re_empty() : it->second;
}

std::string regex_to_string(const RegexPtr& r, const Alphabet& alphabet) {
  switch (r->kind) {
    case Regex::Kind::Empty:
      return "<empty>";
    case Regex::Kind::Epsilon:
      return "<eps>";
    case Regex::Kind::Symbol:
      return alphabet[r->symbol];
    case Regex::Kind::Union:
      return "(" + regex_to_string(r->left, alphabet) + "+" + regex_to_string(r->right, alphabet) + ")";
    case Regex::Kind::Concat:
      return regex_to_string(r->left, alphabet) + regex_to_string(r->right, alphabet);
    case Regex::Kind::Star:
      return "(" + regex_to_string(r->left, alphabet) + ")*";
  }
  return "";
}

}  // namespace shufflekit
