#include "shufflekit/grammar.hpp"

#include <functional>
#include <limits>
#include <queue>

namespace shufflekit {

std::optional<std::vector<int>> shortest_derivable_word(const Grammar& g) {
  const int n = g.num_nonterminals();
  if (n == 0) return std::nullopt;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

  // Knuth's generalization of Dijkstra: a production fires once all of its
  // nonterminals are settled.
  std::vector<std::vector<std::size_t>> occurs(n);
  std::vector<int> pending(g.productions.size(), 0);
  std::vector<std::int64_t> partial(g.productions.size(), 0);
  using Item = std::pair<std::int64_t, std::size_t>;  // (length, production)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::size_t p = 0; p < g.productions.size(); ++p) {
    for (int x : g.productions[p].rhs) {
      if (is_terminal_item(x)) {
        ++partial[p];
      } else {
        ++pending[p];
        occurs[x].push_back(p);
      }
    }
    if (pending[p] == 0) queue.emplace(partial[p], p);
  }

  std::vector<std::int64_t> dist(n, kInf);
  std::vector<std::size_t> chosen(n, 0);
  while (!queue.empty()) {
    auto [len, p] = queue.top();
    queue.pop();
    int a = g.productions[p].lhs;
    if (dist[a] != kInf) continue;
    dist[a] = len;
    chosen[a] = p;
    if (a == g.start) break;
    for (std::size_t q : occurs[a]) {
      partial[q] += len;
      if (--pending[q] == 0) queue.emplace(partial[q], q);
    }
  }
  if (dist[g.start] == kInf) return std::nullopt;

  std::vector<int> word;
  std::vector<int> stack{g.start};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (is_terminal_item(x)) {
      word.push_back(terminal_of(x));
      continue;
    }
    const auto& rhs = g.productions[chosen[x]].rhs;
    for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) stack.push_back(*it);
  }
  return word;
}

namespace {

void set_bit(std::vector<std::uint64_t>& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
bool test_bit(const std::vector<std::uint64_t>& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }

}  // namespace

CykRecognizer::CykRecognizer(const Grammar& g) {
  num_nonterminals_ = g.num_nonterminals();
  start_ = g.start;

  // Binarize: long right-hand sides become chains of fresh nonterminals.
  std::vector<Production> prods;
  int next = num_nonterminals_;
  for (const auto& p : g.productions) {
    if (p.rhs.size() <= 2) {
      prods.push_back(p);
      continue;
    }
    int lhs = p.lhs;
    for (std::size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      int fresh = next++;
      prods.push_back({lhs, {p.rhs[i], fresh}});
      lhs = fresh;
    }
    prods.push_back({lhs, {p.rhs[p.rhs.size() - 2], p.rhs.back()}});
  }
  num_nonterminals_ = next;
  const int num_terminals = static_cast<int>(g.terminals.size());
  num_symbols_ = num_nonterminals_ + num_terminals;
  auto sym = [&](int item) { return is_terminal_item(item) ? num_nonterminals_ + terminal_of(item) : item; };

  std::vector<char> nullable(num_nonterminals_, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : prods) {
      if (nullable[p.lhs]) continue;
      bool all = true;
      for (int x : p.rhs) all = all && !is_terminal_item(x) && nullable[x];
      if (all) nullable[p.lhs] = 1, changed = true;
    }
  }
  start_nullable_ = num_nonterminals_ > 0 && nullable[start_];

  // unit[x]: nonterminals A with a single-step unit derivation A => x.
  std::vector<std::vector<int>> unit(num_symbols_);
  for (const auto& p : prods) {
    if (p.rhs.size() == 1) {
      unit[sym(p.rhs[0])].push_back(p.lhs);
    } else if (p.rhs.size() == 2) {
      int x = p.rhs[0], y = p.rhs[1];
      if (!is_terminal_item(y) && nullable[y]) unit[sym(x)].push_back(p.lhs);
      if (!is_terminal_item(x) && nullable[x]) unit[sym(y)].push_back(p.lhs);
      binary_.push_back({p.lhs, sym(x), sym(y)});
    }
  }
  const std::size_t words = (num_symbols_ + 63) / 64;
  unit_up_.assign(num_symbols_, Bits(words, 0));
  for (int x = 0; x < num_symbols_; ++x) {
    Bits& b = unit_up_[x];
    std::vector<int> todo{x};
    set_bit(b, x);
    while (!todo.empty()) {
      int y = todo.back();
      todo.pop_back();
      for (int a : unit[y]) {
        if (!test_bit(b, a)) set_bit(b, a), todo.push_back(a);
      }
    }
  }
}

void CykRecognizer::add_closure(Bits& set) const {
  Bits out = set;
  for (int x = 0; x < num_symbols_; ++x) {
    if (!test_bit(set, x)) continue;
    const Bits& up = unit_up_[x];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] |= up[i];
  }
  set.swap(out);
}

bool CykRecognizer::accepts(const std::vector<int>& w) const {
  const std::size_t n = w.size();
  if (n == 0) return start_nullable_;
  if (num_nonterminals_ == 0) return false;
  const std::size_t words = (num_symbols_ + 63) / 64;
  // table[i][len-1] covers w[i .. i+len).
  std::vector<std::vector<Bits>> table(n, std::vector<Bits>(n));
  for (std::size_t i = 0; i < n; ++i) {
    table[i][0] = unit_up_[num_nonterminals_ + w[i]];
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      Bits cell(words, 0);
      for (std::size_t k = 1; k < len; ++k) {
        const Bits& left = table[i][k - 1];
        const Bits& right = table[i + k][len - k - 1];
        for (const auto& b : binary_) {
          if (test_bit(left, b.left) && test_bit(right, b.right)) set_bit(cell, b.lhs);
        }
      }
      add_closure(cell);
      table[i][len - 1] = std::move(cell);
    }
  }
  return test_bit(table[0][n - 1], start_);
}

}  // namespace shufflekit
