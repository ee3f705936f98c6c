#include "shufflekit/decompose.hpp"

#include <algorithm>
#include <set>

#include "shufflekit/decide.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/shuffle.hpp"

namespace shufflekit {

LazyDeterminizer::LazyDeterminizer(const Nfa& m) : m_(m) {
  intern({});
  start_ = intern(epsilon_closure(m, {m.start()}));
}

int LazyDeterminizer::intern(StateSet set) {
  auto [it, inserted] = ids_.emplace(std::move(set), static_cast<int>(sets_.size()));
  if (inserted) {
    sets_.push_back(it->first);
    next_.emplace_back(m_.alphabet().size(), -1);
  }
  return it->second;
}

int LazyDeterminizer::step(int subset, int label) {
  if (next_[subset][label] < 0) {
    int id = intern(shufflekit::step(m_, sets_[subset], label));
    next_[subset][label] = id;
  }
  return next_[subset][label];
}

bool LazyDeterminizer::contains(int id, StateId s) const {
  return std::binary_search(sets_[id].begin(), sets_[id].end(), s);
}

namespace {

constexpr std::size_t kNodeBudget = 1'000'000;

// Splits the positions of one accepted word between two accumulators. Each
// grid cell (i,j) holds the subsets reached by the distinct interleavings of
// x[0..i) and y[0..j); a dead subset anywhere rules the split out.
class SplitSearch {
 public:
  SplitSearch(const Nfa& collapsed, LazyDeterminizer& lazy, std::vector<int> word, Word probe)
      : m_(collapsed), lazy_(lazy), word_(std::move(word)), probe_(std::move(probe)) {}

  std::optional<std::pair<Word, Word>> run() {
    Grid grid{{{lazy_.start()}}};
    if (search(0, grid)) return std::make_pair(decode(x_), decode(y_));
    return std::nullopt;
  }

  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t exact_checks = 0;

 private:
  using Cell = std::vector<int>;
  using Grid = std::vector<std::vector<Cell>>;

  Word decode(const std::vector<int>& w) const {
    Word out;
    for (int c : w) out.push_back(m_.alphabet()[c]);
    return out;
  }

  std::optional<Cell> advance(const Cell& from, int label, Cell cell) {
    for (int s : from) cell.push_back(lazy_.step(s, label));
    std::sort(cell.begin(), cell.end());
    cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    if (!cell.empty() && cell.front() == 0) return std::nullopt;
    return cell;
  }

  std::optional<Grid> extend_x(const Grid& g, int c) {
    Grid out = g;
    out.emplace_back(y_.size() + 1);
    const std::size_t i = x_.size() + 1;
    for (std::size_t j = 0; j <= y_.size(); ++j) {
      Cell left;
      if (j > 0)
        for (int s : out[i][j - 1]) left.push_back(lazy_.step(s, y_[j - 1]));
      auto cell = advance(out[i - 1][j], c, std::move(left));
      if (!cell) return std::nullopt;
      out[i][j] = std::move(*cell);
    }
    return out;
  }

  std::optional<Grid> extend_y(const Grid& g, int c) {
    Grid out = g;
    const std::size_t j = y_.size() + 1;
    for (std::size_t i = 0; i <= x_.size(); ++i) {
      out[i].emplace_back();
      Cell up;
      if (i > 0)
        for (int s : out[i - 1][j]) up.push_back(lazy_.step(s, x_[i - 1]));
      auto cell = advance(out[i][j - 1], c, std::move(up));
      if (!cell) return std::nullopt;
      out[i][j] = std::move(*cell);
    }
    return out;
  }

  bool leaf() {
    ++leaves;
    if (x_.empty() || y_.empty()) return false;
    Word x = decode(x_), y = decode(y_);
    // Every interleaving already lands in the final subset; what remains is
    // L(M) ⊆ x ⧢ y.
    if (!word_in_shuffle(probe_, x, y)) return false;
    ++exact_checks;
    return lang_subset_word_shuffle(m_, x, y).holds;
  }

  bool search(std::size_t t, const Grid& g) {
    if (++nodes > kNodeBudget) throw ResourceError("decompose: split search exceeded its node budget");
    if (t == word_.size()) return leaf();
    const int c = word_[t];
    if (auto next = extend_x(g, c)) {
      x_.push_back(c);
      if (search(t + 1, *next)) return true;
      x_.pop_back();
    }
    // Splits with x and y swapped are the same candidate.
    if (t == 0 || x_ == y_) return false;
    if (auto next = extend_y(g, c)) {
      y_.push_back(c);
      if (search(t + 1, *next)) return true;
      y_.pop_back();
    }
    return false;
  }

  const Nfa& m_;
  LazyDeterminizer& lazy_;
  std::vector<int> word_;
  Word probe_;
  std::vector<int> x_, y_;
};

}  // namespace

Decomposition extract_candidate(const Nfa& m) {
  Decomposition out;
  Nfa a = trim(remove_epsilon(m));
  if (a.finals().empty()) {
    out.reason = "empty language";
    return out;
  }
  if (!is_acyclic(a)) throw ContractError("decompose: automaton accepts an infinite language");
  std::set<int> letters;
  for (StateId s = 0; s < a.num_states(); ++s)
    for (const Edge& e : a.edges(s)) letters.insert(e.label);
  if (letters.size() < 2) throw ContractError("decompose: language is unary");

  // Path lengths from the start, in topological order.
  const std::size_t q = a.num_states();
  std::vector<std::vector<char>> lengths(q, std::vector<char>(q, 0));
  std::vector<std::size_t> indegree(q, 0);
  for (StateId s = 0; s < q; ++s)
    for (const Edge& e : a.edges(s)) ++indegree[e.target];
  std::vector<StateId> order{a.start()};
  lengths[a.start()][0] = 1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    StateId s = order[k];
    for (const Edge& e : a.edges(s)) {
      for (std::size_t d = 0; d + 1 < q; ++d)
        if (lengths[s][d]) lengths[e.target][d + 1] = 1;
      if (--indegree[e.target] == 0) order.push_back(e.target);
    }
  }
  std::set<std::size_t> final_lengths;
  for (StateId f : a.finals())
    for (std::size_t d = 0; d < q; ++d)
      if (lengths[f][d]) final_lengths.insert(d);
  if (final_lengths.size() != 1) {
    out.reason = "final states at different distances";
    return out;
  }
  const std::size_t n = *final_lengths.begin();
  out.stats["word_length"] = static_cast<std::int64_t>(n);
  if (n < 2) {
    out.reason = "words shorter than two letters";
    return out;
  }

  // Collapse the finals into one state; they have no outgoing moves.
  Nfa c(a.alphabet());
  std::vector<StateId> remap(q);
  for (StateId s = 0; s < q; ++s)
    if (!a.is_final(s)) remap[s] = c.add_state(a.state_name(s));
  const StateId qf = c.add_fresh_state("qf");
  for (StateId s = 0; s < q; ++s) {
    if (a.is_final(s)) remap[s] = qf;
  }
  c.set_start(remap[a.start()]);
  c.set_final(qf);
  for (StateId s = 0; s < q; ++s) {
    if (a.is_final(s)) continue;
    for (const Edge& e : a.edges(s)) c.add_transition(remap[s], e.label, remap[e.target]);
  }

  LazyDeterminizer lazy(c);
  auto extreme_word = [&](bool smallest) {
    std::vector<int> w;
    int cur = lazy.start();
    for (std::size_t t = 0; t < n; ++t) {
      const int size = static_cast<int>(c.alphabet().size());
      for (int k = 0; k < size; ++k) {
        int label = smallest ? k : size - 1 - k;
        int next = lazy.step(cur, label);
        if (next != 0) {
          w.push_back(label);
          cur = next;
          break;
        }
      }
    }
    return w;
  };
  std::vector<int> low = extreme_word(true);
  Word high;
  for (int label : extreme_word(false)) high.push_back(c.alphabet()[label]);

  SplitSearch search(c, lazy, low, high);
  auto found = search.run();
  out.stats["lazy_subsets"] = static_cast<std::int64_t>(lazy.materialized());
  out.stats["search_nodes"] = static_cast<std::int64_t>(search.nodes);
  out.stats["leaves"] = static_cast<std::int64_t>(search.leaves);
  out.stats["exact_checks"] = static_cast<std::int64_t>(search.exact_checks);
  if (!found) {
    out.reason = "no split of an accepted word generates the language";
    return out;
  }
  if (found->second < found->first) std::swap(found->first, found->second);
  out.pair = std::move(found);
  return out;
}

DecisionOutcome verify_word_decomposition(const Nfa& m, const Word& u, const Word& v) {
  Alphabet alphabet = m.alphabet().merged_with(Alphabet::of_word(concat(u, v)));
  DecisionOutcome out = equivalent(with_alphabet(m, alphabet), naive_shuffle_nfa(u, v, alphabet));
  out.method = "verify-decomposition: holds=L(M)=u⧢v";
  return out;
}

Decomposition decompose(const Nfa& m) {
  Decomposition out = extract_candidate(m);
  if (!out.pair) return out;
  DecisionOutcome check = verify_word_decomposition(m, out.pair->first, out.pair->second);
  if (!check.holds) {
    out.pair.reset();
    out.reason = "candidate failed verification";
  }
  return out;
}

}  // namespace shufflekit
