#include "shufflekit/counters.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "shufflekit/errors.hpp"

namespace shufflekit {

StateId Ncm::add_state(std::string name) {
  if (name_index_.count(name)) throw InputError("duplicate state name '" + name + "'");
  StateId id = names_.size();
  name_index_.emplace(name, id);
  names_.push_back(std::move(name));
  finals_.push_back(false);
  by_state_.emplace_back();
  return id;
}

StateId Ncm::add_fresh_state(const std::string& hint) {
  std::string name = hint;
  if (name.empty() || name_index_.count(name)) {
    name = hint + std::to_string(names_.size());
    while (name_index_.count(name)) name += "'";
  }
  return add_state(std::move(name));
}

void Ncm::add_rule(CmRule rule) {
  if (rule.from >= num_states() || rule.to >= num_states())
    throw InputError("counter rule endpoint out of range");
  if (rule.input != kEndMarker &&
      (rule.input < 0 || static_cast<std::size_t>(rule.input) >= alphabet_.size()))
    throw InputError("counter rule input out of range");
  if (rule.guard.size() != k_ || rule.update.size() != k_)
    throw InputError("counter rule guard/update length differs from k = " + std::to_string(k_));
  for (std::size_t i = 0; i < k_; ++i) {
    if (rule.guard[i] > 1) throw InputError("guard entries must be 0 or 1");
    if (rule.update[i] < -1 || rule.update[i] > 1) throw InputError("update entries must be -1, 0 or 1");
    if (rule.guard[i] == 0 && rule.update[i] < 0)
      throw InputError("rule from '" + names_[rule.from] + "' decrements counter " +
                       std::to_string(i) + " under a zero guard");
  }
  if (rule.input == kEndMarker && rule.move == HeadMove::Right)
    throw InputError("rule from '" + names_[rule.from] + "' moves right past the end-marker");
  for (std::size_t i : by_state_[rule.from]) {
    const CmRule& r = rules_[i];
    if (r.input == rule.input && r.guard == rule.guard && r.to == rule.to && r.move == rule.move &&
        r.update == rule.update)
      return;
  }
  by_state_[rule.from].push_back(rules_.size());
  rules_.push_back(std::move(rule));
}

std::optional<StateId> Ncm::find_state(const std::string& name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

bool Ncm::is_deterministic() const {
  std::set<std::tuple<StateId, int, std::vector<std::uint8_t>>> seen;
  for (const auto& r : rules_)
    if (!seen.emplace(r.from, r.input, r.guard).second) return false;
  return true;
}

std::vector<std::uint8_t> guard_of(const std::vector<std::int64_t>& counters) {
  std::vector<std::uint8_t> g(counters.size());
  for (std::size_t i = 0; i < counters.size(); ++i) g[i] = counters[i] > 0 ? 1 : 0;
  return g;
}

std::vector<std::vector<std::uint8_t>> all_guards(std::size_t k) {
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << k); ++bits) {
    std::vector<std::uint8_t> g(k);
    for (std::size_t i = 0; i < k; ++i) g[i] = (bits >> (k - 1 - i)) & 1;
    out.push_back(std::move(g));
  }
  return out;
}

std::string format_guard(const std::vector<std::uint8_t>& g) {
  std::string s;
  for (auto b : g) s += b ? '1' : '0';
  return s.empty() ? "-" : s;
}

namespace {

std::string input_name(const Ncm& m, int input) {
  return input == kEndMarker ? kEndMarkerToken : m.alphabet()[input];
}

std::size_t guard_index(const std::vector<std::uint8_t>& g) {
  std::size_t idx = 0;
  for (auto b : g) idx = (idx << 1) | b;
  return idx;
}

template <typename T>
std::vector<T> joined(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Counter values with per-counter direction and reversal count.
struct Counters {
  std::vector<std::int64_t> value;
  std::vector<std::uint8_t> decreasing;
  std::vector<std::uint8_t> reversals;

  explicit Counters(std::size_t k) : value(k, 0), decreasing(k, 0), reversals(k, 0) {}

  // False when the update would exceed the reversal bound.
  bool apply(const std::vector<int>& update, std::size_t r) {
    for (std::size_t i = 0; i < update.size(); ++i) {
      const int d = update[i];
      if (d == 0) continue;
      const bool dec = d < 0;
      if (dec != static_cast<bool>(decreasing[i])) {
        decreasing[i] = dec;
        if (++reversals[i] > r) return false;
      }
      value[i] += d;
      if (value[i] < 0) throw std::logic_error("counter dropped below zero");
    }
    return true;
  }
};

std::string counters_key(StateId q, const Counters& c) {
  std::string key(reinterpret_cast<const char*>(&q), sizeof q);
  for (std::size_t i = 0; i < c.value.size(); ++i) {
    key.append(reinterpret_cast<const char*>(&c.value[i]), sizeof(std::int64_t));
    key.push_back(static_cast<char>(c.decreasing[i]));
    key.push_back(static_cast<char>(c.reversals[i]));
  }
  return key;
}

// Assigns ids to product tuples on first sight, with canonical names.
template <typename Key>
struct Interner {
  Ncm& out;
  std::map<Key, StateId> ids;
  std::deque<Key> queue;

  StateId operator()(const Key& key, const std::string& name) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId id = out.find_state(name) ? out.add_fresh_state("s") : out.add_state(name);
    ids.emplace(key, id);
    queue.push_back(key);
    return id;
  }
};

}  // namespace

Ncm cm_with_alphabet(const Ncm& m, const Alphabet& alphabet) {
  if (!m.alphabet().subset_of(alphabet))
    throw InputError("target alphabet does not contain the machine's alphabet");
  Ncm out(m.k(), m.r(), alphabet);
  for (StateId s = 0; s < m.num_states(); ++s) {
    out.add_state(m.state_name(s));
    out.set_final(s, m.is_final(s));
  }
  out.set_start(m.start());
  for (CmRule r : m.rules()) {
    if (r.input != kEndMarker) r.input = static_cast<int>(alphabet.index_of(m.alphabet()[r.input]));
    out.add_rule(std::move(r));
  }
  return out;
}

Ncm ncm_from_nfa(const Nfa& a) {
  Ncm out(0, 0, a.alphabet());
  for (StateId s = 0; s < a.num_states(); ++s) {
    out.add_state(a.state_name(s));
    out.set_final(s, a.is_final(s));
  }
  if (a.num_states() == 0) {
    out.set_start(out.add_state("q0"));
    return out;
  }
  out.set_start(a.start());
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const Edge& e : a.edges(s)) {
      if (e.label != kEpsilon) {
        out.add_rule({s, e.label, {}, e.target, HeadMove::Right, {}});
        continue;
      }
      for (std::size_t x = 0; x < a.alphabet().size(); ++x)
        out.add_rule({s, static_cast<int>(x), {}, e.target, HeadMove::Stay, {}});
      out.add_rule({s, kEndMarker, {}, e.target, HeadMove::Stay, {}});
    }
  }
  return out;
}

bool cm_accepts(const Ncm& m, const Word& w, const CmAcceptOptions& options) {
  const std::vector<int> input = m.alphabet().encode(w);
  if (m.num_states() == 0) return false;
  const std::size_t n = input.size();
  std::size_t explored = 0;

  std::vector<std::pair<StateId, Counters>> frontier{{m.start(), Counters(m.k())}};
  for (std::size_t pos = 0; pos <= n; ++pos) {
    const int symbol = pos < n ? input[pos] : kEndMarker;
    std::int64_t largest = 0;
    for (const auto& [q, c] : frontier)
      for (auto v : c.value) largest = std::max(largest, v);
    const std::size_t bound =
        options.stay_bound ? options.stay_bound
                           : m.num_states() * static_cast<std::size_t>(largest + (n - pos) + 2);

    // Breadth-first over stay moves, so each configuration is first seen
    // with its shortest stay run.
    std::unordered_map<std::string, char> seen;
    std::deque<std::tuple<StateId, Counters, std::size_t>> queue;
    for (auto& [q, c] : frontier) {
      if (seen.emplace(counters_key(q, c), 0).second) queue.emplace_back(q, std::move(c), 0);
    }
    std::vector<std::pair<StateId, Counters>> next;
    std::unordered_map<std::string, char> next_seen;
    while (!queue.empty()) {
      auto [q, c, stays] = std::move(queue.front());
      queue.pop_front();
      if (pos == n && m.is_final(q)) return true;
      if (++explored > options.config_budget)
        throw ResourceError("cm_accepts: configuration budget of " +
                            std::to_string(options.config_budget) + " exhausted");
      const auto g = guard_of(c.value);
      for (std::size_t i : m.rules_from(q)) {
        const CmRule& r = m.rules()[i];
        if (r.input != symbol || r.guard != g) continue;
        Counters d = c;
        if (!d.apply(r.update, m.r())) continue;
        if (r.move == HeadMove::Right) {
          if (next_seen.emplace(counters_key(r.to, d), 0).second) next.emplace_back(r.to, std::move(d));
        } else if (stays < bound && seen.emplace(counters_key(r.to, d), 0).second) {
          queue.emplace_back(r.to, std::move(d), stays + 1);
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) return false;
  }
  return false;
}

Ncm cm_shuffle(const Ncm& m1_in, const Ncm& m2_in) {
  Alphabet alphabet = m1_in.alphabet().merged_with(m2_in.alphabet());
  Ncm m1 = cm_with_alphabet(m1_in, alphabet);
  Ncm m2 = cm_with_alphabet(m2_in, alphabet);
  const std::size_t k1 = m1.k(), k2 = m2.k();
  Ncm out(k1 + k2, std::max(m1.r(), m2.r()), alphabet);
  if (m1.num_states() == 0 || m2.num_states() == 0) {
    out.set_start(out.add_state("q0"));
    return out;
  }
  const auto guards1 = all_guards(k1);
  const auto guards2 = all_guards(k2);
  const std::vector<int> zero1(k1, 0), zero2(k2, 0);

  // owner 0: next symbol unclaimed; 1 or 2: that machine has stayed on it.
  using Key = std::tuple<StateId, StateId, int>;
  Interner<Key> intern{out, {}, {}};
  static const char* kOwner[] = {"-", "1", "2"};
  auto state = [&](StateId p, StateId q, int owner) {
    StateId id = intern(Key{p, q, owner}, "(" + m1.state_name(p) + "," + m2.state_name(q) + "," +
                                               kOwner[owner] + ")");
    out.set_final(id, owner == 0 && m1.is_final(p) && m2.is_final(q));
    return id;
  };
  out.set_start(state(m1.start(), m2.start(), 0));
  while (!intern.queue.empty()) {
    auto [p, q, owner] = intern.queue.front();
    intern.queue.pop_front();
    const StateId from = intern.ids.at(Key{p, q, owner});
    if (owner != 2) {
      for (std::size_t i : m1.rules_from(p)) {
        const CmRule& r = m1.rules()[i];
        if (r.input == kEndMarker && owner != 0) continue;
        int next_owner = (r.input == kEndMarker || r.move == HeadMove::Right) ? 0 : 1;
        StateId to = state(r.to, q, next_owner);
        for (const auto& g2 : guards2)
          out.add_rule({from, r.input, joined(r.guard, g2), to, r.move, joined(r.update, zero2)});
      }
    }
    if (owner != 1) {
      for (std::size_t i : m2.rules_from(q)) {
        const CmRule& r = m2.rules()[i];
        if (r.input == kEndMarker && owner != 0) continue;
        int next_owner = (r.input == kEndMarker || r.move == HeadMove::Right) ? 0 : 2;
        StateId to = state(p, r.to, next_owner);
        for (const auto& g1 : guards1)
          out.add_rule({from, r.input, joined(g1, r.guard), to, r.move, joined(zero1, r.update)});
      }
    }
  }
  return out;
}

Ncm cm_product(const Ncm& m1_in, const Ncm& m2_in) {
  Alphabet alphabet = m1_in.alphabet().merged_with(m2_in.alphabet());
  Ncm m1 = cm_with_alphabet(m1_in, alphabet);
  Ncm m2 = cm_with_alphabet(m2_in, alphabet);
  const std::size_t k1 = m1.k(), k2 = m2.k();
  Ncm out(k1 + k2, std::max(m1.r(), m2.r()), alphabet);
  if (m1.num_states() == 0 || m2.num_states() == 0) {
    out.set_start(out.add_state("q0"));
    return out;
  }
  const auto guards1 = all_guards(k1);
  const auto guards2 = all_guards(k2);
  const std::vector<int> zero1(k1, 0), zero2(k2, 0);

  // phase 1: M1 acts on the current symbol; phase 2: M1 has consumed it
  // and M2 acts.
  using Key = std::tuple<StateId, StateId, int>;
  Interner<Key> intern{out, {}, {}};
  auto state = [&](StateId p, StateId q, int phase) {
    StateId id = intern(Key{p, q, phase}, "(" + m1.state_name(p) + "," + m2.state_name(q) + "," +
                                              std::to_string(phase) + ")");
    out.set_final(id, phase == 1 && m1.is_final(p) && m2.is_final(q));
    return id;
  };
  out.set_start(state(m1.start(), m2.start(), 1));
  while (!intern.queue.empty()) {
    auto [p, q, phase] = intern.queue.front();
    intern.queue.pop_front();
    const StateId from = intern.ids.at(Key{p, q, phase});
    if (phase == 1) {
      for (std::size_t i : m1.rules_from(p)) {
        const CmRule& r = m1.rules()[i];
        const bool consumed = r.input != kEndMarker && r.move == HeadMove::Right;
        StateId to = state(r.to, q, consumed ? 2 : 1);
        for (const auto& g2 : guards2)
          out.add_rule({from, r.input, joined(r.guard, g2), to, HeadMove::Stay, joined(r.update, zero2)});
      }
      for (std::size_t i : m2.rules_from(q)) {
        const CmRule& r = m2.rules()[i];
        if (r.input != kEndMarker) continue;
        StateId to = state(p, r.to, 1);
        for (const auto& g1 : guards1)
          out.add_rule({from, r.input, joined(g1, r.guard), to, HeadMove::Stay, joined(zero1, r.update)});
      }
    } else {
      for (std::size_t i : m2.rules_from(q)) {
        const CmRule& r = m2.rules()[i];
        if (r.input == kEndMarker) continue;
        StateId to = state(p, r.to, r.move == HeadMove::Right ? 1 : 2);
        for (const auto& g1 : guards1)
          out.add_rule({from, r.input, joined(g1, r.guard), to, r.move, joined(zero1, r.update)});
      }
    }
  }
  return out;
}

DecisionOutcome check_complete_halting(const Ncm& m) {
  const std::string method = "complete-halting: holds=halts";
  {
    std::set<std::tuple<StateId, int, std::vector<std::uint8_t>>> seen;
    for (const auto& r : m.rules()) {
      if (!seen.emplace(r.from, r.input, r.guard).second) {
        return DecisionOutcome::no(method + "; nondeterministic at state " + m.state_name(r.from) +
                                   " on " + input_name(m, r.input) + " guard " + format_guard(r.guard));
      }
    }
  }
  const std::size_t k = m.k();
  const std::size_t inputs = m.alphabet().size() + 1;
  const std::size_t guards = std::size_t{1} << k;
  auto input_slot = [&](int input) {
    return input == kEndMarker ? m.alphabet().size() : static_cast<std::size_t>(input);
  };
  auto node = [&](StateId q, std::size_t in, std::size_t g) { return (q * inputs + in) * guards + g; };
  const std::size_t nodes = m.num_states() * inputs * guards;

  // Stay-move graph over (state, symbol, guard); a rule fans out to every
  // guard its update can produce.
  struct StayEdge {
    std::size_t from, to, rule;
  };
  std::vector<StayEdge> edges;
  for (std::size_t ri = 0; ri < m.rules().size(); ++ri) {
    const CmRule& r = m.rules()[ri];
    if (r.move != HeadMove::Stay) continue;
    const std::size_t in = input_slot(r.input);
    std::vector<std::vector<std::uint8_t>> targets{{}};
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::uint8_t> options;
      if (r.update[i] > 0) {
        options = {1};
      } else if (r.update[i] == 0) {
        options = {r.guard[i]};
      } else {
        options = {0, 1};
      }
      std::vector<std::vector<std::uint8_t>> grown;
      for (const auto& t : targets)
        for (auto o : options) {
          auto u = t;
          u.push_back(o);
          grown.push_back(std::move(u));
        }
      targets = std::move(grown);
    }
    for (const auto& t : targets)
      edges.push_back({node(r.from, in, guard_index(r.guard)), node(r.to, in, guard_index(t)), ri});
  }

  std::vector<char> active(edges.size(), 1);
  for (;;) {
    std::vector<std::vector<std::size_t>> succ(nodes);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (active[e]) succ[edges[e].from].push_back(e);

    // Tarjan's algorithm, iterative.
    std::vector<std::size_t> index(nodes, SIZE_MAX), low(nodes, 0), comp(nodes, SIZE_MAX);
    std::vector<char> on_stack(nodes, 0);
    std::vector<std::size_t> stack;
    std::size_t counter = 0, comps = 0;
    for (std::size_t root = 0; root < nodes; ++root) {
      if (index[root] != SIZE_MAX) continue;
      std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = 1;
      while (!call.empty()) {
        auto& [v, next] = call.back();
        if (next < succ[v].size()) {
          std::size_t w = edges[succ[v][next++]].to;
          if (index[w] == SIZE_MAX) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = 1;
            call.emplace_back(w, 0);
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], index[w]);
          }
          continue;
        }
        if (low[v] == index[v]) {
          std::size_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = comps;
          } while (w != v);
          ++comps;
        }
        std::size_t done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }

    // Inside a component, a counter that is never incremented can only be
    // decremented finitely often; such edges cannot sustain a cycle.
    std::vector<std::vector<char>> incremented(comps, std::vector<char>(k, 0));
    std::vector<char> cyclic(comps, 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!active[e] || comp[edges[e].from] != comp[edges[e].to]) continue;
      cyclic[comp[edges[e].from]] = 1;
      const CmRule& r = m.rules()[edges[e].rule];
      for (std::size_t i = 0; i < k; ++i)
        if (r.update[i] > 0) incremented[comp[edges[e].from]][i] = 1;
    }
    bool removed = false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!active[e] || comp[edges[e].from] != comp[edges[e].to]) continue;
      const CmRule& r = m.rules()[edges[e].rule];
      for (std::size_t i = 0; i < k; ++i) {
        if (r.update[i] < 0 && !incremented[comp[edges[e].from]][i]) {
          active[e] = 0;
          removed = true;
          break;
        }
      }
    }
    if (removed) continue;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!active[e] || comp[edges[e].from] != comp[edges[e].to]) continue;
      const CmRule& r = m.rules()[edges[e].rule];
      return DecisionOutcome::no(method + "; stay moves may cycle at state " + m.state_name(r.from) +
                                 " on " + input_name(m, r.input) + " guard " + format_guard(r.guard));
    }
    DecisionOutcome out = DecisionOutcome::yes(method);
    out.stats["stay_edges"] = static_cast<std::int64_t>(edges.size());
    return out;
  }
}

Ncm dcm_complement(const Ncm& m) {
  DecisionOutcome check = check_complete_halting(m);
  if (!check.holds) throw ContractError("dcm_complement: " + check.method);
  const std::size_t k = m.k();
  const auto guards = all_guards(k);
  const std::vector<int> zero(k, 0);
  const Alphabet& sigma = m.alphabet();
  const StateId n = m.num_states();

  Ncm out(k, m.r(), sigma);
  for (StateId q = 0; q < n; ++q) out.add_state(m.state_name(q));
  const StateId dead = out.add_fresh_state("<dead>");
  const StateId accept = out.add_fresh_state("<accept>");
  out.set_final(accept);
  // Flagged copies run the end-marker moves; the flag records whether a
  // final state has been seen since the input was exhausted.
  std::vector<std::array<StateId, 2>> flagged(n + 1);
  for (StateId q = 0; q <= n; ++q) {
    const std::string base = out.state_name(q < n ? q : dead);
    for (int f = 0; f < 2; ++f) {
      std::string name = "(" + base + "," + std::to_string(f) + ")";
      flagged[q][f] = out.find_state(name) ? out.add_fresh_state("s") : out.add_state(name);
    }
  }
  auto real = [&](StateId q) { return q < n ? q : dead; };
  auto is_final = [&](StateId q) { return q < n && m.is_final(q); };

  // rule index by (state, input slot, guard)
  std::map<std::tuple<StateId, int, std::size_t>, const CmRule*> table;
  for (const auto& r : m.rules()) table[{r.from, r.input, guard_index(r.guard)}] = &r;

  for (StateId q = 0; q <= n; ++q) {
    for (const auto& g : guards) {
      for (std::size_t a = 0; a < sigma.size(); ++a) {
        auto it = q < n ? table.find({q, static_cast<int>(a), guard_index(g)}) : table.end();
        if (it != table.end()) {
          const CmRule& r = *it->second;
          out.add_rule({q, r.input, r.guard, r.to, r.move, r.update});
        } else {
          out.add_rule({real(q), static_cast<int>(a), g, dead, HeadMove::Right, zero});
        }
      }
      auto it = q < n ? table.find({q, kEndMarker, guard_index(g)}) : table.end();
      const int here = is_final(q) ? 1 : 0;
      for (int f = -1; f < 2; ++f) {
        // f = -1: unflagged state meeting the end-marker for the first time.
        const StateId from = f < 0 ? real(q) : flagged[q][f];
        const int seen = f < 0 ? here : f;
        if (it != table.end()) {
          const CmRule& r = *it->second;
          out.add_rule({from, kEndMarker, g, flagged[r.to][seen | (is_final(r.to) ? 1 : 0)],
                        HeadMove::Stay, r.update});
        } else if (!seen) {
          out.add_rule({from, kEndMarker, g, accept, HeadMove::Stay, zero});
        }
      }
    }
  }
  out.set_start(m.start());
  return out;
}

std::int64_t default_emptiness_cap(const Ncm& m) {
  return static_cast<std::int64_t>(std::max<std::size_t>(m.num_states(), 1)) *
         (std::int64_t{1} << m.k()) * static_cast<std::int64_t>(m.r() + 1) * 4;
}

namespace {

// Fixed-width packed configurations in an open-addressing table.
class ConfigStore {
 public:
  explicit ConfigStore(std::size_t width) : width_(width), slots_(1024, kEmpty) {}

  std::size_t size() const { return count_; }
  const std::uint64_t* at(std::size_t i) const { return &data_[i * width_]; }

  // Index of the record, and whether it was new.
  std::pair<std::size_t, bool> insert(const std::vector<std::uint64_t>& rec) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    std::size_t h = hash(rec.data()) & (slots_.size() - 1);
    while (slots_[h] != kEmpty) {
      if (std::equal(rec.begin(), rec.end(), at(slots_[h]))) return {slots_[h], false};
      h = (h + 1) & (slots_.size() - 1);
    }
    slots_[h] = static_cast<std::uint32_t>(count_);
    data_.insert(data_.end(), rec.begin(), rec.end());
    return {count_++, true};
  }

 private:
  static constexpr std::uint32_t kEmpty = UINT32_MAX;

  std::size_t hash(const std::uint64_t* p) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < width_; ++i) {
      h ^= p[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

  void grow() {
    std::vector<std::uint32_t> bigger(slots_.size() * 2, kEmpty);
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t h = hash(at(i)) & (bigger.size() - 1);
      while (bigger[h] != kEmpty) h = (h + 1) & (bigger.size() - 1);
      bigger[h] = static_cast<std::uint32_t>(i);
    }
    slots_.swap(bigger);
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> data_;
  std::vector<std::uint32_t> slots_;
};

struct BitPacker {
  std::vector<std::uint64_t>& out;
  std::size_t bit = 0;
  void put(std::uint64_t v, unsigned width) {
    for (unsigned i = 0; i < width; ++i, ++bit)
      if ((v >> i) & 1) out[bit >> 6] |= std::uint64_t{1} << (bit & 63);
  }
};

struct BitReader {
  const std::uint64_t* in;
  std::size_t bit = 0;
  std::uint64_t get(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i, ++bit)
      if ((in[bit >> 6] >> (bit & 63)) & 1) v |= std::uint64_t{1} << i;
    return v;
  }
};

unsigned bits_for(std::uint64_t values) {
  unsigned b = 1;
  while ((std::uint64_t{1} << b) < values) ++b;
  return b;
}

}  // namespace

DecisionOutcome cm_is_empty(const Ncm& m, const CmEmptinessOptions& options) {
  DecisionOutcome out;
  out.method = "ncm-emptiness: holds=empty";
  const std::int64_t cap = options.cap > 0 ? options.cap : default_emptiness_cap(m);
  out.stats["cap"] = cap;
  if (m.num_states() == 0) {
    out.holds = true;
    return out;
  }
  const std::size_t k = m.k();
  const std::size_t sigma = m.alphabet().size();
  // Current-symbol slot: 0 = not yet committed, 1..sigma = letter, sigma+1 = end-marker.
  const std::uint64_t end_slot = sigma + 1;
  const unsigned state_bits = bits_for(m.num_states());
  const unsigned slot_bits = bits_for(sigma + 2);
  const unsigned value_bits = bits_for(static_cast<std::uint64_t>(cap) + 1);
  const unsigned rev_bits = bits_for(m.r() + 2);
  const std::size_t total_bits = state_bits + slot_bits + k * (value_bits + 1 + rev_bits);
  const std::size_t width = (total_bits + 63) / 64;

  struct Unpacked {
    StateId q;
    std::uint64_t slot;
    Counters c;
  };
  auto pack = [&](StateId q, std::uint64_t slot, const Counters& c) {
    std::vector<std::uint64_t> rec(width, 0);
    BitPacker p{rec};
    p.put(q, state_bits);
    p.put(slot, slot_bits);
    for (std::size_t i = 0; i < k; ++i) {
      p.put(static_cast<std::uint64_t>(c.value[i]), value_bits);
      p.put(c.decreasing[i], 1);
      p.put(c.reversals[i], rev_bits);
    }
    return rec;
  };
  auto unpack = [&](const std::uint64_t* rec) {
    BitReader r{rec};
    Unpacked u{static_cast<StateId>(r.get(state_bits)), 0, Counters(k)};
    u.slot = r.get(slot_bits);
    for (std::size_t i = 0; i < k; ++i) {
      u.c.value[i] = static_cast<std::int64_t>(r.get(value_bits));
      u.c.decreasing[i] = static_cast<std::uint8_t>(r.get(1));
      u.c.reversals[i] = static_cast<std::uint8_t>(r.get(rev_bits));
    }
    return u;
  };

  ConfigStore store(width);
  std::vector<std::uint32_t> parent;
  std::vector<int> letter;     // symbol consumed on the edge from the parent, or -1
  std::vector<std::uint8_t> stayed;  // edge from the parent was a stay move
  std::size_t pruned = 0;
  auto push = [&](StateId q, std::uint64_t slot, const Counters& c, std::uint32_t from, int read, bool stay) {
    auto [idx, fresh] = store.insert(pack(q, slot, c));
    if (fresh) {
      parent.push_back(from);
      letter.push_back(read);
      stayed.push_back(stay);
      if (store.size() > options.config_budget)
        throw ResourceError("cm_is_empty: configuration budget of " +
                            std::to_string(options.config_budget) + " exhausted");
    }
  };
  // States that cannot reach a final state in the rule graph never lead to acceptance.
  std::vector<std::vector<StateId>> preds(m.num_states());
  for (const auto& r : m.rules()) preds[r.to].push_back(r.from);
  std::vector<char> useful(m.num_states(), 0);
  std::vector<StateId> work;
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_final(q)) useful[q] = 1, work.push_back(q);
  while (!work.empty()) {
    StateId q = work.back();
    work.pop_back();
    for (StateId p : preds[q])
      if (!useful[p]) useful[p] = 1, work.push_back(p);
  }
  out.stats["useless_states"] = std::count(useful.begin(), useful.end(), 0);
  if (!useful[m.start()]) {
    out.stats["configurations"] = 0;
    out.stats["pruned"] = 0;
    out.holds = true;
    return out;
  }
  push(m.start(), 0, Counters(k), UINT32_MAX, -1, false);

  std::optional<std::size_t> found;
  for (std::size_t head = 0; head < store.size(); ++head) {
    Unpacked u = unpack(store.at(head));
    if (m.is_final(u.q) && (u.slot == 0 || u.slot == end_slot)) {
      found = head;
      break;
    }
    const auto g = guard_of(u.c.value);
    for (std::size_t i : m.rules_from(u.q)) {
      const CmRule& r = m.rules()[i];
      if (r.guard != g || !useful[r.to]) continue;
      std::uint64_t slot_needed = r.input == kEndMarker ? end_slot : static_cast<std::uint64_t>(r.input) + 1;
      if (u.slot != 0 && u.slot != slot_needed) continue;
      Counters d = u.c;
      if (!d.apply(r.update, m.r())) continue;
      if (std::any_of(d.value.begin(), d.value.end(), [&](std::int64_t v) { return v > cap; })) {
        ++pruned;
        continue;
      }
      const bool right = r.move == HeadMove::Right;
      push(r.to, right ? 0 : slot_needed, d, static_cast<std::uint32_t>(head), right ? r.input : -1, !right);
    }
  }
  out.stats["configurations"] = static_cast<std::int64_t>(store.size());
  out.stats["pruned"] = static_cast<std::int64_t>(pruned);
  if (!found) {
    out.holds = true;
    out.bounded = pruned > 0;
    return out;
  }

  Word w;
  std::size_t run = 0, longest_stay = 0;
  for (std::size_t cur = *found; parent[cur] != UINT32_MAX; cur = parent[cur]) {
    if (letter[cur] >= 0) w.push_back(m.alphabet()[letter[cur]]);
    run = stayed[cur] ? run + 1 : 0;
    longest_stay = std::max(longest_stay, run);
  }
  std::reverse(w.begin(), w.end());
  CmAcceptOptions replay;
  replay.stay_bound = longest_stay + m.num_states() + 1;
  replay.config_budget = std::max(options.config_budget, store.size() * 4);
  if (!cm_accepts(m, w, replay)) throw std::logic_error("cm_is_empty: witness failed to replay");
  out.holds = false;
  out.witness = std::move(w);
  return out;
}

Ncm normalize_reversals(const Ncm& m) {
  if (m.r() <= 1) {
    Ncm out = m;
    out.set_r(1);
    return out;
  }
  const std::size_t k = m.k();
  const std::size_t r = m.r();
  const std::size_t per = (r + 2) / 2;  // ceil((r+1)/2)
  const std::size_t k_out = k * per;
  Ncm out(k_out, 1, m.alphabet());

  // State (q, phase of each counter); phase 2j increments t_j, odd phases
  // decrement the highest nonzero t_j.
  std::size_t combos = 1;
  for (std::size_t i = 0; i < k; ++i) combos *= r + 1;
  auto phases_of = [&](std::size_t code) {
    std::vector<std::size_t> ph(k);
    for (std::size_t i = k; i-- > 0;) {
      ph[i] = code % (r + 1);
      code /= r + 1;
    }
    return ph;
  };
  auto code_of = [&](const std::vector<std::size_t>& ph) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < k; ++i) code = code * (r + 1) + ph[i];
    return code;
  };
  std::vector<std::vector<StateId>> ids(m.num_states(), std::vector<StateId>(combos));
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::size_t c = 0; c < combos; ++c) {
      std::string name = m.state_name(q);
      if (k > 0 && combos > 1) {
        name += "@";
        auto ph = phases_of(c);
        for (std::size_t i = 0; i < k; ++i) name += (i ? "." : "") + std::to_string(ph[i]);
      }
      ids[q][c] = out.find_state(name) ? out.add_fresh_state("s") : out.add_state(name);
      out.set_final(ids[q][c], m.is_final(q));
    }
  }
  out.set_start(ids[m.start()][0]);

  const auto sub_guards = all_guards(per);
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::size_t c = 0; c < combos; ++c) {
      const auto ph = phases_of(c);
      for (std::size_t ri : m.rules_from(q)) {
        const CmRule& rule = m.rules()[ri];
        // Each counter's admissible split guards under its current phase.
        std::vector<std::vector<std::vector<std::uint8_t>>> choices(k);
        bool feasible = true;
        std::vector<std::size_t> next_ph = ph;
        for (std::size_t i = 0; i < k; ++i) {
          const int d = rule.update[i];
          if (d > 0 && ph[i] % 2 == 1) ++next_ph[i];
          if (d < 0 && ph[i] % 2 == 0) ++next_ph[i];
          if (next_ph[i] > r) feasible = false;
          for (const auto& sg : sub_guards) {
            bool any = std::any_of(sg.begin(), sg.end(), [](std::uint8_t b) { return b != 0; });
            if (any != (rule.guard[i] != 0)) continue;
            bool beyond = false;
            for (std::size_t j = ph[i] / 2 + 1; j < per; ++j) beyond = beyond || sg[j];
            if (!beyond) choices[i].push_back(sg);
          }
          if (choices[i].empty()) feasible = false;
        }
        if (!feasible) continue;
        const StateId from = ids[q][c];
        const StateId to = ids[rule.to][code_of(next_ph)];
        std::vector<std::size_t> pick(k, 0);
        for (;;) {
          std::vector<std::uint8_t> guard;
          std::vector<int> update(k_out, 0);
          for (std::size_t i = 0; i < k; ++i) {
            const auto& sg = choices[i][pick[i]];
            guard.insert(guard.end(), sg.begin(), sg.end());
            if (rule.update[i] > 0) {
              update[i * per + next_ph[i] / 2] = 1;
            } else if (rule.update[i] < 0) {
              std::size_t j = per;
              while (j-- > 0 && !sg[j]) {
              }
              update[i * per + j] = -1;
            }
          }
          out.add_rule({from, rule.input, guard, to, rule.move, update});
          std::size_t i = 0;
          while (i < k && ++pick[i] == choices[i].size()) pick[i++] = 0;
          if (i == k) break;
        }
      }
    }
  }
  return out;
}

Ncm disjoint_dcm_shuffle(const Ncm& m1_in, const Ncm& m2_in, const Alphabet& extra) {
  for (const auto& s : m1_in.alphabet().symbols())
    if (m2_in.alphabet().contains(s))
      throw InputError("disjoint shuffle: symbol '" + s + "' belongs to both machines");
  for (const Ncm* m : {&m1_in, &m2_in}) {
    DecisionOutcome check = check_complete_halting(*m);
    if (!check.holds) throw ContractError("disjoint shuffle: " + check.method);
  }
  Alphabet alphabet = m1_in.alphabet().merged_with(m2_in.alphabet()).merged_with(extra);
  Ncm m1 = cm_with_alphabet(m1_in, alphabet);
  Ncm m2 = cm_with_alphabet(m2_in, alphabet);
  const std::size_t k1 = m1.k(), k2 = m2.k();
  Ncm out(k1 + k2, std::max(m1.r(), m2.r()), alphabet);
  const auto guards1 = all_guards(k1);
  const auto guards2 = all_guards(k2);
  const std::vector<int> zero1(k1, 0), zero2(k2, 0), zero(k1 + k2, 0);

  // Stage 0 reads input; stage 1 runs M1's end moves (flag: M1 has been
  // final), stage 2 runs M2's end moves.
  using Key = std::tuple<StateId, StateId, int, int>;
  Interner<Key> intern{out, {}, {}};
  auto state = [&](StateId p, StateId q, int stage, int flag) {
    std::string name = "(" + m1.state_name(p) + "," + m2.state_name(q);
    if (stage > 0) name += "," + std::string(stage == 1 ? "A" : "B") + std::to_string(flag);
    StateId id = intern(Key{p, q, stage, flag}, name + ")");
    out.set_final(id, stage == 2 && flag && m2.is_final(q));
    return id;
  };
  std::map<std::tuple<StateId, int, std::size_t>, const CmRule*> t1, t2;
  for (const auto& r : m1.rules()) t1[{r.from, r.input, guard_index(r.guard)}] = &r;
  for (const auto& r : m2.rules()) t2[{r.from, r.input, guard_index(r.guard)}] = &r;

  out.set_start(state(m1.start(), m2.start(), 0, 0));
  while (!intern.queue.empty()) {
    auto [p, q, stage, flag] = intern.queue.front();
    intern.queue.pop_front();
    const StateId from = intern.ids.at(Key{p, q, stage, flag});
    if (stage == 0) {
      for (std::size_t i : m1.rules_from(p)) {
        const CmRule& r = m1.rules()[i];
        if (r.input == kEndMarker) continue;
        StateId to = state(r.to, q, 0, 0);
        for (const auto& g2 : guards2)
          out.add_rule({from, r.input, joined(r.guard, g2), to, r.move, joined(r.update, zero2)});
      }
      for (std::size_t i : m2.rules_from(q)) {
        const CmRule& r = m2.rules()[i];
        if (r.input == kEndMarker) continue;
        StateId to = state(p, r.to, 0, 0);
        for (const auto& g1 : guards1)
          out.add_rule({from, r.input, joined(g1, r.guard), to, r.move, joined(zero1, r.update)});
      }
      StateId to = state(p, q, 1, m1.is_final(p) ? 1 : 0);
      for (const auto& g : all_guards(k1 + k2)) out.add_rule({from, kEndMarker, g, to, HeadMove::Stay, zero});
    } else if (stage == 1) {
      for (const auto& g1 : guards1) {
        auto it = t1.find({p, kEndMarker, guard_index(g1)});
        for (const auto& g2 : guards2) {
          if (it != t1.end()) {
            const CmRule& r = *it->second;
            StateId to = state(r.to, q, 1, flag | (m1.is_final(r.to) ? 1 : 0));
            out.add_rule({from, kEndMarker, joined(g1, g2), to, HeadMove::Stay, joined(r.update, zero2)});
          } else {
            out.add_rule({from, kEndMarker, joined(g1, g2), state(p, q, 2, flag), HeadMove::Stay, zero});
          }
        }
      }
    } else {
      for (const auto& g2 : guards2) {
        auto it = t2.find({q, kEndMarker, guard_index(g2)});
        if (it == t2.end()) continue;
        const CmRule& r = *it->second;
        StateId to = state(p, r.to, 2, flag);
        for (const auto& g1 : guards1)
          out.add_rule({from, kEndMarker, joined(g1, g2), to, HeadMove::Stay, joined(zero1, r.update)});
      }
    }
  }
  return out;
}

}  // namespace shufflekit
