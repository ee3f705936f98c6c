#include "shufflekit/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "shufflekit/errors.hpp"

namespace shufflekit {

namespace {

std::string subset_name(const Nfa& m, const StateSet& set) {
  std::string name = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) name += ",";
    name += m.state_name(set[i]);
  }
  return name + "}";
}

void normalize(StateSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

}  // namespace

StateId Nfa::add_state(std::string name) {
  if (name_index_.count(name)) throw InputError("duplicate state name '" + name + "'");
  StateId id = names_.size();
  name_index_.emplace(name, id);
  names_.push_back(std::move(name));
  finals_.push_back(false);
  edges_.emplace_back();
  return id;
}

StateId Nfa::add_fresh_state(std::string_view hint) {
  std::string base(hint);
  std::string name = base;
  if (name_index_.count(name) || name.empty()) {
    name = base + std::to_string(names_.size());
    while (name_index_.count(name)) name += "'";
  }
  return add_state(std::move(name));
}

void Nfa::set_start(StateId s) {
  if (s >= num_states()) throw InputError("start state out of range");
  start_ = s;
}

void Nfa::set_final(StateId s, bool final) {
  if (s >= num_states()) throw InputError("final state out of range");
  finals_[s] = final;
}

void Nfa::add_transition(StateId from, int label, StateId to) {
  if (from >= num_states() || to >= num_states())
    throw InputError("transition endpoint out of range");
  if (label != kEpsilon && (label < 0 || static_cast<std::size_t>(label) >= alphabet_.size()))
    throw InputError("transition label out of range");
  Edge e{label, to};
  auto& out = edges_[from];
  if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
}

std::optional<StateId> Nfa::find_state(const std::string& name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

StateSet Nfa::finals() const {
  StateSet out;
  for (StateId s = 0; s < num_states(); ++s)
    if (finals_[s]) out.push_back(s);
  return out;
}

StateSet Nfa::targets(StateId s, int label) const {
  StateSet out;
  for (const auto& e : edges_[s])
    if (e.label == label) out.push_back(e.target);
  normalize(out);
  return out;
}

std::size_t Nfa::num_transitions() const {
  std::size_t n = 0;
  for (const auto& out : edges_) n += out.size();
  return n;
}

bool Nfa::has_epsilon() const {
  for (const auto& out : edges_)
    for (const auto& e : out)
      if (e.label == kEpsilon) return true;
  return false;
}

bool Nfa::is_deterministic() const {
  std::vector<int> seen(alphabet_.size());
  for (const auto& out : edges_) {
    std::fill(seen.begin(), seen.end(), 0);
    for (const auto& e : out) {
      if (e.label == kEpsilon) return false;
      if (seen[e.label]++) return false;
    }
  }
  return true;
}

bool Nfa::is_complete_deterministic() const {
  if (num_states() == 0 || !is_deterministic()) return false;
  for (const auto& out : edges_)
    if (out.size() != alphabet_.size()) return false;
  return true;
}

Nfa empty_language_nfa(const Alphabet& alphabet) {
  Nfa m(alphabet);
  m.add_state("empty");
  return m;
}

Nfa universal_nfa(const Alphabet& alphabet) {
  Nfa m(alphabet);
  StateId s = m.add_state("all");
  m.set_final(s);
  for (std::size_t a = 0; a < alphabet.size(); ++a) m.add_transition(s, static_cast<int>(a), s);
  return m;
}

Nfa single_word_nfa(const Word& w, const Alphabet& alphabet) {
  return finite_language_nfa({w}, alphabet);
}

Nfa finite_language_nfa(const std::vector<Word>& words, const Alphabet& alphabet) {
  Nfa m(alphabet);
  m.add_state("t0");
  std::map<std::pair<StateId, int>, StateId> child;
  for (const auto& w : words) {
    StateId cur = 0;
    for (int a : alphabet.encode(w)) {
      auto [it, inserted] = child.try_emplace({cur, a}, 0);
      if (inserted) {
        it->second = m.add_state("t" + std::to_string(m.num_states()));
        m.add_transition(cur, a, it->second);
      }
      cur = it->second;
    }
    m.set_final(cur);
  }
  return m;
}

StateSet epsilon_closure(const Nfa& m, StateSet states) {
  std::vector<bool> in(m.num_states(), false);
  std::vector<StateId> stack;
  for (StateId s : states) {
    if (!in[s]) {
      in[s] = true;
      stack.push_back(s);
    }
  }
  StateSet out;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (const auto& e : m.edges(s)) {
      if (e.label == kEpsilon && !in[e.target]) {
        in[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  normalize(out);
  return out;
}

StateSet step(const Nfa& m, const StateSet& states, int label) {
  StateSet next;
  for (StateId s : states)
    for (const auto& e : m.edges(s))
      if (e.label == label) next.push_back(e.target);
  normalize(next);
  return epsilon_closure(m, std::move(next));
}

bool accepts_encoded(const Nfa& m, const std::vector<int>& w) {
  if (m.num_states() == 0) return false;
  StateSet cur = epsilon_closure(m, {m.start()});
  for (int a : w) {
    cur = step(m, cur, a);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](StateId s) { return m.is_final(s); });
}

bool accepts(const Nfa& m, const Word& w) { return accepts_encoded(m, m.alphabet().encode(w)); }

Nfa with_alphabet(const Nfa& m, const Alphabet& alphabet) {
  if (!m.alphabet().subset_of(alphabet))
    throw InputError("target alphabet does not contain the automaton's alphabet");
  if (m.alphabet() == alphabet) return m;
  std::vector<int> remap(m.alphabet().size());
  for (std::size_t a = 0; a < m.alphabet().size(); ++a)
    remap[a] = static_cast<int>(alphabet.index_of(m.alphabet()[a]));
  Nfa out(alphabet);
  for (StateId s = 0; s < m.num_states(); ++s) {
    out.add_state(m.state_name(s));
    out.set_final(s, m.is_final(s));
  }
  out.set_start(m.start());
  for (StateId s = 0; s < m.num_states(); ++s)
    for (const auto& e : m.edges(s))
      out.add_transition(s, e.label == kEpsilon ? kEpsilon : remap[e.label], e.target);
  return out;
}

Nfa remove_epsilon(const Nfa& m) {
  if (!m.has_epsilon()) return m;
  Nfa out(m.alphabet());
  for (StateId s = 0; s < m.num_states(); ++s) out.add_state(m.state_name(s));
  out.set_start(m.start());
  for (StateId s = 0; s < m.num_states(); ++s) {
    StateSet closure = epsilon_closure(m, {s});
    for (StateId c : closure) {
      if (m.is_final(c)) out.set_final(s);
      for (const auto& e : m.edges(c)) {
        if (e.label == kEpsilon) continue;
        out.add_transition(s, e.label, e.target);
      }
    }
  }
  return out;
}

Nfa determinize(const Nfa& m) {
  Nfa out(m.alphabet());
  std::map<StateSet, StateId> ids;
  std::deque<StateSet> queue;
  auto intern = [&](StateSet set) {
    auto it = ids.find(set);
    if (it != ids.end()) return it->second;
    StateId id;
    try {
      id = out.add_state(subset_name(m, set));
    } catch (const InputError&) {
      id = out.add_fresh_state("d");
    }
    bool final = std::any_of(set.begin(), set.end(), [&](StateId s) { return m.is_final(s); });
    out.set_final(id, final);
    ids.emplace(set, id);
    queue.push_back(std::move(set));
    return id;
  };
  if (m.num_states() == 0) {
    intern({});
  } else {
    intern(epsilon_closure(m, {m.start()}));
  }
  out.set_start(0);
  while (!queue.empty()) {
    StateSet cur = std::move(queue.front());
    queue.pop_front();
    StateId from = ids.at(cur);
    for (std::size_t a = 0; a < m.alphabet().size(); ++a) {
      StateId to = intern(step(m, cur, static_cast<int>(a)));
      out.add_transition(from, static_cast<int>(a), to);
    }
  }
  return out;
}

Nfa complement(const Nfa& m) {
  if (!m.is_complete_deterministic())
    throw ContractError("complement requires a complete deterministic automaton");
  Nfa out = m;
  for (StateId s = 0; s < out.num_states(); ++s) out.set_final(s, !m.is_final(s));
  return out;
}

Nfa intersect(const Nfa& a, const Nfa& b_in) {
  if (!a.alphabet().same_set(b_in.alphabet()))
    throw InputError("intersect: alphabets differ");
  Nfa b = with_alphabet(b_in, a.alphabet());
  Nfa out(a.alphabet());
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId p, StateId q) {
    auto it = ids.find({p, q});
    if (it != ids.end()) return it->second;
    StateId id;
    try {
      id = out.add_state("(" + a.state_name(p) + "," + b.state_name(q) + ")");
    } catch (const InputError&) {
      id = out.add_fresh_state("p");
    }
    out.set_final(id, a.is_final(p) && b.is_final(q));
    ids.emplace(std::make_pair(p, q), id);
    queue.emplace_back(p, q);
    return id;
  };
  if (a.num_states() == 0 || b.num_states() == 0) return empty_language_nfa(a.alphabet());
  intern(a.start(), b.start());
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId from = ids.at({p, q});
    for (const auto& ea : a.edges(p)) {
      if (ea.label == kEpsilon) {
        out.add_transition(from, kEpsilon, intern(ea.target, q));
        continue;
      }
      for (const auto& eb : b.edges(q))
        if (eb.label == ea.label) out.add_transition(from, ea.label, intern(ea.target, eb.target));
    }
    for (const auto& eb : b.edges(q))
      if (eb.label == kEpsilon) out.add_transition(from, kEpsilon, intern(p, eb.target));
  }
  return out;
}

Nfa nfa_union(const Nfa& a, const Nfa& b_in) {
  if (!a.alphabet().same_set(b_in.alphabet())) throw InputError("union: alphabets differ");
  Nfa b = with_alphabet(b_in, a.alphabet());
  Nfa out(a.alphabet());
  StateId start = out.add_state("start");
  auto copy = [&](const Nfa& m, const std::string& tag) {
    StateId base = out.num_states();
    for (StateId s = 0; s < m.num_states(); ++s) {
      out.add_state(tag + "." + m.state_name(s));
      out.set_final(base + s, m.is_final(s));
    }
    for (StateId s = 0; s < m.num_states(); ++s)
      for (const auto& e : m.edges(s)) out.add_transition(base + s, e.label, base + e.target);
    if (m.num_states() > 0) out.add_transition(start, kEpsilon, base + m.start());
  };
  copy(a, "L");
  copy(b, "R");
  out.set_start(start);
  return out;
}

namespace {

std::vector<bool> forward_reachable(const Nfa& m) {
  std::vector<bool> seen(m.num_states(), false);
  if (m.num_states() == 0) return seen;
  std::vector<StateId> stack{m.start()};
  seen[m.start()] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const auto& e : m.edges(s)) {
      if (!seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  return seen;
}

std::vector<bool> backward_reachable(const Nfa& m) {
  std::vector<std::vector<StateId>> rev(m.num_states());
  for (StateId s = 0; s < m.num_states(); ++s)
    for (const auto& e : m.edges(s)) rev[e.target].push_back(s);
  std::vector<bool> seen(m.num_states(), false);
  std::vector<StateId> stack;
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (m.is_final(s)) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : rev[s]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

}  // namespace

Nfa trim(const Nfa& m) {
  auto fwd = forward_reachable(m);
  auto bwd = backward_reachable(m);
  if (m.num_states() == 0 || !bwd[m.start()]) return empty_language_nfa(m.alphabet());
  Nfa out(m.alphabet());
  std::vector<StateId> remap(m.num_states(), static_cast<StateId>(-1));
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (fwd[s] && bwd[s]) {
      remap[s] = out.add_state(m.state_name(s));
      out.set_final(remap[s], m.is_final(s));
    }
  }
  out.set_start(remap[m.start()]);
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (remap[s] == static_cast<StateId>(-1)) continue;
    for (const auto& e : m.edges(s))
      if (remap[e.target] != static_cast<StateId>(-1))
        out.add_transition(remap[s], e.label, remap[e.target]);
  }
  return out;
}

bool is_acyclic(const Nfa& m) {
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> colour(m.num_states(), kWhite);
  // Iterative DFS; frame = (state, next edge index).
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId root = 0; root < m.num_states(); ++root) {
    if (colour[root] != kWhite) continue;
    stack.emplace_back(root, 0);
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      if (i == m.edges(s).size()) {
        colour[s] = kBlack;
        stack.pop_back();
        continue;
      }
      StateId t = m.edges(s)[i++].target;
      if (colour[t] == kGrey) return false;
      if (colour[t] == kWhite) {
        colour[t] = kGrey;
        stack.emplace_back(t, 0);
      }
    }
  }
  return true;
}

DecisionOutcome is_empty(const Nfa& m) {
  const std::string method = "nfa-emptiness: holds=language empty, witness=shortest accepted word";
  DecisionOutcome out = DecisionOutcome::yes(method);
  if (m.num_states() == 0) return out;
  // 0-1 BFS: epsilon edges cost nothing, symbols cost one.
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(m.num_states(), kUnseen);
  std::vector<StateId> prev(m.num_states(), kUnseen);
  std::vector<int> via(m.num_states(), kEpsilon);
  std::deque<StateId> dq;
  dist[m.start()] = 0;
  dq.push_back(m.start());
  std::vector<bool> done(m.num_states(), false);
  std::size_t explored = 0;
  while (!dq.empty()) {
    StateId s = dq.front();
    dq.pop_front();
    if (done[s]) continue;
    done[s] = true;
    ++explored;
    if (m.is_final(s)) {
      Word w;
      for (StateId cur = s; prev[cur] != kUnseen; cur = prev[cur])
        if (via[cur] != kEpsilon) w.push_back(m.alphabet()[via[cur]]);
      std::reverse(w.begin(), w.end());
      out.holds = false;
      out.witness = std::move(w);
      out.stats["states_explored"] = static_cast<std::int64_t>(explored);
      return out;
    }
    for (const auto& e : m.edges(s)) {
      std::size_t cost = e.label == kEpsilon ? 0 : 1;
      if (dist[e.target] == kUnseen || dist[s] + cost < dist[e.target]) {
        dist[e.target] = dist[s] + cost;
        prev[e.target] = s;
        via[e.target] = e.label;
        if (cost == 0)
          dq.push_front(e.target);
        else
          dq.push_back(e.target);
      }
    }
  }
  out.stats["states_explored"] = static_cast<std::int64_t>(explored);
  return out;
}

DecisionOutcome equivalent(const Nfa& a, const Nfa& b) {
  if (!a.alphabet().same_set(b.alphabet())) throw InputError("equivalent: alphabets differ");
  const std::string method = "nfa-equivalence: holds=languages equal, witness in symmetric difference";
  Nfa da = determinize(a);
  Nfa db = determinize(with_alphabet(b, a.alphabet()));
  DecisionOutcome out = DecisionOutcome::yes(method);
  out.stats["dfa_states_left"] = static_cast<std::int64_t>(da.num_states());
  out.stats["dfa_states_right"] = static_cast<std::int64_t>(db.num_states());
  for (int side = 0; side < 2; ++side) {
    const Nfa& x = side == 0 ? da : db;
    const Nfa& y = side == 0 ? db : da;
    DecisionOutcome e = is_empty(intersect(x, complement(y)));
    if (!e.holds) {
      out.holds = false;
      out.witness = e.witness;
      return out;
    }
  }
  return out;
}

DecisionOutcome is_universal(const Nfa& m) {
  DecisionOutcome e = is_empty(complement(determinize(m)));
  DecisionOutcome out = DecisionOutcome::yes("nfa-universality: holds=all words accepted, witness=rejected word");
  out.stats = e.stats;
  if (!e.holds) {
    out.holds = false;
    out.witness = e.witness;
  }
  return out;
}

}  // namespace shufflekit
