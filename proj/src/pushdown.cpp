#include "shufflekit/pushdown.hpp"

#include <array>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "shufflekit/errors.hpp"

namespace shufflekit {

StateId Npda::add_state(std::string name) {
  if (name_index_.count(name)) throw InputError("duplicate state name '" + name + "'");
  StateId id = names_.size();
  name_index_.emplace(name, id);
  names_.push_back(std::move(name));
  finals_.push_back(false);
  by_state_.emplace_back();
  return id;
}

StateId Npda::add_fresh_state(const std::string& hint) {
  std::string name = hint;
  if (name.empty() || name_index_.count(name)) {
    name = hint + std::to_string(names_.size());
    while (name_index_.count(name)) name += "'";
  }
  return add_state(std::move(name));
}

void Npda::add_rule(PdaRule rule) {
  if (rule.from >= num_states() || rule.to >= num_states())
    throw InputError("pushdown rule endpoint out of range");
  if (rule.input != kEpsilon &&
      (rule.input < 0 || static_cast<std::size_t>(rule.input) >= input_.size()))
    throw InputError("pushdown rule input out of range");
  auto bad_stack = [&](int x) { return x < 0 || static_cast<std::size_t>(x) >= stack_.size(); };
  if (bad_stack(rule.top)) throw InputError("pushdown rule stack top out of range");
  for (int x : rule.push)
    if (bad_stack(x)) throw InputError("pushdown rule push symbol out of range");
  for (std::size_t i : by_state_[rule.from]) {
    const PdaRule& r = rules_[i];
    if (r.input == rule.input && r.top == rule.top && r.to == rule.to && r.push == rule.push) return;
  }
  by_state_[rule.from].push_back(rules_.size());
  rules_.push_back(std::move(rule));
}

std::optional<StateId> Npda::find_state(const std::string& name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string describe_rule(const Npda& m, const PdaRule& r) {
  std::string s = m.state_name(r.from) + " --";
  s += r.input == kEpsilon ? kEpsilonToken : m.input_alphabet()[r.input];
  s += "," + m.stack_alphabet()[r.top] + "--> " + m.state_name(r.to) + " [";
  for (std::size_t i = 0; i < r.push.size(); ++i) {
    if (i) s += ",";
    s += m.stack_alphabet()[r.push[i]];
  }
  return s + "]";
}

std::string fresh_symbol(const std::string& base, const std::set<std::string>& taken) {
  std::string s = base;
  while (taken.count(s)) s += "'";
  return s;
}

}  // namespace

void require_dpda(const Npda& m) {
  const std::size_t g = m.stack_alphabet().size();
  const std::size_t sigma = m.input_alphabet().size();
  // (state, top) -> rule indices
  std::map<std::pair<StateId, int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < m.rules().size(); ++i) {
    const PdaRule& r = m.rules()[i];
    if (r.input == kEpsilon && r.push.size() > 1)
      throw ContractError("silent rule pushes more than one symbol: " + describe_rule(m, r));
    groups[{r.from, r.top}].push_back(i);
  }
  for (const auto& [key, idx] : groups) {
    std::vector<int> per_symbol(sigma, 0);
    int silent = 0;
    for (std::size_t i : idx) {
      const PdaRule& r = m.rules()[i];
      if (r.input == kEpsilon) {
        ++silent;
      } else if (++per_symbol[r.input] > 1) {
        throw ContractError("two rules on the same symbol and top: " + describe_rule(m, r));
      }
      if (silent > 1 || (silent == 1 && idx.size() > 1))
        throw ContractError("silent rule competes with another rule: " + describe_rule(m, r));
    }
  }
  // Height-preserving silent moves must not cycle.
  const std::size_t nodes = m.num_states() * g;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> succ(nodes);
  for (std::size_t i = 0; i < m.rules().size(); ++i) {
    const PdaRule& r = m.rules()[i];
    if (r.input == kEpsilon && r.push.size() == 1)
      succ[r.from * g + r.top].emplace_back(r.to * g + r.push[0], i);
  }
  std::vector<char> color(nodes, 0);
  for (std::size_t root = 0; root < nodes; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == succ[v].size()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      auto [w, rule] = succ[v][next++];
      if (color[w] == 1)
        throw ContractError("silent rules can loop without shrinking the stack: " +
                            describe_rule(m, m.rules()[rule]));
      if (color[w] == 0) {
        color[w] = 1;
        stack.emplace_back(w, 0);
      }
    }
  }
}

bool is_dpda(const Npda& m) {
  try {
    require_dpda(m);
    return true;
  } catch (const ContractError&) {
    return false;
  }
}

Npda npda_with_alphabet(const Npda& m, const Alphabet& alphabet) {
  if (!m.input_alphabet().subset_of(alphabet))
    throw InputError("target alphabet does not contain the machine's alphabet");
  Npda out(alphabet, m.stack_alphabet());
  for (StateId s = 0; s < m.num_states(); ++s) {
    out.add_state(m.state_name(s));
    out.set_final(s, m.is_final(s));
  }
  out.set_start(m.start());
  out.set_initial_stack(m.initial_stack());
  for (PdaRule r : m.rules()) {
    if (r.input != kEpsilon)
      r.input = static_cast<int>(alphabet.index_of(m.input_alphabet()[r.input]));
    out.add_rule(std::move(r));
  }
  return out;
}

namespace {

// Rules over plain ids, with pushes of length at most two.
struct FlatMachine {
  std::size_t num_states = 0;
  std::size_t num_stack = 0;
  std::size_t start = 0;
  int bottom = 0;
  std::size_t drain = 0;
  std::vector<PdaRule> rules;
  std::vector<std::string> state_names;
  std::vector<std::string> stack_names;
};

FlatMachine flatten(const Npda& m) {
  FlatMachine f;
  f.state_names.reserve(m.num_states() + 2);
  for (StateId s = 0; s < m.num_states(); ++s) f.state_names.push_back(m.state_name(s));
  f.stack_names = m.stack_alphabet().symbols();
  f.bottom = static_cast<int>(f.stack_names.size());
  f.stack_names.push_back("<bottom>");
  f.start = f.state_names.size();
  f.state_names.push_back("<start>");
  f.drain = f.state_names.size();
  f.state_names.push_back("<drain>");

  auto fresh = [&]() {
    f.state_names.push_back("<mid" + std::to_string(f.state_names.size()) + ">");
    return f.state_names.size() - 1;
  };
  for (const PdaRule& r : m.rules()) {
    if (r.push.size() <= 2) {
      f.rules.push_back(r);
      continue;
    }
    const std::size_t k = r.push.size();
    StateId cur = fresh();
    f.rules.push_back({r.from, r.input, r.top, cur, {r.push[k - 2], r.push[k - 1]}});
    for (std::size_t i = k - 2; i-- > 0;) {
      StateId next = i == 0 ? r.to : fresh();
      f.rules.push_back({cur, kEpsilon, r.push[i + 1], next, {r.push[i], r.push[i + 1]}});
      cur = next;
    }
  }
  f.rules.push_back({f.start, kEpsilon, f.bottom, m.start(), {m.initial_stack(), f.bottom}});
  for (int x = 0; x <= f.bottom; ++x) {
    for (StateId s = 0; s < m.num_states(); ++s)
      if (m.is_final(s)) f.rules.push_back({s, kEpsilon, x, f.drain, {}});
    f.rules.push_back({f.drain, kEpsilon, x, f.drain, {}});
  }
  f.num_states = f.state_names.size();
  f.num_stack = f.stack_names.size();
  return f;
}

struct TripleIndex {
  std::size_t states, stack;
  std::uint64_t key(std::size_t p, std::size_t x, std::size_t q) const {
    return (static_cast<std::uint64_t>(p) * stack + x) * states + q;
  }
  std::uint64_t head(std::size_t p, std::size_t x) const { return static_cast<std::uint64_t>(p) * stack + x; }
};

}  // namespace

Grammar npda_to_grammar(const Npda& m) {
  FlatMachine f = flatten(m);
  TripleIndex ix{f.num_states, f.num_stack};

  // Saturate the set of triples [p X q]: from p with X on top, some run
  // reaches q with X popped and the rest of the stack untouched.
  std::unordered_set<std::uint64_t> productive;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> ends;  // head(p,X) -> q
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_first;   // head(to,Y1)
  std::unordered_map<int, std::vector<std::size_t>> by_second;            // Y2
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_head;    // head(from,X)
  std::deque<std::array<std::size_t, 3>> work;
  auto derive = [&](std::size_t p, std::size_t x, std::size_t q) {
    if (productive.insert(ix.key(p, x, q)).second) {
      ends[ix.head(p, x)].push_back(q);
      work.push_back({p, x, q});
    }
  };
  for (std::size_t i = 0; i < f.rules.size(); ++i) {
    const PdaRule& r = f.rules[i];
    by_head[ix.head(r.from, r.top)].push_back(i);
    if (r.push.empty()) {
      derive(r.from, r.top, r.to);
    } else {
      by_first[ix.head(r.to, r.push[0])].push_back(i);
      if (r.push.size() == 2) by_second[r.push[1]].push_back(i);
    }
  }
  while (!work.empty()) {
    auto [q, y, s] = work.front();
    work.pop_front();
    // As the first (or only) pushed symbol.
    if (auto it = by_first.find(ix.head(q, y)); it != by_first.end()) {
      for (std::size_t i : it->second) {
        const PdaRule& r = f.rules[i];
        if (r.push.size() == 1) {
          derive(r.from, r.top, s);
        } else if (auto e = ends.find(ix.head(s, r.push[1])); e != ends.end()) {
          std::vector<std::size_t> targets = e->second;
          for (std::size_t t : targets) derive(r.from, r.top, t);
        }
      }
    }
    // As the second pushed symbol: [q y s] completes rules whose first
    // part ends in q.
    if (auto it = by_second.find(static_cast<int>(y)); it != by_second.end()) {
      for (std::size_t i : it->second) {
        const PdaRule& r = f.rules[i];
        if (productive.count(ix.key(r.to, r.push[0], q))) derive(r.from, r.top, s);
      }
    }
  }

  Grammar g;
  g.terminals = m.input_alphabet();
  std::unordered_map<std::uint64_t, int> ids;
  std::deque<std::array<std::size_t, 3>> queue;
  auto intern = [&](std::size_t p, std::size_t x, std::size_t q) {
    auto [it, fresh] = ids.emplace(ix.key(p, x, q), 0);
    if (fresh) {
      it->second = g.add_nonterminal("[" + f.state_names[p] + "," + f.stack_names[x] + "," +
                                     f.state_names[q] + "]");
      queue.push_back({p, x, q});
    }
    return it->second;
  };
  g.start = intern(f.start, f.bottom, f.drain);
  if (!productive.count(ix.key(f.start, f.bottom, f.drain))) return g;
  while (!queue.empty()) {
    auto [p, x, q] = queue.front();
    queue.pop_front();
    const int lhs = ids.at(ix.key(p, x, q));
    auto it = by_head.find(ix.head(p, x));
    if (it == by_head.end()) continue;
    for (std::size_t i : it->second) {
      const PdaRule& r = f.rules[i];
      std::vector<int> prefix;
      if (r.input != kEpsilon) prefix.push_back(terminal_item(r.input));
      if (r.push.empty()) {
        if (r.to == q) g.productions.push_back({lhs, prefix});
      } else if (r.push.size() == 1) {
        if (productive.count(ix.key(r.to, r.push[0], q))) {
          prefix.push_back(intern(r.to, r.push[0], q));
          g.productions.push_back({lhs, prefix});
        }
      } else if (auto e = ends.find(ix.head(r.to, r.push[0])); e != ends.end()) {
        for (std::size_t s : e->second) {
          if (!productive.count(ix.key(s, r.push[1], q))) continue;
          std::vector<int> rhs = prefix;
          rhs.push_back(intern(r.to, r.push[0], s));
          rhs.push_back(intern(s, r.push[1], q));
          g.productions.push_back({lhs, std::move(rhs)});
        }
      }
    }
  }
  return g;
}

NpdaRecognizer::NpdaRecognizer(const Npda& m) : alphabet_(m.input_alphabet()), cyk_([&] {
  Grammar g = npda_to_grammar(m);
  grammar_productions_ = g.productions.size();
  return CykRecognizer(g);
}()) {}

bool NpdaRecognizer::accepts(const Word& w) const { return cyk_.accepts(alphabet_.encode(w)); }

bool npda_accepts(const Npda& m, const Word& w) { return NpdaRecognizer(m).accepts(w); }

DecisionOutcome npda_is_empty(const Npda& m) {
  Grammar g = npda_to_grammar(m);
  auto word = shortest_derivable_word(g);
  DecisionOutcome out;
  out.method = "npda-emptiness: holds=empty";
  out.stats["nonterminals"] = g.num_nonterminals();
  out.stats["productions"] = static_cast<std::int64_t>(g.productions.size());
  out.stats["states"] = static_cast<std::int64_t>(m.num_states());
  if (!word) {
    out.holds = true;
    return out;
  }
  Word w;
  for (int t : *word) w.push_back(m.input_alphabet()[t]);
  out.holds = false;
  out.witness = std::move(w);
  return out;
}

Npda dpda_complement(const Npda& m) {
  require_dpda(m);
  const Alphabet& sigma = m.input_alphabet();
  const int g = static_cast<int>(m.stack_alphabet().size());

  // Stack symbols: originals, bottom-marked copies, and a marker for the
  // situation where the original machine has emptied its stack.
  std::set<std::string> taken(m.stack_alphabet().symbols().begin(), m.stack_alphabet().symbols().end());
  std::vector<Symbol> stack_names = m.stack_alphabet().symbols();
  for (int x = 0; x < g; ++x) {
    Symbol hat = fresh_symbol(m.stack_alphabet()[x] + "^", taken);
    taken.insert(hat);
    stack_names.push_back(hat);
  }
  const int empty_marker = static_cast<int>(stack_names.size());
  stack_names.push_back(fresh_symbol("<empty>", taken));
  const int num_tops = static_cast<int>(stack_names.size());
  auto hat = [&](int x) { return x + g; };

  // The completed machine: original states plus a dead sink.
  const StateId n = m.num_states();
  const StateId dead = n;
  std::vector<PdaRule> full;
  for (const PdaRule& r : m.rules()) {
    full.push_back(r);
    PdaRule b = r;
    b.top = hat(r.top);
    if (b.push.empty()) {
      b.push = {empty_marker};
    } else {
      b.push.back() = hat(b.push.back());
    }
    full.push_back(std::move(b));
  }
  std::vector<std::vector<char>> silent(n + 1, std::vector<char>(num_tops, 0));
  std::vector<std::vector<std::vector<char>>> has(n + 1, std::vector<std::vector<char>>(num_tops, std::vector<char>(sigma.size(), 0)));
  for (const PdaRule& r : full) {
    if (r.input == kEpsilon) {
      silent[r.from][r.top] = 1;
    } else {
      has[r.from][r.top][r.input] = 1;
    }
  }
  for (StateId p = 0; p <= n; ++p) {
    for (int x = 0; x < num_tops; ++x) {
      if (silent[p][x]) continue;
      for (std::size_t a = 0; a < sigma.size(); ++a) {
        if (!has[p][x][a]) full.push_back({p, static_cast<int>(a), x, dead, {x}});
      }
    }
  }
  auto is_final = [&](StateId q) { return q < n && m.is_final(q); };
  auto name_of = [&](StateId q) { return q < n ? m.state_name(q) : std::string("<dead>"); };

  // Flag states: (q,0) no final state seen since the last symbol, (q,1) some
  // final seen, (q,R) quiescent with flag 0 and ready to read.
  Npda out(sigma, Alphabet(stack_names));
  std::vector<std::array<StateId, 3>> ids(n + 1);
  for (StateId q = 0; q <= n; ++q) {
    std::string base = name_of(q);
    if (q == dead) {
      while (m.find_state(base)) base += "'";
    }
    ids[q][0] = out.add_state("(" + base + ",0)");
    ids[q][1] = out.add_state("(" + base + ",1)");
    ids[q][2] = out.add_state("(" + base + ",R)");
    out.set_final(ids[q][2]);
  }
  for (const PdaRule& r : full) {
    const int f_to = is_final(r.to) ? 1 : 0;
    if (r.input == kEpsilon) {
      for (int f = 0; f < 2; ++f) out.add_rule({ids[r.from][f], kEpsilon, r.top, ids[r.to][f | f_to], r.push});
    } else {
      out.add_rule({ids[r.from][1], r.input, r.top, ids[r.to][f_to], r.push});
      out.add_rule({ids[r.from][2], r.input, r.top, ids[r.to][f_to], r.push});
    }
  }
  for (StateId p = 0; p <= n; ++p) {
    for (int x = 0; x < num_tops; ++x) {
      if (!silent[p][x]) out.add_rule({ids[p][0], kEpsilon, x, ids[p][2], {x}});
    }
  }
  out.set_start(ids[m.start()][is_final(m.start()) ? 1 : 0]);
  out.set_initial_stack(hat(m.initial_stack()));
  return out;
}

Npda product_nfa_npda(const Nfa& a_in, const Npda& m_in) {
  if (a_in.has_epsilon()) throw ContractError("product_nfa_npda: automaton has epsilon moves");
  Alphabet alphabet = m_in.input_alphabet().merged_with(a_in.alphabet());
  Nfa a = with_alphabet(a_in, alphabet);
  Npda m = npda_with_alphabet(m_in, alphabet);
  Npda out(alphabet, m.stack_alphabet());
  out.set_initial_stack(m.initial_stack());
  if (a.num_states() == 0 || m.num_states() == 0) {
    out.set_start(out.add_state("(empty)"));
    return out;
  }
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId p, StateId q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), 0);
    if (fresh) {
      std::string name = "(" + a.state_name(p) + "," + m.state_name(q) + ")";
      it->second = out.find_state(name) ? out.add_fresh_state("s") : out.add_state(name);
      out.set_final(it->second, a.is_final(p) && m.is_final(q));
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  out.set_start(intern(a.start(), m.start()));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId from = ids.at({p, q});
    for (std::size_t i : m.rules_from(q)) {
      const PdaRule& r = m.rules()[i];
      if (r.input == kEpsilon) {
        out.add_rule({from, kEpsilon, r.top, intern(p, r.to), r.push});
        continue;
      }
      for (const Edge& e : a.edges(p)) {
        if (e.label == r.input) out.add_rule({from, r.input, r.top, intern(e.target, r.to), r.push});
      }
    }
  }
  return out;
}

}  // namespace shufflekit
