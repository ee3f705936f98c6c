#include "shufflekit/shuffle.hpp"

#include <deque>
#include <map>

#include "shufflekit/errors.hpp"

namespace shufflekit {

Nfa naive_shuffle_nfa(const Word& u, const Word& v, const Alphabet& alphabet) {
  std::vector<int> eu = alphabet.encode(u);
  std::vector<int> ev = alphabet.encode(v);
  Nfa m(alphabet);
  for (std::size_t i = 0; i <= u.size(); ++i)
    for (std::size_t j = 0; j <= v.size(); ++j)
      m.add_state("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  for (std::size_t i = 0; i <= u.size(); ++i) {
    for (std::size_t j = 0; j <= v.size(); ++j) {
      StateId here = grid_state_id({i, j}, v.size());
      if (i < u.size()) m.add_transition(here, eu[i], grid_state_id({i + 1, j}, v.size()));
      if (j < v.size()) m.add_transition(here, ev[j], grid_state_id({i, j + 1}, v.size()));
    }
  }
  m.set_start(0);
  m.set_final(grid_state_id({u.size(), v.size()}, v.size()));
  return m;
}

Nfa naive_shuffle_nfa(const Word& u, const Word& v) {
  return naive_shuffle_nfa(u, v, Alphabet::of_word(concat(u, v)));
}

bool is_dfa_when_disjoint(const Word& u, const Word& v) {
  std::set<Symbol> left(u.begin(), u.end());
  for (const auto& s : v)
    if (left.count(s)) return false;
  return true;
}

bool word_in_shuffle(const Word& w, const Word& u, const Word& v) {
  if (w.size() != u.size() + v.size()) return false;
  // reach[j]: grid point (i, j) on the current antidiagonal i + j = t.
  std::vector<char> reach(v.size() + 1, 0);
  reach[0] = 1;
  for (std::size_t t = 0; t < w.size(); ++t) {
    std::vector<char> next(v.size() + 1, 0);
    bool any = false;
    for (std::size_t j = 0; j <= v.size() && j <= t; ++j) {
      if (!reach[j]) continue;
      std::size_t i = t - j;
      if (i < u.size() && u[i] == w[t]) next[j] = 1, any = true;
      if (j < v.size() && v[j] == w[t]) next[j + 1] = 1, any = true;
    }
    if (!any) return false;
    reach.swap(next);
  }
  return reach[v.size()] != 0;
}

Nfa shuffle_nfas(const Nfa& a_in, const Nfa& b_in) {
  Alphabet alphabet = a_in.alphabet().merged_with(b_in.alphabet());
  Nfa a = with_alphabet(a_in, alphabet);
  Nfa b = with_alphabet(b_in, alphabet);
  Nfa out(alphabet);
  if (a.num_states() == 0 || b.num_states() == 0) return empty_language_nfa(alphabet);
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId p, StateId q) {
    auto it = ids.find({p, q});
    if (it != ids.end()) return it->second;
    StateId id;
    try {
      id = out.add_state("(" + a.state_name(p) + "," + b.state_name(q) + ")");
    } catch (const InputError&) {
      id = out.add_fresh_state("s");
    }
    out.set_final(id, a.is_final(p) && b.is_final(q));
    ids.emplace(std::make_pair(p, q), id);
    queue.emplace_back(p, q);
    return id;
  };
  intern(a.start(), b.start());
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId from = ids.at({p, q});
    for (const auto& e : a.edges(p)) out.add_transition(from, e.label, intern(e.target, q));
    for (const auto& e : b.edges(q)) out.add_transition(from, e.label, intern(p, e.target));
  }
  return out;
}

namespace {

struct Interleaver {
  const Word& u;
  const Word& v;
  std::map<std::pair<std::size_t, std::size_t>, std::set<Word>> memo;

  const std::set<Word>& suffixes(std::size_t i, std::size_t j) {
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    std::set<Word> out;
    if (i == u.size() && j == v.size()) {
      out.insert(Word{});
    } else {
      if (i < u.size()) {
        for (const auto& rest : suffixes(i + 1, j)) {
          Word w{u[i]};
          w.insert(w.end(), rest.begin(), rest.end());
          out.insert(std::move(w));
        }
      }
      if (j < v.size()) {
        for (const auto& rest : suffixes(i, j + 1)) {
          Word w{v[j]};
          w.insert(w.end(), rest.begin(), rest.end());
          out.insert(std::move(w));
        }
      }
    }
    return memo.emplace(std::make_pair(i, j), std::move(out)).first->second;
  }
};

}  // namespace

std::set<Word> enumerate_shuffle(const Word& u, const Word& v, std::size_t bound) {
  if (u.size() + v.size() > bound)
    throw ResourceError("enumerate_shuffle: |u|+|v| = " + std::to_string(u.size() + v.size()) +
                        " exceeds bound " + std::to_string(bound));
  Interleaver it{u, v, {}};
  return it.suffixes(0, 0);
}

}  // namespace shufflekit
