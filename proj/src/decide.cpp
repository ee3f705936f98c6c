#include "shufflekit/decide.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "shufflekit/bool_matrix.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/shuffle.hpp"

namespace shufflekit {

namespace {

bool accepts_any_alphabet(const Nfa& m, const Word& w) {
  for (const auto& s : w)
    if (!m.alphabet().contains(s)) return false;
  return accepts(m, w);
}

[[noreturn]] void witness_failed(const std::string& where) {
  throw std::logic_error(where + ": witness failed re-verification");
}

Alphabet letters_of(const Word& u, const Word& v) { return Alphabet::of_word(concat(u, v)); }

}  // namespace

DecisionOutcome word_shuffle_subset_lang(const Word& u, const Word& v, const Nfa& m) {
  const std::string method = "word-subset: holds=u⧢v⊆L(M)";
  Alphabet alphabet = m.alphabet().merged_with(letters_of(u, v));
  Nfa naive = naive_shuffle_nfa(u, v, alphabet);
  Nfa outside = complement(determinize(with_alphabet(m, alphabet)));
  Nfa product = intersect(naive, outside);
  DecisionOutcome e = is_empty(product);
  DecisionOutcome out;
  out.method = method;
  out.stats["naive_states"] = static_cast<std::int64_t>(naive.num_states());
  out.stats["complement_states"] = static_cast<std::int64_t>(outside.num_states());
  out.stats["product_states"] = static_cast<std::int64_t>(product.num_states());
  out.holds = e.holds;
  if (!e.holds) {
    if (!word_in_shuffle(*e.witness, u, v) || accepts_any_alphabet(m, *e.witness)) witness_failed(method);
    out.witness = e.witness;
  }
  return out;
}

DecisionOutcome lang_subset_word_shuffle(const Nfa& m_in, const Word& u, const Word& v) {
  const std::string method = "subset-word: holds=L(M)⊆u⧢v";
  Nfa a = remove_epsilon(m_in);
  const std::size_t n = u.size() + v.size();
  const std::size_t q = a.num_states();
  const std::size_t limit = n + q;
  DecisionOutcome out;
  out.method = method;
  out.stats["length_limit"] = static_cast<std::int64_t>(limit);
  if (q == 0) {
    out.holds = true;
    return out;
  }
  auto verified = [&](Word w) {
    if (word_in_shuffle(w, u, v) || !accepts(m_in, w)) witness_failed(method);
    out.holds = false;
    out.witness = std::move(w);
    return out;
  };

  // Accepted words of a length other than |uv| are immediate witnesses; a
  // shortest one has length at most |uv| + |Q|.
  constexpr std::size_t kNone = SIZE_MAX;
  std::vector<std::vector<std::pair<std::size_t, int>>> parent(limit + 1,
                                                               std::vector<std::pair<std::size_t, int>>(q, {kNone, 0}));
  std::vector<char> layer(q, 0);
  layer[a.start()] = 1;
  parent[0][a.start()] = {a.start(), -1};
  for (std::size_t len = 0; len <= limit; ++len) {
    if (len != n) {
      for (StateId s = 0; s < q; ++s) {
        if (!layer[s] || !a.is_final(s)) continue;
        Word w(len);
        StateId cur = s;
        for (std::size_t l = len; l > 0; --l) {
          auto [prev, label] = parent[l][cur];
          w[l - 1] = a.alphabet()[label];
          cur = prev;
        }
        return verified(std::move(w));
      }
    }
    if (len == limit) break;
    std::vector<char> next(q, 0);
    for (StateId s = 0; s < q; ++s) {
      if (!layer[s]) continue;
      for (const Edge& e : a.edges(s)) {
        if (!next[e.target]) {
          next[e.target] = 1;
          parent[len + 1][e.target] = {s, e.label};
        }
      }
    }
    layer.swap(next);
  }

  // Words of length |uv|: walk the subset automaton of M alongside the set
  // of reachable grid points on the current antidiagonal.
  std::vector<std::vector<char>> can_finish(n + 1, std::vector<char>(q, 0));
  for (StateId s = 0; s < q; ++s) can_finish[0][s] = a.is_final(s);
  for (std::size_t r = 1; r <= n; ++r)
    for (StateId s = 0; s < q; ++s)
      for (const Edge& e : a.edges(s))
        if (can_finish[r - 1][e.target]) can_finish[r][s] = 1;
  auto alive = [&](const StateSet& set, std::size_t remaining) {
    return std::any_of(set.begin(), set.end(), [&](StateId s) { return can_finish[remaining][s]; });
  };

  std::set<std::tuple<std::size_t, StateSet, std::vector<char>>> visited;
  std::size_t nodes = 0;
  Word prefix;
  std::optional<Word> found;
  std::vector<char> grid0(v.size() + 1, 0);
  grid0[0] = 1;

  // Depth-first with an explicit stack of (t, S, G, next letter).
  struct Frame {
    std::size_t t;
    StateSet set;
    std::vector<char> grid;
    std::size_t letter;
  };
  std::vector<Frame> stack;
  if (alive({a.start()}, n)) stack.push_back({0, {a.start()}, grid0, 0});
  while (!stack.empty() && !found) {
    Frame& f = stack.back();
    if (f.letter == 0) {
      ++nodes;
      const bool grid_empty = std::none_of(f.grid.begin(), f.grid.end(), [](char c) { return c != 0; });
      if (grid_empty) {
        // No interleaving of u and v starts with this prefix; finish any
        // accepting run of the right length.
        Word w = prefix;
        StateId cur = *std::find_if(f.set.begin(), f.set.end(), [&](StateId s) { return can_finish[n - f.t][s]; });
        for (std::size_t r = n - f.t; r > 0; --r) {
          for (const Edge& e : a.edges(cur)) {
            if (can_finish[r - 1][e.target]) {
              w.push_back(a.alphabet()[e.label]);
              cur = e.target;
              break;
            }
          }
        }
        found = std::move(w);
        break;
      }
      if (f.t == n) {
        // The set is alive, so it contains a final state.
        if (!f.grid[v.size()]) {
          found = prefix;
          break;
        }
        stack.pop_back();
        if (!prefix.empty()) prefix.pop_back();
        continue;
      }
    }
    if (f.letter == a.alphabet().size()) {
      stack.pop_back();
      if (!prefix.empty()) prefix.pop_back();
      continue;
    }
    const int x = static_cast<int>(f.letter++);
    StateSet next = step(a, f.set, x);
    if (next.empty() || !alive(next, n - f.t - 1)) continue;
    const Symbol& sym = a.alphabet()[x];
    std::vector<char> grid(v.size() + 1, 0);
    for (std::size_t j = 0; j <= v.size() && j <= f.t; ++j) {
      if (!f.grid[j]) continue;
      std::size_t i = f.t - j;
      if (i < u.size() && u[i] == sym) grid[j] = 1;
      if (j < v.size() && v[j] == sym) grid[j + 1] = 1;
    }
    if (!visited.emplace(f.t + 1, next, grid).second) continue;
    prefix.push_back(sym);
    stack.push_back({f.t + 1, std::move(next), std::move(grid), 0});
  }
  out.stats["search_nodes"] = static_cast<std::int64_t>(nodes);
  if (found) return verified(std::move(*found));
  out.holds = true;
  return out;
}

DecisionOutcome lang_equals_word_shuffle(const Nfa& m, const Word& u, const Word& v) {
  DecisionOutcome sub = word_shuffle_subset_lang(u, v, m);
  DecisionOutcome sup = lang_subset_word_shuffle(m, u, v);
  DecisionOutcome out;
  out.method = "equals-word: holds=L(M)=u⧢v";
  for (const auto& [k, val] : sub.stats) out.stats["subset." + k] = val;
  for (const auto& [k, val] : sup.stats) out.stats["superset." + k] = val;
  out.holds = sub.holds && sup.holds;
  if (!sub.holds) {
    out.witness = sub.witness;
  } else if (!sup.holds) {
    out.witness = sup.witness;
  }
  return out;
}

DecisionOutcome shuffle_inclusion_regular_dpda(const Nfa& m1, const Nfa& m2, const Npda& m3) {
  const std::string method = "regular-dpda: holds=L(M1)⧢L(M2)⊆L(M3)";
  require_dpda(m3);
  Alphabet alphabet = m3.input_alphabet().merged_with(m1.alphabet()).merged_with(m2.alphabet());
  Npda padded = npda_with_alphabet(m3, alphabet);
  Npda outside = dpda_complement(padded);
  Nfa sh = remove_epsilon(shuffle_nfas(with_alphabet(m1, alphabet), with_alphabet(m2, alphabet)));
  Npda product = product_nfa_npda(sh, outside);
  DecisionOutcome e = npda_is_empty(product);
  DecisionOutcome out;
  out.method = method;
  out.stats["shuffle_states"] = static_cast<std::int64_t>(sh.num_states());
  out.stats["complement_states"] = static_cast<std::int64_t>(outside.num_states());
  out.stats["product_states"] = static_cast<std::int64_t>(product.num_states());
  for (const auto& [k, val] : e.stats) out.stats["emptiness." + k] = val;
  out.holds = e.holds;
  if (!e.holds) {
    if (!accepts(sh, *e.witness) || npda_accepts(padded, *e.witness)) witness_failed(method);
    out.witness = e.witness;
  }
  return out;
}

DecisionOutcome shuffle_inclusion_ncm_dcm(const Ncm& m1, const Ncm& m2, const Ncm& m3,
                                          const CmEmptinessOptions& options) {
  const std::string method = "ncm-dcm: holds=L(M1)⧢L(M2)⊆L(M3)";
  Alphabet alphabet = m3.alphabet().merged_with(m1.alphabet()).merged_with(m2.alphabet());
  Ncm padded = cm_with_alphabet(m3, alphabet);
  Ncm outside = dcm_complement(padded);
  Ncm sh = cm_shuffle(cm_with_alphabet(m1, alphabet), cm_with_alphabet(m2, alphabet));
  Ncm product = cm_product(sh, outside);
  DecisionOutcome e = cm_is_empty(product, options);
  DecisionOutcome out;
  out.method = method;
  out.stats["shuffle_states"] = static_cast<std::int64_t>(sh.num_states());
  out.stats["complement_states"] = static_cast<std::int64_t>(outside.num_states());
  out.stats["product_states"] = static_cast<std::int64_t>(product.num_states());
  for (const auto& [k, val] : e.stats) out.stats["emptiness." + k] = val;
  out.holds = e.holds;
  out.bounded = e.bounded;
  if (!e.holds) {
    if (!cm_accepts(sh, *e.witness) || cm_accepts(padded, *e.witness)) witness_failed(method);
    out.witness = e.witness;
  }
  return out;
}

std::string to_binary(std::uint64_t d) {
  if (d == 0) return "0";
  std::string s;
  for (; d; d >>= 1) s.insert(s.begin(), static_cast<char>('0' + (d & 1)));
  return s;
}

std::vector<std::uint64_t> parse_binary_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  if (text.empty()) return out;
  for (;;) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty()) throw InputError("empty entry in binary list '" + text + "'");
    if (item.size() > 64) throw InputError("binary numeral longer than 64 bits: " + item);
    std::uint64_t d = 0;
    for (char c : item) {
      if (c != '0' && c != '1') throw InputError("not a binary numeral: " + item);
      d = (d << 1) | static_cast<std::uint64_t>(c - '0');
    }
    out.push_back(d);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

DecisionOutcome unary_finite_shuffle_inclusion(const std::vector<std::uint64_t>& d1,
                                               const std::vector<std::uint64_t>& d2, const Nfa& m_in) {
  const std::string method = "unary-finite: holds=a^D1⧢a^D2⊆L(M); witness=failing length in binary";
  if (m_in.alphabet().size() != 1) throw InputError("unary procedure needs a one-letter alphabet");
  Nfa m = remove_epsilon(m_in);
  const std::size_t n = m.num_states();
  BoolMatrix a(n);
  for (StateId s = 0; s < n; ++s)
    for (const Edge& e : m.edges(s)) a.set(s, e.target);

  DecisionOutcome out;
  out.method = method;
  std::set<std::uint64_t> lengths;
  for (auto x : d1) {
    for (auto y : d2) {
      if (x > UINT64_MAX - y) throw InputError("summed length overflows 64 bits");
      lengths.insert(x + y);
    }
  }
  std::size_t total = 0, worst = 0;
  for (std::uint64_t d : lengths) {
    bool ok = false;
    if (n > 0 && d == 0) {
      ok = m.is_final(m.start());
    } else if (n > 0) {
      std::size_t products = 0;
      BoolMatrix p = matrix_power(a, d, &products);
      total += products;
      worst = std::max(worst, products);
      for (StateId f = 0; f < n && !ok; ++f) ok = m.is_final(f) && p.get(m.start(), f);
    }
    if (!ok) {
      out.holds = false;
      out.witness = word_from_chars(to_binary(d));
      out.stats["failing_length"] = static_cast<std::int64_t>(std::min<std::uint64_t>(d, INT64_MAX));
      break;
    }
  }
  out.holds = !out.witness.has_value();
  out.stats["lengths"] = static_cast<std::int64_t>(lengths.size());
  out.stats["products"] = static_cast<std::int64_t>(total);
  out.stats["max_products"] = static_cast<std::int64_t>(worst);
  return out;
}

DecisionOutcome finite_shuffle_npda_noninclusion(const std::vector<Word>& l1, const std::vector<Word>& l2,
                                                 const Npda& m, std::size_t budget) {
  const std::string method = "finite-npda: holds=L1⧢L2⊄L(M)";
  std::size_t total = 0;
  for (const auto& u : l1)
    for (const auto& v : l2) total += u.size() + v.size();
  if (total > budget)
    throw ResourceError("finite-npda: summed pair length " + std::to_string(total) + " exceeds budget " +
                        std::to_string(budget));
  Alphabet alphabet = m.input_alphabet();
  for (const auto& u : l1) alphabet = alphabet.merged_with(Alphabet::of_word(u));
  for (const auto& v : l2) alphabet = alphabet.merged_with(Alphabet::of_word(v));
  NpdaRecognizer recognizer(npda_with_alphabet(m, alphabet));
  DecisionOutcome out;
  out.method = method;
  std::set<Word> tested;
  for (const auto& u : l1) {
    for (const auto& v : l2) {
      for (const auto& w : enumerate_shuffle(u, v, std::max(kDefaultEnumerationBound, u.size() + v.size()))) {
        if (!tested.insert(w).second) continue;
        if (!recognizer.accepts(w)) {
          out.holds = true;
          out.witness = w;
          out.stats["words_tested"] = static_cast<std::int64_t>(tested.size());
          return out;
        }
      }
    }
  }
  out.holds = false;
  out.stats["words_tested"] = static_cast<std::int64_t>(tested.size());
  return out;
}

namespace {

SemilinearSet realign(const SemilinearSet& q, const Alphabet& target) {
  if (!q.alphabet.subset_of(target)) throw InputError("semilinear set uses letters outside the alphabet");
  SemilinearSet out{target, {}};
  auto map = [&](const ParikhVector& v) {
    ParikhVector w(target.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) w[target.index_of(q.alphabet[i])] = v[i];
    return w;
  };
  for (const auto& l : q.components) {
    LinearSet c{map(l.constant), {}};
    for (const auto& p : l.periods) c.periods.push_back(map(p));
    out.components.push_back(std::move(c));
  }
  return out;
}

// An accepted word with Parikh vector x, by search over (state, counts so far).
std::optional<Word> word_with_vector(const Nfa& m_in, const ParikhVector& x) {
  Nfa a = remove_epsilon(m_in);
  if (a.num_states() == 0) return std::nullopt;
  using Node = std::pair<StateId, ParikhVector>;
  std::map<Node, std::pair<Node, int>> parent;
  std::deque<Node> queue;
  Node start{a.start(), ParikhVector(x.size(), 0)};
  parent.emplace(start, std::make_pair(start, -1));
  queue.push_back(start);
  while (!queue.empty()) {
    Node cur = queue.front();
    queue.pop_front();
    if (a.is_final(cur.first) && cur.second == x) {
      Word w;
      for (Node n = cur; parent.at(n).second >= 0; n = parent.at(n).first) w.push_back(a.alphabet()[parent.at(n).second]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (const Edge& e : a.edges(cur.first)) {
      ParikhVector v = cur.second;
      if (++v[e.label] > x[e.label]) continue;
      Node next{e.target, std::move(v)};
      if (parent.emplace(next, std::make_pair(cur, e.label)).second) queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

}  // namespace

DecisionOutcome comm_semilinear_shuffle_superset(const Nfa& m_in, const SemilinearSet& q1, const SemilinearSet& q2,
                                                 const CommOptions& options) {
  const std::string method = "comm-semilinear: holds=L(M)⊆ψ⁻¹(Q1)⧢ψ⁻¹(Q2)";
  Alphabet alphabet = m_in.alphabet().merged_with(q1.alphabet).merged_with(q2.alphabet);
  Nfa m = with_alphabet(m_in, alphabet);
  SemilinearSet sum = sl_sum(realign(q1, alphabet), realign(q2, alphabet));
  SemilinearSet image = nfa_parikh_image(m, options.parikh);
  DecisionOutcome out;
  out.method = method;
  out.stats["bound"] = options.bound;
  out.stats["image_components"] = static_cast<std::int64_t>(image.components.size());
  out.stats["sum_components"] = static_cast<std::int64_t>(sum.components.size());
  auto members = sl_members_up_to(image, options.bound);
  out.stats["vectors_checked"] = static_cast<std::int64_t>(members.size());
  for (const auto& x : members) {
    if (sl_membership(sum, x)) continue;
    auto w = word_with_vector(m, x);
    if (!w || !accepts(m_in, *w) || sl_membership(sum, parikh(*w, alphabet))) witness_failed(method);
    out.holds = false;
    out.witness = std::move(w);
    return out;
  }
  out.holds = true;
  out.bounded = image.has_periods();
  return out;
}

DecisionOutcome disjoint_alphabet_dcm_shuffle_superset(const Nfa& m, const Ncm& m1, const Ncm& m2,
                                                       const CmEmptinessOptions& options) {
  const std::string method = "disjoint-dcm: holds=L(M)⊆L(M1)⧢L(M2)";
  Ncm sh = disjoint_dcm_shuffle(m1, m2, m.alphabet());
  Ncm outside = dcm_complement(sh);
  Ncm product = cm_product(ncm_from_nfa(m), outside);
  DecisionOutcome e = cm_is_empty(product, options);
  DecisionOutcome out;
  out.method = method;
  out.stats["shuffle_states"] = static_cast<std::int64_t>(sh.num_states());
  out.stats["product_states"] = static_cast<std::int64_t>(product.num_states());
  for (const auto& [k, val] : e.stats) out.stats["emptiness." + k] = val;
  out.holds = e.holds;
  out.bounded = e.bounded;
  if (!e.holds) {
    if (!accepts(m, *e.witness) || cm_accepts(sh, *e.witness)) witness_failed(method);
    out.witness = e.witness;
  }
  return out;
}

}  // namespace shufflekit
