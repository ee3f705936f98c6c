#include "shufflekit/semilinear.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "shufflekit/errors.hpp"
#include "shufflekit/regex.hpp"

namespace shufflekit {

ParikhVector parikh(const Word& w, const Alphabet& alphabet) {
  ParikhVector v(alphabet.size(), 0);
  for (const auto& s : w) ++v[alphabet.index_of(s)];
  return v;
}

ParikhVector add(const ParikhVector& a, const ParikhVector& b) {
  ParikhVector out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

bool is_zero(const ParikhVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

void LinearSet::normalize() {
  periods.erase(std::remove_if(periods.begin(), periods.end(), is_zero), periods.end());
  std::sort(periods.begin(), periods.end());
  periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::pair<std::size_t, ParikhVector>& key) const {
    std::size_t h = key.first * 0x9e3779b97f4a7c15ULL;
    for (auto x : key.second) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

// Is `rem` a non-negative combination of periods[j..]?
bool combination(const std::vector<ParikhVector>& periods, std::size_t j, const ParikhVector& rem,
                 std::unordered_set<std::pair<std::size_t, ParikhVector>, VectorHash>& failed) {
  if (is_zero(rem)) return true;
  if (j == periods.size()) return false;
  if (failed.count({j, rem})) return false;
  const ParikhVector& p = periods[j];
  std::int64_t most = INT64_MAX;
  for (std::size_t c = 0; c < p.size(); ++c)
    if (p[c] > 0) most = std::min(most, rem[c] / p[c]);
  ParikhVector next = rem;
  for (std::size_t c = 0; c < p.size(); ++c) next[c] -= most * p[c];
  for (std::int64_t i = most; i >= 0; --i) {
    if (combination(periods, j + 1, next, failed)) return true;
    for (std::size_t c = 0; c < p.size(); ++c) next[c] += p[c];
  }
  failed.insert({j, rem});
  return false;
}

}  // namespace

bool linear_membership(const LinearSet& l, const ParikhVector& x) {
  if (l.constant.size() != x.size()) throw InputError("vector dimension mismatch");
  ParikhVector rem(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    rem[i] = x[i] - l.constant[i];
    if (rem[i] < 0) return false;
  }
  std::vector<ParikhVector> periods;
  for (const auto& p : l.periods)
    if (!is_zero(p)) periods.push_back(p);
  std::unordered_set<std::pair<std::size_t, ParikhVector>, VectorHash> failed;
  return combination(periods, 0, rem, failed);
}

bool sl_membership(const SemilinearSet& q, const ParikhVector& x) {
  if (x.size() != q.dimension())
    throw InputError("vector of dimension " + std::to_string(x.size()) + " tested against a set of dimension " +
                     std::to_string(q.dimension()));
  return std::any_of(q.components.begin(), q.components.end(),
                     [&](const LinearSet& l) { return linear_membership(l, x); });
}

bool SemilinearSet::has_periods() const {
  return std::any_of(components.begin(), components.end(),
                     [](const LinearSet& l) { return !l.periods.empty(); });
}

void SemilinearSet::simplify() {
  for (auto& l : components) l.normalize();
  std::sort(components.begin(), components.end());
  components.erase(std::unique(components.begin(), components.end()), components.end());
  auto contained = [](const LinearSet& a, const LinearSet& b) {
    if (!linear_membership(b, a.constant)) return false;
    LinearSet cone{ParikhVector(a.constant.size(), 0), b.periods};
    return std::all_of(a.periods.begin(), a.periods.end(),
                       [&](const ParikhVector& p) { return linear_membership(cone, p); });
  };
  std::vector<LinearSet> kept;
  for (std::size_t i = 0; i < components.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < components.size() && !redundant; ++j) {
      if (i == j) continue;
      // Of two mutually contained components keep the earlier one.
      if (contained(components[i], components[j]) && (j < i || !contained(components[j], components[i])))
        redundant = true;
    }
    if (!redundant) kept.push_back(components[i]);
  }
  components = std::move(kept);
}

SemilinearSet sl_empty(const Alphabet& alphabet) { return SemilinearSet{alphabet, {}}; }

SemilinearSet sl_singleton(const Alphabet& alphabet, ParikhVector v) {
  if (v.size() != alphabet.size()) throw InputError("vector dimension mismatch");
  return SemilinearSet{alphabet, {LinearSet{std::move(v), {}}}};
}

namespace {

void require_same_dimension(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dimension() != b.dimension())
    throw InputError("semilinear sets of dimension " + std::to_string(a.dimension()) + " and " +
                     std::to_string(b.dimension()));
}

}  // namespace

SemilinearSet sl_sum(const SemilinearSet& a, const SemilinearSet& b) {
  require_same_dimension(a, b);
  SemilinearSet out{a.alphabet, {}};
  for (const auto& x : a.components) {
    for (const auto& y : b.components) {
      LinearSet l{add(x.constant, y.constant), x.periods};
      l.periods.insert(l.periods.end(), y.periods.begin(), y.periods.end());
      out.components.push_back(std::move(l));
    }
  }
  out.simplify();
  return out;
}

SemilinearSet sl_union(const SemilinearSet& a, const SemilinearSet& b) {
  require_same_dimension(a, b);
  SemilinearSet out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  out.simplify();
  return out;
}

SemilinearSet sl_star(const SemilinearSet& a, std::size_t component_bound) {
  const std::size_t c = a.components.size();
  if (c > component_bound)
    throw ResourceError("star over " + std::to_string(c) + " components exceeds bound " +
                        std::to_string(component_bound));
  SemilinearSet out{a.alphabet, {LinearSet{ParikhVector(a.dimension(), 0), {}}}};
  for (std::size_t mask = 1; mask < (std::size_t{1} << c); ++mask) {
    LinearSet l{ParikhVector(a.dimension(), 0), {}};
    for (std::size_t i = 0; i < c; ++i) {
      if (!((mask >> i) & 1)) continue;
      const LinearSet& part = a.components[i];
      l.constant = add(l.constant, part.constant);
      l.periods.push_back(part.constant);
      l.periods.insert(l.periods.end(), part.periods.begin(), part.periods.end());
    }
    out.components.push_back(std::move(l));
  }
  out.simplify();
  return out;
}

std::vector<ParikhVector> sl_members_up_to(const SemilinearSet& q, std::int64_t bound) {
  std::set<ParikhVector> seen;
  auto fits = [&](const ParikhVector& v) {
    return std::all_of(v.begin(), v.end(), [&](std::int64_t x) { return x <= bound; });
  };
  for (const auto& l : q.components) {
    if (!fits(l.constant)) continue;
    std::vector<ParikhVector> todo{l.constant};
    std::set<ParikhVector> local{l.constant};
    while (!todo.empty()) {
      ParikhVector v = std::move(todo.back());
      todo.pop_back();
      for (const auto& p : l.periods) {
        if (is_zero(p)) continue;
        ParikhVector w = add(v, p);
        if (fits(w) && local.insert(w).second) todo.push_back(w);
      }
    }
    seen.insert(local.begin(), local.end());
  }
  return {seen.begin(), seen.end()};
}

namespace {

SemilinearSet image_of(const RegexPtr& r, const Alphabet& alphabet, const ParikhOptions& options) {
  switch (r->kind) {
    case Regex::Kind::Empty:
      return sl_empty(alphabet);
    case Regex::Kind::Epsilon:
      return sl_singleton(alphabet, ParikhVector(alphabet.size(), 0));
    case Regex::Kind::Symbol: {
      ParikhVector v(alphabet.size(), 0);
      v[r->symbol] = 1;
      return sl_singleton(alphabet, std::move(v));
    }
    case Regex::Kind::Union:
      return sl_union(image_of(r->left, alphabet, options), image_of(r->right, alphabet, options));
    case Regex::Kind::Concat:
      return sl_sum(image_of(r->left, alphabet, options), image_of(r->right, alphabet, options));
    case Regex::Kind::Star:
      return sl_star(image_of(r->left, alphabet, options), options.star_component_bound);
  }
  return sl_empty(alphabet);
}

}  // namespace

SemilinearSet nfa_parikh_image(const Nfa& m, const ParikhOptions& options) {
  Nfa t = trim(m);
  if (t.finals().empty()) return sl_empty(m.alphabet());
  return image_of(nfa_to_regex(t, options.state_bound), m.alphabet(), options);
}

bool comm_membership(const Nfa& m, const Word& w, const ParikhOptions& options) {
  return sl_membership(nfa_parikh_image(m, options), parikh(w, m.alphabet()));
}

Ncm sum_acceptor_ncm(const SemilinearSet& q1, const SemilinearSet& q2) {
  if (!(q1.alphabet == q2.alphabet)) throw InputError("sum acceptor: sets over different alphabets");
  const Alphabet& sigma = q1.alphabet;
  const std::size_t m = sigma.size();
  const std::size_t k = 2 * m;
  Ncm out(k, 1, sigma);
  const auto guards = all_guards(k);
  const std::vector<int> zero(k, 0);

  std::vector<StateId> read(m);
  for (std::size_t j = 0; j < m; ++j) read[j] = out.add_state("read" + std::to_string(j));
  const StateId check1 = out.add_state("check1");
  const StateId check2 = out.add_state("check2");
  const StateId accept = out.add_state("accept");
  out.set_final(accept);
  out.set_start(m > 0 ? read[0] : check1);

  // Letters arrive in alphabet order; each one is added to bank 1 or bank 2.
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& g : guards) {
      for (std::size_t t = j; t < m; ++t) {
        for (std::size_t bank = 0; bank < 2; ++bank) {
          std::vector<int> u = zero;
          u[bank * m + t] = 1;
          out.add_rule({read[j], static_cast<int>(t), g, read[t], HeadMove::Right, u});
        }
      }
      out.add_rule({read[j], kEndMarker, g, check1, HeadMove::Stay, zero});
    }
  }

  // Decrement gadgets: subtract a constant, then any number of periods,
  // then require the bank to be empty.
  int serial = 0;
  auto step = [&](StateId from, StateId to, std::size_t counter) {
    for (const auto& g : guards) {
      if (!g[counter]) continue;
      std::vector<int> u = zero;
      u[counter] = -1;
      out.add_rule({from, kEndMarker, g, to, HeadMove::Stay, u});
    }
  };
  auto chain = [&](StateId from, StateId to, const ParikhVector& v, std::size_t offset) {
    std::vector<std::size_t> units;
    for (std::size_t i = 0; i < m; ++i)
      for (std::int64_t c = 0; c < v[i]; ++c) units.push_back(offset + i);
    if (units.empty()) {
      for (const auto& g : guards) out.add_rule({from, kEndMarker, g, to, HeadMove::Stay, zero});
      return;
    }
    StateId cur = from;
    for (std::size_t u = 0; u < units.size(); ++u) {
      StateId next = u + 1 == units.size() ? to : out.add_state("g" + std::to_string(serial++));
      step(cur, next, units[u]);
      cur = next;
    }
  };
  auto checker = [&](const SemilinearSet& q, std::size_t offset, StateId entry, StateId exit) {
    for (const auto& l : q.components) {
      StateId loop = out.add_state("loop" + std::to_string(serial++));
      chain(entry, loop, l.constant, offset);
      for (const auto& p : l.periods)
        if (!is_zero(p)) chain(loop, loop, p, offset);
      for (const auto& g : guards) {
        bool empty = true;
        for (std::size_t i = 0; i < m; ++i) empty = empty && !g[offset + i];
        if (empty) out.add_rule({loop, kEndMarker, g, exit, HeadMove::Stay, zero});
      }
    }
  };
  checker(q1, 0, check1, check2);
  checker(q2, m, check2, accept);
  return out;
}

}  // namespace shufflekit
