#include "shufflekit/reduce.hpp"

#include <algorithm>
#include <sstream>

#include "shufflekit/decide.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/shuffle.hpp"

namespace shufflekit {

Cnf3 parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Cnf3 f;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<Literal> pending;
  auto finish_clause = [&] {
    if (pending.empty()) throw InputError("DIMACS: empty clause");
    if (pending.size() > 3) throw InputError("DIMACS: clause with more than three literals");
    while (pending.size() < 3) pending.push_back(pending.back());
    f.clauses.push_back({pending[0], pending[1], pending[2]});
    pending.clear();
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      long long vars = -1, clauses = -1;
      if (header || !(ls >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 1 || clauses < 0)
        throw InputError("DIMACS: bad problem line '" + line + "'");
      header = true;
      f.p = static_cast<int>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header) throw InputError("DIMACS: clause before problem line");
    for (std::istringstream all(line); all >> tok;) {
      long long x;
      try {
        std::size_t used = 0;
        x = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InputError("DIMACS: bad literal '" + tok + "'");
      }
      if (x == 0) {
        finish_clause();
        continue;
      }
      long long var = x < 0 ? -x : x;
      if (var > f.p) throw InputError("DIMACS: variable " + std::to_string(var) + " out of range");
      pending.push_back({static_cast<int>(var), x > 0});
    }
  }
  if (!header) throw InputError("DIMACS: missing problem line");
  if (!pending.empty()) finish_clause();
  if (f.clauses.size() != declared_clauses)
    throw InputError("DIMACS: expected " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  return f;
}

std::string format_dimacs(const Cnf3& f) {
  std::ostringstream out;
  out << "p cnf " << f.p << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (const auto& l : c) out << (l.positive ? l.var : -l.var) << ' ';
    out << "0\n";
  }
  return out.str();
}

Cnf3 random_cnf3(int p, int q, std::mt19937_64& rng) {
  if (p < 1 || q < 0) throw InputError("random_cnf3 needs p >= 1 and q >= 0");
  std::uniform_int_distribution<int> var(1, p);
  std::bernoulli_distribution sign(0.5);
  Cnf3 f{p, {}};
  for (int j = 0; j < q; ++j) {
    Clause3 c;
    for (auto& l : c) l = {var(rng), sign(rng)};
    f.clauses.push_back(c);
  }
  return f;
}

bool sat_brute_force(const Cnf3& f) {
  if (f.p > 24) throw ResourceError("sat_brute_force: p = " + std::to_string(f.p) + " exceeds 24");
  for (std::uint32_t a = 0; a < (std::uint32_t{1} << f.p); ++a) {
    bool all = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause3& c) {
      return std::any_of(c.begin(), c.end(),
                         [&](const Literal& l) { return (((a >> (l.var - 1)) & 1) != 0) == l.positive; });
    });
    if (all) return true;
  }
  return false;
}

int code_width(int p) {
  if (p < 1) throw InputError("code_width needs p >= 1");
  int ceil_log = 0;
  while ((1LL << ceil_log) < p) ++ceil_log;
  return ceil_log + 1;
}

Word encode_b(int i, int p) {
  if (i < 1 || i > p) throw InputError("encode_b: i out of range 1..p");
  const int y = code_width(p);
  Word w{"1"};
  for (int bit = y - 1; bit >= 0; --bit) w.push_back(((i >> bit) & 1) ? "1" : "0");
  w.push_back("1");
  return w;
}

namespace {

const Alphabet& binary_alphabet() {
  static const Alphabet a({"0", "1"});
  return a;
}

// Appends a chain spelling `w` from `from`; returns the last state.
StateId spell(Nfa& m, StateId from, const Word& w) {
  StateId cur = from;
  for (const auto& s : w) {
    StateId next = m.add_fresh_state("c");
    m.add_transition(cur, s, next);
    cur = next;
  }
  return cur;
}

// Block e b(i) with e ranging over `prefixes`; returns the join state.
StateId block(Nfa& m, StateId from, const std::vector<Word>& prefixes, int i, int p) {
  StateId join = m.add_fresh_state("j");
  for (const auto& e : prefixes) {
    Word w = e;
    w.pop_back();
    StateId before_last = spell(m, from, w);
    m.add_transition(before_last, e.back(), join);
  }
  return spell(m, join, encode_b(i, p));
}

}  // namespace

Nfa t_language_dfa(int p) {
  Nfa m(binary_alphabet());
  StateId cur = m.add_state("t0");
  m.set_start(cur);
  for (int i = 1; i <= p; ++i) cur = block(m, cur, {{"1", "0"}, {"0", "1"}}, i, p);
  m.set_final(cur);
  return determinize(m);
}

Nfa clause_blocks_nfa(const Cnf3& f) {
  Nfa m(binary_alphabet());
  StateId start = m.add_state("start");
  m.set_start(start);
  for (const auto& c : f.clauses) {
    std::vector<int> sign(f.p + 1, 0);
    bool tautology = false;
    for (const auto& l : c) {
      int s = l.positive ? 1 : -1;
      if (sign[l.var] == -s) tautology = true;
      sign[l.var] = s;
    }
    if (tautology) continue;
    StateId cur = m.add_fresh_state("f");
    m.add_transition(start, kEpsilon, cur);
    for (int i = 1; i <= f.p; ++i) {
      std::vector<Word> prefixes;
      if (sign[i] == 1) prefixes = {{"0", "1"}};
      else if (sign[i] == -1) prefixes = {{"1", "0"}};
      else prefixes = {{"1", "0"}, {"0", "1"}};
      cur = block(m, cur, prefixes, i, f.p);
    }
    m.set_final(cur);
  }
  return m;
}

SatInstance sat_to_shuffle_noninclusion(const Cnf3& f) {
  if (f.p < 1 || f.clauses.empty()) throw InputError("reduction needs p >= 1 and at least one clause");
  SatInstance inst;
  inst.p = f.p;
  inst.q = static_cast<int>(f.clauses.size());
  inst.y = code_width(f.p);
  for (int i = 1; i <= f.p; ++i) {
    inst.u.push_back("1");
    Word b = encode_b(i, f.p);
    inst.u.insert(inst.u.end(), b.begin(), b.end());
    inst.v.push_back("0");
  }
  inst.m = nfa_union(clause_blocks_nfa(f), complement(t_language_dfa(f.p)));
  return inst;
}

InequalityInstance dfa_noninclusion_to_inequality(const Nfa& m_in, const Word& u, const Word& v) {
  static const Alphabet ab({"a", "b"});
  if (!m_in.alphabet().subset_of(ab)) throw InputError("dfa-ineq: automaton alphabet must be within {a,b}");
  for (const auto& s : concat(u, v))
    if (!ab.contains(s)) throw InputError("dfa-ineq: words must be over {a,b}");
  Nfa m = with_alphabet(m_in, ab);
  if (!m.is_complete_deterministic()) m = determinize(m);
  InequalityInstance out;
  Word uv = concat(u, v);
  out.p = static_cast<std::size_t>(std::count(uv.begin(), uv.end(), "a"));
  out.q = uv.size() - out.p;
  Nfa target = naive_shuffle_nfa(Word(out.p, "a"), Word(out.q, "b"), ab);
  Nfa not_target = complement(determinize(target));
  Nfa naive = naive_shuffle_nfa(u, v, ab);
  out.m = nfa_union(nfa_union(intersect(target, complement(m)), naive), intersect(m, not_target));
  return out;
}

std::vector<Word> interleavings(const Word& u, const Word& v, std::size_t limit) {
  const std::size_t n = u.size() + v.size();
  std::vector<Word> out;
  std::vector<char> mask(n, 0);
  std::fill(mask.end() - static_cast<std::ptrdiff_t>(v.size()), mask.end(), 1);
  do {
    if (out.size() == limit) throw ResourceError("interleavings: more than " + std::to_string(limit) + " words");
    Word w;
    w.reserve(n);
    std::size_t i = 0, j = 0;
    for (char from_v : mask) w.push_back(from_v ? v[j++] : u[i++]);
    out.push_back(std::move(w));
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

DecisionOutcome verify_sat_reduction(const Cnf3& f) {
  SatInstance inst = sat_to_shuffle_noninclusion(f);
  const bool sat = sat_brute_force(f);
  Nfa dfa = determinize(inst.m);
  bool noninclusion = false;
  std::size_t words = 0;
  for (const auto& w : interleavings(inst.u, inst.v)) {
    ++words;
    if (!accepts(dfa, w)) {
      noninclusion = true;
      break;
    }
  }
  DecisionOutcome out;
  out.method = "verify-sat: holds=(F satisfiable)==(u⧢v⊄L(M''))";
  out.holds = sat == noninclusion;
  out.stats["satisfiable"] = sat;
  out.stats["noninclusion"] = noninclusion;
  out.stats["words_checked"] = static_cast<std::int64_t>(words);
  out.stats["u_length"] = static_cast<std::int64_t>(inst.u.size());
  return out;
}

DecisionOutcome verify_inequality_reduction(const Nfa& m, const Word& u, const Word& v) {
  InequalityInstance inst = dfa_noninclusion_to_inequality(m, u, v);
  static const Alphabet ab({"a", "b"});
  DecisionOutcome left = lang_subset_word_shuffle(m, u, v);
  DecisionOutcome right =
      equivalent(inst.m, naive_shuffle_nfa(Word(inst.p, "a"), Word(inst.q, "b"), ab));
  DecisionOutcome out;
  out.method = "verify-ineq: holds=(L(M)⊆u⧢v)==(L(M')=a^p⧢b^q)";
  out.holds = left.holds == right.holds;
  out.stats["included"] = left.holds;
  out.stats["equal"] = right.holds;
  out.stats["p"] = static_cast<std::int64_t>(inst.p);
  out.stats["q"] = static_cast<std::int64_t>(inst.q);
  return out;
}

}  // namespace shufflekit
