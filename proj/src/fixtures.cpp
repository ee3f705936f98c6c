#include "shufflekit/fixtures.hpp"

#include <filesystem>

#include "shufflekit/io.hpp"
#include "shufflekit/reduce.hpp"
#include "shufflekit/shuffle.hpp"

namespace shufflekit {

namespace {

void cm_rule(Ncm& m, StateId from, const std::string& on, int guard, StateId to, HeadMove move, int update) {
  int input = on == kEndMarkerToken ? kEndMarker : static_cast<int>(m.alphabet().index_of(on));
  m.add_rule({from, input, {static_cast<std::uint8_t>(guard)}, to, move, {update}});
}

constexpr auto R = HeadMove::Right;
constexpr auto S = HeadMove::Stay;

struct PdaBuilder {
  Npda& m;
  int sym(const std::string& x) const { return static_cast<int>(m.stack_alphabet().index_of(x)); }
  void rule(StateId from, const std::string& on, const std::string& top, StateId to,
            const std::vector<std::string>& push) {
    PdaRule r{from, on == kEpsilonToken ? kEpsilon : static_cast<int>(m.input_alphabet().index_of(on)),
              sym(top), to, {}};
    for (const auto& x : push) r.push.push_back(sym(x));
    m.add_rule(std::move(r));
  }
};

}  // namespace

Ncm anbn_dcm() {
  Ncm m(1, 1, Alphabet({"a", "b"}));
  StateId q0 = m.add_state("q0"), qa = m.add_state("qa"), qb = m.add_state("qb"), acc = m.add_state("acc");
  m.set_start(q0);
  m.set_final(acc);
  cm_rule(m, q0, "a", 0, qa, R, +1);
  cm_rule(m, qa, "a", 1, qa, R, +1);
  cm_rule(m, qa, "b", 1, qb, R, -1);
  cm_rule(m, qb, "b", 1, qb, R, -1);
  cm_rule(m, qb, kEndMarkerToken, 0, acc, S, 0);
  return m;
}

Ncm aba_dcm() {
  Ncm m(1, 1, Alphabet({"a", "b"}));
  StateId q0 = m.add_state("q0"), qa = m.add_state("qa"), qb = m.add_state("qb"), qc = m.add_state("qc"),
          qd = m.add_state("qd"), qf = m.add_state("qf");
  m.set_start(q0);
  m.set_final(qf);
  cm_rule(m, q0, "a", 0, qa, R, +1);
  cm_rule(m, qa, "a", 1, qa, R, +1);
  cm_rule(m, qa, "b", 1, qb, R, 0);
  cm_rule(m, qb, "a", 1, qc, R, 0);
  cm_rule(m, qc, "b", 1, qd, R, -1);
  cm_rule(m, qd, "b", 1, qd, R, -1);
  cm_rule(m, qd, "a", 0, qf, R, 0);
  return m;
}

Ncm bma_dcm() {
  Ncm m(1, 1, Alphabet({"a", "b"}));
  StateId q0 = m.add_state("q0"), qb = m.add_state("qb"), qa = m.add_state("qa"), qf = m.add_state("qf");
  m.set_start(q0);
  m.set_final(qf);
  cm_rule(m, q0, "b", 0, qb, R, +1);
  cm_rule(m, qb, "b", 1, qb, R, +1);
  cm_rule(m, qb, "a", 1, qa, R, -1);
  cm_rule(m, qa, "a", 1, qa, R, -1);
  cm_rule(m, qa, "a", 0, qf, R, 0);
  return m;
}

Npda odd_step_dpda() {
  Npda m(Alphabet({"a", "#", "$"}), Alphabet({"Z", "A", "S"}));
  PdaBuilder b{m};
  StateId p0 = m.add_state("p0"), p1 = m.add_state("p1");
  // s_c: after a '#', c odd blocks finished (3 means three or more).
  StateId s[4], in[4];
  for (int c = 1; c <= 3; ++c) {
    s[c] = m.add_state("s" + std::to_string(c));
    in[c] = m.add_state("b" + std::to_string(c));
  }
  StateId start = m.add_state("m0"), pop = m.add_state("m_pop"), extra = m.add_state("m_extra"),
          done = m.add_state("m_end");
  m.set_start(p0);
  m.set_initial_stack(b.sym("Z"));
  m.set_final(done);
  b.rule(p0, "a", "Z", p1, {"A", "Z"});
  b.rule(p1, "#", "A", s[1], {"S", "A"});
  for (int c = 1; c <= 3; ++c) {
    b.rule(s[c], "a", "S", in[c], {"A", "S"});
    b.rule(in[c], "a", "A", in[c], {"A", "A"});
    b.rule(in[c], "#", "A", s[std::min(c + 1, 3)], {"S", "A"});
    if (c >= 2) b.rule(in[c], "$", "A", start, {"A"});
  }
  // Each block after '$' is one longer than the block on top of the stack.
  b.rule(start, "a", "A", pop, {});
  b.rule(pop, "a", "A", pop, {});
  b.rule(pop, "a", "S", extra, {"S"});
  b.rule(extra, "#", "S", start, {});
  b.rule(pop, "a", "Z", done, {"Z"});
  return m;
}

Npda even_step_dpda() {
  Npda m(Alphabet({"a", "#", "$"}), Alphabet({"Z", "A", "S", "T"}));
  PdaBuilder b{m};
  StateId p0 = m.add_state("p0"), p1 = m.add_state("p1");
  // Blocks i3, i5, ... push one A per letter after the first, above a
  // separator: T for the deepest block, S for the others.
  StateId f[4], g[4];
  for (int c = 1; c <= 3; ++c) {
    f[c] = m.add_state("f" + std::to_string(c));
    g[c] = m.add_state("g" + std::to_string(c));
  }
  StateId free0 = m.add_state("d0"), free1 = m.add_state("d1"), e0 = m.add_state("e0"), e1 = m.add_state("e1"),
          acc = m.add_state("acc");
  m.set_start(p0);
  m.set_initial_stack(b.sym("Z"));
  m.set_final(acc);
  b.rule(p0, "a", "Z", p1, {"Z"});
  b.rule(p1, "#", "Z", f[1], {"T", "Z"});
  for (int c = 1; c <= 3; ++c) {
    const std::string sep = c == 1 ? "T" : "S";
    b.rule(f[c], "a", sep, g[c], {sep});
    for (const std::string& top : {sep, std::string("A")}) {
      b.rule(g[c], "a", top, g[c], {"A", top});
      b.rule(g[c], "#", top, f[std::min(c + 1, 3)], {"S", top});
      if (c >= 2) b.rule(g[c], "$", top, free0, {top});
    }
  }
  for (const char* top : {"S", "A"}) {
    b.rule(free0, "a", top, free1, {top});
    b.rule(free1, "a", top, free1, {top});
    b.rule(free1, "#", top, e0, {top});
  }
  // Each remaining block is one shorter than the block it is matched with.
  b.rule(e0, "a", "A", e1, {});
  b.rule(e1, "a", "A", e1, {});
  b.rule(e1, "#", "S", e0, {});
  b.rule(e1, kEpsilonToken, "T", acc, {});
  return m;
}

Npda anbn_dpda() {
  Npda m(Alphabet({"a", "b"}), Alphabet({"Z", "A"}));
  PdaBuilder b{m};
  StateId q0 = m.add_state("q0"), qa = m.add_state("qa"), qb = m.add_state("qb"), acc = m.add_state("acc");
  m.set_start(q0);
  m.set_initial_stack(b.sym("Z"));
  m.set_final(q0);
  m.set_final(acc);
  b.rule(q0, "a", "Z", qa, {"A", "Z"});
  b.rule(qa, "a", "A", qa, {"A", "A"});
  b.rule(qa, "b", "A", qb, {});
  b.rule(qb, "b", "A", qb, {});
  b.rule(qb, kEpsilonToken, "Z", acc, {});
  return m;
}

Npda equal_ab_dpda() {
  Npda m(Alphabet({"a", "b"}), Alphabet({"Z", "A", "B"}));
  PdaBuilder b{m};
  StateId even = m.add_state("even"), ahead = m.add_state("ahead"), popped = m.add_state("popped");
  m.set_start(even);
  m.set_initial_stack(b.sym("Z"));
  m.set_final(even);
  b.rule(even, "a", "Z", ahead, {"A", "Z"});
  b.rule(even, "b", "Z", ahead, {"B", "Z"});
  b.rule(ahead, "a", "A", ahead, {"A", "A"});
  b.rule(ahead, "b", "B", ahead, {"B", "B"});
  b.rule(ahead, "a", "B", popped, {});
  b.rule(ahead, "b", "A", popped, {});
  b.rule(popped, kEpsilonToken, "Z", even, {"Z"});
  b.rule(popped, kEpsilonToken, "A", ahead, {"A"});
  b.rule(popped, kEpsilonToken, "B", ahead, {"B"});
  return m;
}

std::string tiny_sat_dimacs() { return "c x1\np cnf 1 1\n1 1 1 0\n"; }
std::string tiny_unsat_dimacs() { return "c x1 and not x1\np cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n"; }

std::vector<std::string> write_fixture_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> names;
  auto put = [&](const std::string& name, const std::string& text) {
    write_text_file((fs::path(dir) / name).string(), text);
    names.push_back(name);
  };
  const Alphabet ab({"a", "b"});
  put("anbn.dcm.json", save_ncm(anbn_dcm(), true));
  put("aba.dcm.json", save_ncm(aba_dcm(), true));
  put("bma.dcm.json", save_ncm(bma_dcm(), true));
  put("odd_step.dpda.json", save_npda(odd_step_dpda(), true));
  put("even_step.dpda.json", save_npda(even_step_dpda(), true));
  put("anbn.dpda.json", save_npda(anbn_dpda(), true));
  put("equal_ab.dpda.json", save_npda(equal_ab_dpda(), true));
  put("only_ab.nfa.json", save_nfa(single_word_nfa(word_from_chars("ab"), ab)));
  put("a4a5.nfa.json",
      save_nfa(finite_language_nfa({word_from_chars("aaaa"), word_from_chars("aaaaa")}, Alphabet({"a"}))));
  put("naive_ab_cd.nfa.json", save_nfa(naive_shuffle_nfa(word_from_chars("ab"), word_from_chars("cd"))));
  put("naive_ab_ba.nfa.json", save_nfa(naive_shuffle_nfa(word_from_chars("ab"), word_from_chars("ba"))));
  put("q_a.semilinear.json", save_semilinear(sl_singleton(ab, {1, 0})));
  put("q_b.semilinear.json", save_semilinear(sl_singleton(ab, {0, 1})));
  put("q_star.semilinear.json", save_semilinear(SemilinearSet{ab, {{{0, 0}, {{1, 0}, {0, 1}}}}}));
  put("tiny_sat.dimacs", tiny_sat_dimacs());
  put("tiny_unsat.dimacs", tiny_unsat_dimacs());
  for (const char* name : {"sat", "unsat"}) {
    const std::string which = name;
    SatInstance inst =
        sat_to_shuffle_noninclusion(parse_dimacs(which == "sat" ? tiny_sat_dimacs() : tiny_unsat_dimacs()));
    put("reduce_" + which + "_u.word.json", save_word(inst.u));
    put("reduce_" + which + "_v.word.json", save_word(inst.v));
    put("reduce_" + which + "_m.nfa.json", save_nfa(inst.m));
  }
  return names;
}

}  // namespace shufflekit
