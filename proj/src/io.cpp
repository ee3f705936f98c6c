#include "shufflekit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "shufflekit/errors.hpp"

namespace shufflekit {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

namespace {

Json parse(const std::string& text) {
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw InputError("document must be a JSON object");
    return j;
  } catch (const Json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("missing field '") + name + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("field '") + name + "' has the wrong type");
  }
}

void expect_kind(const Json& j, std::initializer_list<const char*> kinds) {
  std::string kind = get<std::string>(j, "kind");
  for (const char* k : kinds)
    if (kind == k) return;
  throw InputError("unexpected document kind '" + kind + "'");
}

// Maps state names to ids while building a machine of type M.
template <typename M>
std::vector<std::string> add_states(M& m, const Json& j) {
  auto names = get<std::vector<std::string>>(j, "states");
  if (names.empty()) throw InputError("machine has no states");
  for (const auto& n : names) m.add_state(n);
  return names;
}

template <typename M>
StateId state_ref(const M& m, const std::string& name) {
  auto s = m.find_state(name);
  if (!s) throw InputError("unknown state '" + name + "'");
  return *s;
}

template <typename M>
void set_start_and_finals(M& m, const Json& j) {
  m.set_start(state_ref(m, get<std::string>(j, "start")));
  for (const auto& f : get<std::vector<std::string>>(j, "finals")) m.set_final(state_ref(m, f));
}

template <typename M>
std::vector<std::string> final_names(const M& m) {
  std::vector<std::string> out;
  for (StateId s = 0; s < m.num_states(); ++s)
    if (m.is_final(s)) out.push_back(m.state_name(s));
  return out;
}

template <typename M>
std::vector<std::string> state_names(const M& m) {
  std::vector<std::string> out;
  for (StateId s = 0; s < m.num_states(); ++s) out.push_back(m.state_name(s));
  return out;
}

int input_ref(const Alphabet& a, const std::string& s, const Symbol& silent, int silent_label) {
  if (s == silent) return silent_label;
  auto i = a.find(s);
  if (!i) throw InputError("symbol '" + s + "' is not in the alphabet");
  return static_cast<int>(*i);
}

std::string input_name(const Alphabet& a, int label, const Symbol& silent) {
  return label < 0 ? silent : a[label];
}

}  // namespace

std::string document_kind(const std::string& text) { return get<std::string>(parse(text), "kind"); }

Nfa load_nfa(const std::string& text) {
  Json j = parse(text);
  expect_kind(j, {"nfa", "dfa"});
  Nfa m(Alphabet(get<std::vector<std::string>>(j, "alphabet")));
  add_states(m, j);
  set_start_and_finals(m, j);
  for (const Json& t : field(j, "transitions")) {
    StateId from = state_ref(m, get<std::string>(t, "from"));
    int label = input_ref(m.alphabet(), get<std::string>(t, "on"), kEpsilonToken, kEpsilon);
    for (const auto& to : get<std::vector<std::string>>(t, "to")) m.add_transition(from, label, state_ref(m, to));
  }
  if (j["kind"] == "dfa" && !m.is_complete_deterministic())
    throw ContractError("document of kind dfa is not a complete deterministic automaton");
  return m;
}

std::string save_nfa(const Nfa& m, bool as_dfa) {
  if (as_dfa && !m.is_complete_deterministic()) throw ContractError("automaton is not a complete DFA");
  Json j;
  j["kind"] = as_dfa ? "dfa" : "nfa";
  j["alphabet"] = m.alphabet().symbols();
  j["states"] = state_names(m);
  j["start"] = m.state_name(m.start());
  j["finals"] = final_names(m);
  Json ts = Json::array();
  for (StateId s = 0; s < m.num_states(); ++s) {
    for (int label = kEpsilon; label < static_cast<int>(m.alphabet().size()); ++label) {
      StateSet targets = m.targets(s, label);
      if (targets.empty()) continue;
      std::vector<std::string> to;
      for (StateId t : targets) to.push_back(m.state_name(t));
      ts.push_back({{"from", m.state_name(s)}, {"on", input_name(m.alphabet(), label, kEpsilonToken)}, {"to", to}});
    }
  }
  j["transitions"] = ts;
  return dump(j);
}

Npda load_npda(const std::string& text) {
  Json j = parse(text);
  expect_kind(j, {"npda", "dpda"});
  Npda m(Alphabet(get<std::vector<std::string>>(j, "alphabet")),
         Alphabet(get<std::vector<std::string>>(j, "stack_alphabet")));
  add_states(m, j);
  set_start_and_finals(m, j);
  auto stack_ref = [&](const std::string& x) {
    auto i = m.stack_alphabet().find(x);
    if (!i) throw InputError("stack symbol '" + x + "' is not in the stack alphabet");
    return static_cast<int>(*i);
  };
  m.set_initial_stack(stack_ref(get<std::string>(j, "initial_stack")));
  for (const Json& t : field(j, "transitions")) {
    PdaRule r;
    r.from = state_ref(m, get<std::string>(t, "from"));
    r.input = input_ref(m.input_alphabet(), get<std::string>(t, "on"), kEpsilonToken, kEpsilon);
    r.top = stack_ref(get<std::string>(t, "top"));
    r.to = state_ref(m, get<std::string>(t, "to"));
    for (const auto& x : get<std::vector<std::string>>(t, "push")) r.push.push_back(stack_ref(x));
    m.add_rule(std::move(r));
  }
  if (j["kind"] == "dpda") require_dpda(m);
  return m;
}

std::string save_npda(const Npda& m, bool as_dpda) {
  if (as_dpda) require_dpda(m);
  Json j;
  j["kind"] = as_dpda ? "dpda" : "npda";
  j["alphabet"] = m.input_alphabet().symbols();
  j["stack_alphabet"] = m.stack_alphabet().symbols();
  j["states"] = state_names(m);
  j["start"] = m.state_name(m.start());
  j["initial_stack"] = m.stack_alphabet()[m.initial_stack()];
  j["finals"] = final_names(m);
  std::vector<PdaRule> rules = m.rules();
  std::sort(rules.begin(), rules.end(), [](const PdaRule& a, const PdaRule& b) {
    return std::tie(a.from, a.input, a.top, a.to, a.push) < std::tie(b.from, b.input, b.top, b.to, b.push);
  });
  Json ts = Json::array();
  for (const auto& r : rules) {
    std::vector<std::string> push;
    for (int x : r.push) push.push_back(m.stack_alphabet()[x]);
    ts.push_back({{"from", m.state_name(r.from)},
                  {"on", input_name(m.input_alphabet(), r.input, kEpsilonToken)},
                  {"top", m.stack_alphabet()[r.top]},
                  {"to", m.state_name(r.to)},
                  {"push", push}});
  }
  j["transitions"] = ts;
  return dump(j);
}

Ncm load_ncm(const std::string& text) {
  Json j = parse(text);
  expect_kind(j, {"ncm", "dcm"});
  auto k = get<std::size_t>(j, "k");
  auto r = get<std::size_t>(j, "r");
  Ncm m(k, r, Alphabet(get<std::vector<std::string>>(j, "alphabet")));
  add_states(m, j);
  set_start_and_finals(m, j);
  for (const Json& t : field(j, "transitions")) {
    CmRule rule;
    rule.from = state_ref(m, get<std::string>(t, "from"));
    rule.input = input_ref(m.alphabet(), get<std::string>(t, "on"), kEndMarkerToken, kEndMarker);
    for (int g : get<std::vector<int>>(t, "guard")) {
      if (g != 0 && g != 1) throw InputError("guard entries must be 0 or 1");
      rule.guard.push_back(static_cast<std::uint8_t>(g));
    }
    rule.to = state_ref(m, get<std::string>(t, "to"));
    std::string move = get<std::string>(t, "move");
    if (move != "S" && move != "R") throw InputError("move must be \"S\" or \"R\"");
    rule.move = move == "S" ? HeadMove::Stay : HeadMove::Right;
    rule.update = get<std::vector<int>>(t, "update");
    m.add_rule(std::move(rule));
  }
  if (j["kind"] == "dcm" && !m.is_deterministic())
    throw ContractError("document of kind dcm is not deterministic");
  return m;
}

std::string save_ncm(const Ncm& m, bool as_dcm) {
  if (as_dcm && !m.is_deterministic()) throw ContractError("counter machine is not deterministic");
  Json j;
  j["kind"] = as_dcm ? "dcm" : "ncm";
  j["k"] = m.k();
  j["r"] = m.r();
  j["alphabet"] = m.alphabet().symbols();
  j["states"] = state_names(m);
  j["start"] = m.state_name(m.start());
  j["finals"] = final_names(m);
  std::vector<CmRule> rules = m.rules();
  // The end-marker sorts after every letter.
  auto key = [](const CmRule& r) {
    return std::make_tuple(r.from, r.input == kEndMarker ? INT32_MAX : r.input, r.guard, r.to, r.move, r.update);
  };
  std::sort(rules.begin(), rules.end(), [&](const CmRule& a, const CmRule& b) { return key(a) < key(b); });
  Json ts = Json::array();
  for (const auto& r : rules) {
    std::vector<int> guard(r.guard.begin(), r.guard.end());
    ts.push_back({{"from", m.state_name(r.from)},
                  {"on", input_name(m.alphabet(), r.input, kEndMarkerToken)},
                  {"guard", guard},
                  {"to", m.state_name(r.to)},
                  {"move", r.move == HeadMove::Stay ? "S" : "R"},
                  {"update", r.update}});
  }
  j["transitions"] = ts;
  return dump(j);
}

SemilinearSet load_semilinear(const std::string& text) {
  Json j = parse(text);
  expect_kind(j, {"semilinear"});
  SemilinearSet q{Alphabet(get<std::vector<std::string>>(j, "alphabet")), {}};
  auto vec = [&](const Json& v) {
    ParikhVector x;
    try {
      x = v.get<ParikhVector>();
    } catch (const Json::exception&) {
      throw InputError("semilinear vectors must be integer arrays");
    }
    if (x.size() != q.dimension()) throw InputError("semilinear vector dimension differs from the alphabet");
    for (auto e : x)
      if (e < 0) throw InputError("semilinear vectors must be non-negative");
    return x;
  };
  for (const Json& c : field(j, "components")) {
    LinearSet l{vec(field(c, "constant")), {}};
    for (const Json& p : field(c, "periods")) l.periods.push_back(vec(p));
    q.components.push_back(std::move(l));
  }
  return q;
}

std::string save_semilinear(const SemilinearSet& q) {
  Json j;
  j["kind"] = "semilinear";
  j["alphabet"] = q.alphabet.symbols();
  Json cs = Json::array();
  for (const auto& l : q.components) cs.push_back({{"constant", l.constant}, {"periods", l.periods}});
  j["components"] = cs;
  return dump(j);
}

Word load_word(const std::string& text) {
  Json j = parse(text);
  expect_kind(j, {"word"});
  Word w = get<Word>(j, "symbols");
  for (const auto& s : w)
    if (s.empty() || s == kEpsilonToken || s == kEndMarkerToken) throw InputError("invalid word symbol '" + s + "'");
  return w;
}

std::string save_word(const Word& w) {
  Json j;
  j["kind"] = "word";
  j["symbols"] = w;
  return dump(j);
}

std::string canonicalize(const std::string& text) {
  std::string kind = document_kind(text);
  if (kind == "nfa" || kind == "dfa") return save_nfa(load_nfa(text), kind == "dfa");
  if (kind == "npda" || kind == "dpda") return save_npda(load_npda(text), kind == "dpda");
  if (kind == "ncm" || kind == "dcm") return save_ncm(load_ncm(text), kind == "dcm");
  if (kind == "semilinear") return save_semilinear(load_semilinear(text));
  if (kind == "word") return save_word(load_word(text));
  throw InputError("unknown document kind '" + kind + "'");
}

}  // namespace shufflekit
