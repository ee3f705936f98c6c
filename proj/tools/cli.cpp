#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "shufflekit/decide.hpp"
#include "shufflekit/decompose.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/fixtures.hpp"
#include "shufflekit/io.hpp"
#include "shufflekit/reduce.hpp"
#include "shufflekit/shuffle.hpp"

namespace shufflekit::cli {

namespace {

namespace fs = std::filesystem;

void print_stats(const std::map<std::string, std::int64_t>& stats, std::ostream& out) {
  if (stats.empty()) return;
  out << "STATS";
  for (const auto& [k, v] : stats) out << ' ' << k << '=' << v;
  out << '\n';
}

int report(const DecisionOutcome& o, std::ostream& out) {
  out << "VERDICT " << (o.holds ? (o.bounded ? "holds-bounded" : "holds") : "fails") << '\n';
  if (o.witness) out << "WITNESS " << format_word(*o.witness) << '\n';
  out << "METHOD " << o.method << '\n';
  print_stats(o.stats, out);
  if (!o.holds) return kExitFails;
  return o.bounded ? kExitBounded : kExitHolds;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

Nfa nfa_file(const std::string& path) { return load_nfa(read_text_file(path)); }
Npda npda_file(const std::string& path) { return load_npda(read_text_file(path)); }
Ncm ncm_file(const std::string& path) { return load_ncm(read_text_file(path)); }

// A word argument names a word document when it is an existing .json file.
Word word_arg(const std::string& s) {
  std::error_code ec;
  if (fs::path(s).extension() == ".json" && fs::is_regular_file(s, ec)) return load_word(read_text_file(s));
  return parse_word(s);
}

std::vector<Word> word_list(const std::vector<std::string>& items) {
  std::vector<Word> out;
  for (const auto& s : items) out.push_back(parse_word(s));
  return out;
}

std::string manifest(const nlohmann::ordered_json& fields) {
  nlohmann::ordered_json j{{"kind", "manifest"}};
  for (const auto& [k, v] : fields.items()) j[k] = v;
  return j.dump(2) + "\n";
}

struct Options {
  std::string u, v, w, automaton, m1, m2, m3, q1, q2, d1, d2, cnf, out_path, out_dir, dir, a, b;
  std::vector<std::string> l1, l2;
  std::size_t bound = kDefaultEnumerationBound;
  std::int64_t comm_bound = CommOptions{}.bound;
  std::int64_t cap = 0;
  std::size_t budget = 512;
  std::size_t random = 0;
  int p = 4, q = 6;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool word_given = false;
};

int reduce_verify(const Options& o, std::ostream& out) {
  if (!o.automaton.empty()) return report(verify_inequality_reduction(nfa_file(o.automaton), word_arg(o.u), word_arg(o.v)), out);
  std::vector<Cnf3> instances;
  if (!o.cnf.empty()) instances.push_back(parse_dimacs(read_text_file(o.cnf)));
  if (o.random > 0) {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> pick_p(1, o.p), pick_q(1, o.q);
    for (std::size_t i = 0; i < o.random; ++i) {
      int p = pick_p(rng), q = pick_q(rng);
      instances.push_back(random_cnf3(p, q, rng));
    }
  }
  if (instances.empty()) throw InputError("reduce verify needs --cnf, --random or --automaton");
  std::vector<DecisionOutcome> results(instances.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < instances.size();) {
      try {
        results[i] = verify_sat_reduction(instances[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, o.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  DecisionOutcome total;
  total.method = results.front().method;
  total.holds = true;
  std::int64_t sat = 0, disagreements = 0;
  for (const auto& r : results) {
    sat += r.stats.at("satisfiable");
    if (!r.holds) ++disagreements;
  }
  total.holds = disagreements == 0;
  total.stats = {{"instances", static_cast<std::int64_t>(results.size())},
                 {"satisfiable", sat},
                 {"disagreements", disagreements}};
  return report(total, out);
}

int automaton_check(const Options& o, std::ostream& out) {
  const std::string text = read_text_file(o.automaton);
  const std::string kind = document_kind(text);
  std::optional<bool> accepted;
  std::map<std::string, std::int64_t> stats;
  if (kind == "nfa" || kind == "dfa") {
    Nfa m = load_nfa(text);
    stats = {{"states", static_cast<std::int64_t>(m.num_states())},
             {"transitions", static_cast<std::int64_t>(m.num_transitions())},
             {"deterministic", m.is_complete_deterministic()}};
    if (o.word_given) accepted = accepts(m, word_arg(o.w));
  } else if (kind == "npda" || kind == "dpda") {
    Npda m = load_npda(text);
    stats = {{"states", static_cast<std::int64_t>(m.num_states())},
             {"rules", static_cast<std::int64_t>(m.rules().size())},
             {"deterministic", is_dpda(m)}};
    if (o.word_given) accepted = npda_accepts(m, word_arg(o.w));
  } else if (kind == "ncm" || kind == "dcm") {
    Ncm m = load_ncm(text);
    stats = {{"states", static_cast<std::int64_t>(m.num_states())},
             {"rules", static_cast<std::int64_t>(m.rules().size())},
             {"k", static_cast<std::int64_t>(m.k())},
             {"r", static_cast<std::int64_t>(m.r())},
             {"deterministic", m.is_deterministic()}};
    if (o.word_given) accepted = cm_accepts(m, word_arg(o.w));
  } else {
    canonicalize(text);
    out << "KIND " << kind << '\n';
    return kExitHolds;
  }
  if (!accepted) {
    out << "KIND " << kind << '\n';
    print_stats(stats, out);
    return kExitHolds;
  }
  DecisionOutcome r;
  r.holds = *accepted;
  r.method = "membership: holds=w∈L(M)";
  r.stats = stats;
  return report(r, out);
}

int automaton_complement(const Options& o, std::ostream& out) {
  const std::string text = read_text_file(o.automaton);
  const std::string kind = document_kind(text);
  if (kind == "nfa" || kind == "dfa") {
    emit(save_nfa(complement(determinize(load_nfa(text))), true), o.out_path, out);
  } else if (kind == "npda" || kind == "dpda") {
    emit(save_npda(dpda_complement(load_npda(text)), true), o.out_path, out);
  } else if (kind == "ncm" || kind == "dcm") {
    emit(save_ncm(dcm_complement(load_ncm(text)), true), o.out_path, out);
  } else {
    throw InputError("cannot complement a document of kind '" + kind + "'");
  }
  return kExitHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shuffle decision procedures, constructions and reductions", "shufflekit"};
  app.require_subcommand(1);
  Options o;
  CLI::Option* word = nullptr;
  std::vector<std::pair<CLI::App*, std::function<int()>>> actions;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<int()> f) {
    CLI::App* sub = parent->add_subcommand(name, help);
    actions.emplace_back(sub, std::move(f));
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  CLI::App* shuffle = group("shuffle", "Naive shuffle automaton and word-level shuffle");
  {
    auto* c = leaf(shuffle, "build", "Write the naive automaton for u ⧢ v", [&] {
      emit(save_nfa(naive_shuffle_nfa(word_arg(o.u), word_arg(o.v))), o.out_path, out);
      return kExitHolds;
    });
    c->add_option("--u", o.u)->required();
    c->add_option("--v", o.v)->required();
    c->add_option("--out", o.out_path);
    c = leaf(shuffle, "member", "Is w in u ⧢ v?", [&] {
      DecisionOutcome r;
      r.holds = word_in_shuffle(word_arg(o.w), word_arg(o.u), word_arg(o.v));
      r.method = "word-in-shuffle: holds=w∈u⧢v";
      return report(r, out);
    });
    c->add_option("--w", o.w)->required();
    c->add_option("--u", o.u)->required();
    c->add_option("--v", o.v)->required();
    c = leaf(shuffle, "enumerate", "List u ⧢ v", [&] {
      auto words = enumerate_shuffle(word_arg(o.u), word_arg(o.v), o.bound);
      for (const auto& w : words) out << "WORD " << format_word(w) << '\n';
      print_stats({{"words", static_cast<std::int64_t>(words.size())}}, out);
      return kExitHolds;
    });
    c->add_option("--u", o.u)->required();
    c->add_option("--v", o.v)->required();
    c->add_option("--bound", o.bound, "Largest |u|+|v| accepted")->capture_default_str();
  }

  CLI::App* decide = group("decide", "Decision procedures");
  {
    auto* c = leaf(decide, "word-subset", "u ⧢ v ⊆ L(M)", [&] {
      return report(word_shuffle_subset_lang(word_arg(o.u), word_arg(o.v), nfa_file(o.automaton)), out);
    });
    c->add_option("--u", o.u)->required();
    c->add_option("--v", o.v)->required();
    c->add_option("--automaton", o.automaton)->required();
    c = leaf(decide, "subset-word", "L(M) ⊆ u ⧢ v", [&] {
      return report(lang_subset_word_shuffle(nfa_file(o.automaton), word_arg(o.u), word_arg(o.v)), out);
    });
    c->add_option("--u", o.u)->required();
    c->add_option("--v", o.v)->required();
    c->add_option("--automaton", o.automaton)->required();
    c = leaf(decide, "equals-word", "L(M) = u ⧢ v", [&] {
      return report(lang_equals_word_shuffle(nfa_file(o.automaton), word_arg(o.u), word_arg(o.v)), out);
    });
    c->add_option("--u", o.u)->required();
    c->add_option("--v", o.v)->required();
    c->add_option("--automaton", o.automaton)->required();
    c = leaf(decide, "regular-dpda", "L(M1) ⧢ L(M2) ⊆ L(M3) for NFAs M1, M2 and a DPDA M3", [&] {
      return report(shuffle_inclusion_regular_dpda(nfa_file(o.m1), nfa_file(o.m2), npda_file(o.m3)), out);
    });
    c->add_option("--m1", o.m1)->required();
    c->add_option("--m2", o.m2)->required();
    c->add_option("--m3", o.m3)->required();
    c = leaf(decide, "ncm-dcm", "L(M1) ⧢ L(M2) ⊆ L(M3) for NCMs M1, M2 and a DCM M3", [&] {
      return report(shuffle_inclusion_ncm_dcm(ncm_file(o.m1), ncm_file(o.m2), ncm_file(o.m3), {o.cap}), out);
    });
    c->add_option("--m1", o.m1)->required();
    c->add_option("--m2", o.m2)->required();
    c->add_option("--m3", o.m3)->required();
    c->add_option("--cap", o.cap, "Counter cap for emptiness (0 = default)")->capture_default_str();
    c = leaf(decide, "unary-finite", "a^D1 ⧢ a^D2 ⊆ L(M) with binary lengths", [&] {
      return report(unary_finite_shuffle_inclusion(parse_binary_list(o.d1), parse_binary_list(o.d2),
                                                   nfa_file(o.automaton)),
                    out);
    });
    c->add_option("--d1", o.d1, "Comma-separated binary lengths")->required();
    c->add_option("--d2", o.d2, "Comma-separated binary lengths")->required();
    c->add_option("--automaton", o.automaton)->required();
    c = leaf(decide, "finite-npda", "L1 ⧢ L2 ⊄ L(M) for finite L1, L2 and an NPDA M", [&] {
      return report(finite_shuffle_npda_noninclusion(word_list(o.l1), word_list(o.l2), npda_file(o.automaton), o.budget),
                    out);
    });
    c->add_option("--l1", o.l1, "Words of L1");
    c->add_option("--l2", o.l2, "Words of L2");
    c->add_option("--automaton", o.automaton)->required();
    c->add_option("--budget", o.budget, "Largest summed pair length")->capture_default_str();
    c = leaf(decide, "comm-semilinear", "L(M) ⊆ ψ⁻¹(Q1) ⧢ ψ⁻¹(Q2)", [&] {
      CommOptions options;
      options.bound = o.comm_bound;
      return report(comm_semilinear_shuffle_superset(nfa_file(o.automaton), load_semilinear(read_text_file(o.q1)),
                                                     load_semilinear(read_text_file(o.q2)), options),
                    out);
    });
    c->add_option("--automaton", o.automaton)->required();
    c->add_option("--q1", o.q1)->required();
    c->add_option("--q2", o.q2)->required();
    c->add_option("--bound", o.comm_bound, "Largest vector entry examined")->capture_default_str();
    c = leaf(decide, "disjoint-dcm", "L(M) ⊆ L(M1) ⧢ L(M2) for DCMs over disjoint alphabets", [&] {
      return report(
          disjoint_alphabet_dcm_shuffle_superset(nfa_file(o.automaton), ncm_file(o.m1), ncm_file(o.m2), {o.cap}),
          out);
    });
    c->add_option("--automaton", o.automaton)->required();
    c->add_option("--m1", o.m1)->required();
    c->add_option("--m2", o.m2)->required();
    c->add_option("--cap", o.cap, "Counter cap for emptiness (0 = default)")->capture_default_str();
  }

  CLI::App* reduce = group("reduce", "Hardness reductions");
  {
    auto* c = leaf(reduce, "sat", "3-CNF to a shuffle non-inclusion instance", [&] {
      SatInstance inst = sat_to_shuffle_noninclusion(parse_dimacs(read_text_file(o.cnf)));
      nlohmann::ordered_json fields{{"p", inst.p},
                                    {"q", inst.q},
                                    {"y", inst.y},
                                    {"u_length", inst.u.size()},
                                    {"v_length", inst.v.size()}};
      if (!o.out_dir.empty()) {
        fs::create_directories(o.out_dir);
        auto path = [&](const char* name) { return (fs::path(o.out_dir) / name).string(); };
        write_text_file(path("u.word.json"), save_word(inst.u));
        write_text_file(path("v.word.json"), save_word(inst.v));
        write_text_file(path("m.nfa.json"), save_nfa(inst.m));
        fields["files"] = {{"u", "u.word.json"}, {"v", "v.word.json"}, {"automaton", "m.nfa.json"}};
        write_text_file(path("manifest.json"), manifest(fields));
      }
      out << "U " << format_word(inst.u) << '\n' << "V " << format_word(inst.v) << '\n';
      print_stats({{"p", inst.p},
                   {"q", inst.q},
                   {"y", inst.y},
                   {"u_length", static_cast<std::int64_t>(inst.u.size())},
                   {"v_length", static_cast<std::int64_t>(inst.v.size())},
                   {"automaton_states", static_cast<std::int64_t>(inst.m.num_states())}},
                  out);
      return kExitHolds;
    });
    c->add_option("--cnf", o.cnf, "DIMACS file")->required();
    c->add_option("--out-dir", o.out_dir);
    c = leaf(reduce, "dfa-ineq", "DFA non-inclusion to inequality with a^p ⧢ b^q", [&] {
      InequalityInstance inst = dfa_noninclusion_to_inequality(nfa_file(o.automaton), word_arg(o.u), word_arg(o.v));
      if (!o.out_dir.empty()) {
        fs::create_directories(o.out_dir);
        write_text_file((fs::path(o.out_dir) / "m.nfa.json").string(), save_nfa(inst.m));
        write_text_file((fs::path(o.out_dir) / "manifest.json").string(),
                        manifest({{"p", inst.p}, {"q", inst.q}, {"files", {{"automaton", "m.nfa.json"}}}}));
      }
      print_stats({{"p", static_cast<std::int64_t>(inst.p)},
                   {"q", static_cast<std::int64_t>(inst.q)},
                   {"automaton_states", static_cast<std::int64_t>(inst.m.num_states())}},
                  out);
      return kExitHolds;
    });
    c->add_option("--automaton", o.automaton)->required();
    c->add_option("--u", o.u)->required();
    c->add_option("--v", o.v)->required();
    c->add_option("--out-dir", o.out_dir);
    c = leaf(reduce, "verify", "Check reduction biconditionals against brute force", [&] { return reduce_verify(o, out); });
    c->add_option("--cnf", o.cnf, "DIMACS file");
    c->add_option("--random", o.random, "Number of random 3-CNFs");
    c->add_option("--p", o.p, "Largest variable count")->capture_default_str();
    c->add_option("--q", o.q, "Largest clause count")->capture_default_str();
    c->add_option("--seed", o.seed)->capture_default_str();
    c->add_option("--jobs", o.jobs)->capture_default_str();
    c->add_option("--automaton", o.automaton, "Check the DFA reduction on this machine instead");
    c->add_option("--u", o.u);
    c->add_option("--v", o.v);
  }

  {
    auto* c = leaf(&app, "decompose", "Find u, v with L(M) = u ⧢ v", [&] {
      Decomposition d = decompose(nfa_file(o.automaton));
      if (d.pair) {
        out << "VERDICT holds\nPAIR " << format_word(d.pair->first) << ' ' << format_word(d.pair->second) << '\n';
      } else {
        out << "VERDICT fails\nnot decomposable: " << d.reason << '\n';
      }
      print_stats(d.stats, out);
      return d.pair ? kExitHolds : kExitFails;
    });
    c->add_option("--automaton", o.automaton)->required();
  }

  CLI::App* automaton = group("automaton", "Machine documents");
  {
    auto* c = leaf(automaton, "check", "Validate a document, or test --word for membership", [&] {
      o.word_given = word->count() > 0;
      return automaton_check(o, out);
    });
    c->add_option("--automaton", o.automaton)->required();
    word = c->add_option("--word", o.w);
    c = leaf(automaton, "determinize", "Subset construction", [&] {
      emit(save_nfa(determinize(nfa_file(o.automaton)), true), o.out_path, out);
      return kExitHolds;
    });
    c->add_option("--automaton", o.automaton)->required();
    c->add_option("--out", o.out_path);
    c = leaf(automaton, "complement", "Complement an NFA, DPDA or DCM", [&] { return automaton_complement(o, out); });
    c->add_option("--automaton", o.automaton)->required();
    c->add_option("--out", o.out_path);
    c = leaf(automaton, "equiv", "Language equivalence of two NFAs", [&] {
      Nfa a = nfa_file(o.a), b = nfa_file(o.b);
      Alphabet merged = a.alphabet().merged_with(b.alphabet());
      return report(equivalent(with_alphabet(a, merged), with_alphabet(b, merged)), out);
    });
    c->add_option("--a", o.a)->required();
    c->add_option("--b", o.b)->required();
    c = leaf(automaton, "canonical", "Print the canonical form of a document", [&] {
      emit(canonicalize(read_text_file(o.automaton)), o.out_path, out);
      return kExitHolds;
    });
    c->add_option("--automaton", o.automaton)->required();
    c->add_option("--out", o.out_path);
  }

  CLI::App* fixtures = group("fixtures", "Fixture corpus");
  {
    auto* c = leaf(fixtures, "write", "Write the fixture corpus", [&] {
      for (const auto& name : write_fixture_corpus(o.dir)) out << "FILE " << name << '\n';
      return kExitHolds;
    });
    c->add_option("--dir", o.dir)->required();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitHolds : kExitInput;
  }
  try {
    for (auto& [sub, action] : actions)
      if (sub->parsed()) return action();
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ContractError& e) {
    err << "contract error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace shufflekit::cli
