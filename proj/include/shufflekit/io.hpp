#ifndef SHUFFLEKIT_IO_HPP
#define SHUFFLEKIT_IO_HPP

#include <string>

#include "shufflekit/counters.hpp"
#include "shufflekit/nfa.hpp"
#include "shufflekit/pushdown.hpp"
#include "shufflekit/semilinear.hpp"

namespace shufflekit {

// JSON documents carry a "kind" field: nfa, dfa, npda, dpda, ncm, dcm,
// semilinear or word. Writers emit a canonical form (states in id order,
// transitions sorted, two-space indentation, trailing newline), so loading
// and saving a canonical file reproduces it byte for byte. Every loader
// throws InputError on malformed documents; the deterministic kinds also
// throw ContractError when the machine is not deterministic.

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// The "kind" field of a document.
std::string document_kind(const std::string& text);

Nfa load_nfa(const std::string& text);  // kinds nfa, dfa
Npda load_npda(const std::string& text);  // kinds npda, dpda
Ncm load_ncm(const std::string& text);  // kinds ncm, dcm
SemilinearSet load_semilinear(const std::string& text);
Word load_word(const std::string& text);

/// `as_dfa` labels the document "dfa" and requires a complete DFA.
std::string save_nfa(const Nfa& m, bool as_dfa = false);
std::string save_npda(const Npda& m, bool as_dpda = false);
std::string save_ncm(const Ncm& m, bool as_dcm = false);
std::string save_semilinear(const SemilinearSet& q);
std::string save_word(const Word& w);

/// Loads and re-saves a document of any kind.
std::string canonicalize(const std::string& text);

}  // namespace shufflekit

#endif
