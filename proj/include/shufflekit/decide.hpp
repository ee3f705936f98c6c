#ifndef SHUFFLEKIT_DECIDE_HPP
#define SHUFFLEKIT_DECIDE_HPP

#include <cstdint>
#include <vector>

#include "shufflekit/counters.hpp"
#include "shufflekit/nfa.hpp"
#include "shufflekit/pushdown.hpp"
#include "shufflekit/semilinear.hpp"

namespace shufflekit {

// Every procedure re-verifies its witness before returning it; the
// `method` string states what `holds` means.

/// holds = u ⧢ v ⊆ L(M); witness = an interleaving outside L(M).
DecisionOutcome word_shuffle_subset_lang(const Word& u, const Word& v, const Nfa& m);

/// holds = L(M) ⊆ u ⧢ v; witness = an accepted word outside u ⧢ v.
DecisionOutcome lang_subset_word_shuffle(const Nfa& m, const Word& u, const Word& v);

/// holds = L(M) = u ⧢ v.
DecisionOutcome lang_equals_word_shuffle(const Nfa& m, const Word& u, const Word& v);

/// holds = L(M1) ⧢ L(M2) ⊆ L(M3) for a complementable deterministic M3.
DecisionOutcome shuffle_inclusion_regular_dpda(const Nfa& m1, const Nfa& m2, const Npda& m3);

/// holds = L(M1) ⧢ L(M2) ⊆ L(M3); bounded when the emptiness search hit its cap.
DecisionOutcome shuffle_inclusion_ncm_dcm(const Ncm& m1, const Ncm& m2, const Ncm& m3,
                                          const CmEmptinessOptions& options = {});

/// holds = a^(d1+d2) ∈ L(M) for all d1 ∈ D1, d2 ∈ D2. The witness spells the
/// first failing length in binary; stats carry the product counts.
DecisionOutcome unary_finite_shuffle_inclusion(const std::vector<std::uint64_t>& d1,
                                               const std::vector<std::uint64_t>& d2, const Nfa& m);

/// holds = L1 ⧢ L2 ⊄ L(M); witness = an interleaving M rejects. Throws
/// ResourceError when the summed pair lengths exceed `budget`.
DecisionOutcome finite_shuffle_npda_noninclusion(const std::vector<Word>& l1, const std::vector<Word>& l2,
                                                 const Npda& m, std::size_t budget = 512);

struct CommOptions {
  /// Largest vector entry examined in the image of M.
  std::int64_t bound = 12;
  ParikhOptions parikh;
};

/// holds = ψ(L(M)) ⊆ Q1 + Q2, i.e. L(M) ⊆ ψ⁻¹(Q1) ⧢ ψ⁻¹(Q2). Bounded when
/// the image of M is infinite.
DecisionOutcome comm_semilinear_shuffle_superset(const Nfa& m, const SemilinearSet& q1, const SemilinearSet& q2,
                                                 const CommOptions& options = {});

/// holds = L(M) ⊆ L(M1) ⧢ L(M2) for deterministic machines over disjoint alphabets.
DecisionOutcome disjoint_alphabet_dcm_shuffle_superset(const Nfa& m, const Ncm& m1, const Ncm& m2,
                                                       const CmEmptinessOptions& options = {});

/// Parses comma-separated binary numerals ("1,10,0").
std::vector<std::uint64_t> parse_binary_list(const std::string& text);
std::string to_binary(std::uint64_t d);

}  // namespace shufflekit

#endif
