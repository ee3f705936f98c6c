#ifndef SHUFFLEKIT_SEMILINEAR_HPP
#define SHUFFLEKIT_SEMILINEAR_HPP

#include <cstdint>
#include <vector>

#include "shufflekit/counters.hpp"
#include "shufflekit/nfa.hpp"

namespace shufflekit {

/// Letter counts aligned to an ordered alphabet.
using ParikhVector = std::vector<std::int64_t>;

ParikhVector parikh(const Word& w, const Alphabet& alphabet);
ParikhVector add(const ParikhVector& a, const ParikhVector& b);
bool is_zero(const ParikhVector& v);

/// { constant + i1*p1 + ... + in*pn : i >= 0 }.
struct LinearSet {
  ParikhVector constant;
  std::vector<ParikhVector> periods;

  /// Drops zero and duplicate periods and sorts the rest.
  void normalize();
  friend auto operator<=>(const LinearSet&, const LinearSet&) = default;
};

/// Finite union of linear sets; no components means the empty set.
struct SemilinearSet {
  Alphabet alphabet;
  std::vector<LinearSet> components;

  std::size_t dimension() const { return alphabet.size(); }
  /// Normalizes components, removes duplicates and components contained
  /// in another one.
  void simplify();
  bool has_periods() const;
};

SemilinearSet sl_empty(const Alphabet& alphabet);
SemilinearSet sl_singleton(const Alphabet& alphabet, ParikhVector v);

/// Throws InputError on dimension mismatch.
bool sl_membership(const SemilinearSet& q, const ParikhVector& x);
bool linear_membership(const LinearSet& l, const ParikhVector& x);

SemilinearSet sl_sum(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet sl_union(const SemilinearSet& a, const SemilinearSet& b);
/// Star over subsets of components; throws ResourceError above `component_bound`.
SemilinearSet sl_star(const SemilinearSet& a, std::size_t component_bound = 12);

/// Members whose every entry is at most `bound`.
std::vector<ParikhVector> sl_members_up_to(const SemilinearSet& q, std::int64_t bound);

struct ParikhOptions {
  std::size_t state_bound = 32;
  std::size_t star_component_bound = 12;
};

/// ψ(L(M)) via state elimination and structural induction.
SemilinearSet nfa_parikh_image(const Nfa& m, const ParikhOptions& options = {});

/// ψ(w) ∈ ψ(L(M)).
bool comm_membership(const Nfa& m, const Word& w, const ParikhOptions& options = {});

/// Counter machine for the words a1^k1 ... am^km with (k1..km) ∈ Q1 + Q2:
/// it splits each block between two counter banks while reading and then
/// checks each bank against its set by decrementing.
Ncm sum_acceptor_ncm(const SemilinearSet& q1, const SemilinearSet& q2);

}  // namespace shufflekit

#endif
