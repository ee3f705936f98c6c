#ifndef SHUFFLEKIT_FIXTURES_HPP
#define SHUFFLEKIT_FIXTURES_HPP

#include <string>
#include <vector>

#include "shufflekit/counters.hpp"
#include "shufflekit/pushdown.hpp"

namespace shufflekit {

/// {a^n b^n | n > 0} with one counter reversing once.
Ncm anbn_dcm();
/// {a^n b a b^n a | n > 0}.
Ncm aba_dcm();
/// {b^m a^(m+1) | m > 0}.
Ncm bma_dcm();

/// Over {a,#,$}: a^i1 # a^i3 # ... # a^i(2n-1) $ a^i(2n) # ... # a^i4 # a^i2
/// with n >= 3, i1 = 1 and every exponent positive. The "odd" variant
/// requires i(j+1) = i(j) + 1 for odd j, the "even" variant for even j.
Npda odd_step_dpda();
Npda even_step_dpda();

/// {a^n b^n | n >= 0}.
Npda anbn_dpda();
/// Words over {a,b} with as many a's as b's.
Npda equal_ab_dpda();

/// (x1 ∨ x1 ∨ x1) and (x1 ∨ x1 ∨ x1) ∧ (¬x1 ∨ ¬x1 ∨ ¬x1) in DIMACS form.
std::string tiny_sat_dimacs();
std::string tiny_unsat_dimacs();

/// Writes the JSON/DIMACS corpus into `dir`; returns the file names.
std::vector<std::string> write_fixture_corpus(const std::string& dir);

}  // namespace shufflekit

#endif
