#pragma once

#include "larsieve/certreal.hpp"

#include <vector>

namespace larsieve {

/// A candidate maximizer of prod_{i<j}(xi_j - xi_i) over 0 <= xi_1 <= ... <= xi_s <= 1.
struct FeketeConfig {
    unsigned s = 0;
    std::vector<double> points; // sorted, includes the pinned endpoints 0 and 1
    double product = 0.0;
};

struct Lemma2Row {
    unsigned s;
    double lhs;    // c_s midpoint
    double rhs;    // envelope midpoint
    bool ok;       // certified strict inequality lhs < rhs
    double margin; // certified lower bound on rhs - lhs
};

/// c_s from the closed product formula, evaluated as the exact log-sum
/// (1/(s(s-1))) sum_j [2(j-1)log(j-1) + j log j - (s+j-2)log(s+j-2)]
/// with 0*log 0 = 0 at j = 1. Requires 2 <= s <= 10^6.
CertReal c_s(unsigned long s, mpfr_prec_t prec = 0);

/// Cached certified log k for small k (shared table; grows on demand).
CertReal log_ui_cached(unsigned long k, mpfr_prec_t prec = 0);

/// Independent numerical maximizer for Lemma 1 (s <= 7): nested grid
/// refinement, factor 10 per round, endpoints pinned at 0 and 1.
FeketeConfig lemma1_oracle(unsigned s, unsigned grid_refinements = 8);

/// Checks c_s < (1/4) exp((s log(2s) + (1/4) log s) / (s(s-1))) with certified
/// intervals for each 2 <= s <= s_max. Throws PrecisionInsufficient if an
/// inequality cannot be decided even after precision escalation.
std::vector<Lemma2Row> lemma2_check(unsigned long s_max, mpfr_prec_t prec = 0);

struct RemarkConstantResult {
    CertReal value;      // encloses 2 - log 2 + 2*gamma + 4*sum_{p>=3} log p/(p^2-1)
    CertReal tail_bound; // certified upper bound on the truncated prime sum tail
    bool certified_le_3817;
};

/// The explicit constant from the remark after Corollary 1, with primes up to
/// prime_cutoff and an analytic tail bound. Requires prime_cutoff >= 10^3.
RemarkConstantResult remark_constant(std::uint32_t prime_cutoff, mpfr_prec_t prec = 0);

} // namespace larsieve
