#pragma once

#include "larsieve/certreal.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace larsieve {

enum class BoundMethod {
    gallagher,
    theorem1,
    theorem1_lambda_variant,
    corollary1,
    theorem2,
    gaussian,
};

const char* bound_method_name(BoundMethod m);

/// A computed bound value with its formula terms, validity flag (certified
/// denominator sign) and rounding direction. `bound` is always rounded so the
/// reported value over-estimates the mathematical right-hand side.
struct BoundReport {
    BoundMethod method = BoundMethod::gallagher;
    bool valid = false;    // denominator certified positive; bound meaningful
    double bound = 0.0;    // certified upper rendering (ignore unless valid)
    double numerator = 0.0;
    double denominator = 0.0;
    double numerator_err = 0.0;   // certified radii of the two terms
    double denominator_err = 0.0;
    long s_star = -1;             // theorem1 family: integer bound from the self-referential search
    long floor_value = -1;        // corollary1: the unconditional 1243 branch
    double effective = 0.0;       // corollary1: max(floor, rhs) when valid; otherwise = bound
    std::vector<mpz_class> flagged_moduli; // gallagher: entries with Lambda(q) = 0
    std::string note;

    double usable_bound() const { return effective > 0.0 ? effective : bound; }
};

/// One weighted term of a sieve ratio: numerator gains `weight`, denominator
/// gains `weight / nu`.
struct RatioTerm {
    CertReal weight;
    unsigned long nu = 1;
};

struct RatioEval {
    CertReal numerator;
    CertReal denominator;
    bool valid = false; // denominator certified positive
};

/// Shared evaluator core used by the Gallagher, Theorem 1, Lambda-variant,
/// Corollary 1 and Gaussian bounds:
///   numerator   = sum_i weight_i       - subtrahend
///   denominator = sum_i weight_i/nu_i  - subtrahend
RatioEval ratio_bound_core(const std::vector<RatioTerm>& terms, const CertReal& subtrahend);

} // namespace larsieve
