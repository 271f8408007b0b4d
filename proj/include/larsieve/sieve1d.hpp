#pragma once

#include "larsieve/arith.hpp"
#include "larsieve/bound_report.hpp"

#include <optional>
#include <vector>

namespace larsieve {

/// A 1-D sieve instance: integers in [N, N+M] occupying at most nu(q) residue
/// classes modulo each q. Elements are optional (bound-only mode otherwise).
struct SieveInstance1D {
    mpz_class interval_start;            // N
    mpq_class interval_length;           // M > 0, exact
    std::vector<std::pair<Factored, unsigned long>> moduli; // (q, nu)
    std::optional<std::vector<mpz_class>> elements;         // strictly increasing

    void validate() const; // basic invariants; throws on violation
    /// number of distinct residues of the elements modulo q
    unsigned long observed_nu(const Factored& q) const;
};

/// Classical larger sieve: #S <= (sum Lambda(q) - log M)/(sum Lambda(q)/nu - log M).
/// Moduli with Lambda(q) = 0 contribute nothing and are flagged in the report.
BoundReport gallagher_bound(const SieveInstance1D& inst, mpfr_prec_t prec = 0);

/// Improved bound with log q weights and the self-referential constant c_S.
/// Reported s_star is the largest S not excluded by the inequality chain;
/// conservative rounding guarantees an over-estimate. Requires pairwise
/// coprime moduli (NotPairwiseCoprime otherwise).
BoundReport theorem1_bound(const SieveInstance1D& inst, mpfr_prec_t prec = 0);

/// Same self-referential search with Lambda(q) weights; always at least as
/// strong as the Gallagher bound when both are valid.
BoundReport theorem1_lambda_variant(const SieveInstance1D& inst, mpfr_prec_t prec = 0);

/// S <= 1243, or S < (sum Lambda - log M + 1.38)/(sum Lambda/nu - log M + 1.38)
/// when the denominator is positive. effective = max(1243, rhs) when valid.
BoundReport corollary1_bound(const SieveInstance1D& inst, mpfr_prec_t prec = 0);

struct DivisibilityCheck {
    mpz_class q;
    unsigned long nu_observed;
    RationalExponent alpha;
    bool applicable; // alpha > 0
    bool holds;
};

struct VerifyReport {
    unsigned long element_count = 0;
    std::vector<DivisibilityCheck> divisibility; // one row per modulus
    std::vector<BoundReport> bounds;             // all four evaluators
    bool divisibility_ok = true;
    bool bounds_ok = true; // |elements| <= every valid bound
    bool ok() const { return divisibility_ok && bounds_ok; }
};

/// Full mechanism check on an instance with explicit elements: recompute
/// honest nu, verify the Delta-divisibility q^(S^2/(2 nu) - S/2) | Delta per
/// modulus, and check the element count against every bound.
/// Throws InstanceInconsistent if a declared nu is smaller than observed.
VerifyReport verify_instance(const SieveInstance1D& inst, mpfr_prec_t prec = 0);

} // namespace larsieve
