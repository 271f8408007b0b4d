#pragma once

#include "larsieve/arith.hpp"
#include "larsieve/certreal.hpp"

#include <cstdint>
#include <vector>

namespace larsieve {

/// Integer-coefficient polynomial, coefficients stored low degree first.
/// Invariants: degree >= 1, leading coefficient nonzero.
struct IntPoly {
    std::vector<mpz_class> coeffs; // a_0 .. a_n

    explicit IntPoly(std::vector<mpz_class> c);
    static IntPoly power_plus_d(unsigned n, const mpz_class& d); // x^n + d

    unsigned degree() const { return static_cast<unsigned>(coeffs.size() - 1); }
    mpz_class content() const; // gcd of all coefficients (positive)
    std::vector<mpz_class> derivative_coeffs() const;
    mpz_class eval(const mpz_class& x) const;
    mpz_class eval_mod(const mpz_class& x, const mpz_class& m) const;
    bool content_coprime_to(const mpz_class& q) const;
    std::string to_string() const; // "a0,a1,...,an"
};

/// Closed integer interval given by its start and its number of lattice points.
struct IntervalI {
    mpz_class start;
    unsigned long point_count = 0;

    mpz_class end() const { return start + static_cast<long>(point_count) - 1; }
    /// real-measure reading of "length at most q^(1/n)": (points-1)^n <= q
    bool admissible_real(const mpz_class& q, unsigned n) const;
    /// lattice-point reading: points^n <= q
    bool admissible_points(const mpz_class& q, unsigned n) const;
};

/// Largest admissible point count under the conservative (real-measure)
/// reading: floor(q^(1/n)) + 1.
unsigned long max_admissible_points(const mpz_class& q, unsigned n);

/// Residues r in [0, q) with P(r) = 0 mod q; construction re-substitutes
/// every root and rejects duplicates.
struct SolutionSet {
    Factored modulus;
    std::vector<mpz_class> roots;

    SolutionSet(Factored q, std::vector<mpz_class> rs, const IntPoly& P);
    SolutionSet(Factored q, std::vector<mpz_class> rs); // pre-verified path
};

struct HenselCaps {
    mpz_class prime_power_cap = mpz_class(1000000000); // p^alpha <= cap
    unsigned long width_cap = 1000000;                 // singular BFS width per level
};

/// Exhaustive root scan modulo a prime p <= 10^7. DegenerateModP if the
/// polynomial vanishes identically mod p.
SolutionSet roots_mod_prime(const IntPoly& P, const mpz_class& p);

/// Roots modulo p^alpha by Hensel lifting: unique lifts at non-singular
/// roots, breadth-first enumeration of all p extensions at singular ones.
SolutionSet hensel_lift(const IntPoly& P, const mpz_class& p, unsigned alpha,
                        const HenselCaps& caps = HenselCaps{});

/// N(P, q): all roots modulo q via lifting + CRT over the prime powers of q.
/// Requires gcd(a_n, ..., a_0, q) = 1 (ContentNotCoprime otherwise).
SolutionSet solve_mod_q(const IntPoly& P, const Factored& q, const HenselCaps& caps = HenselCaps{});

struct IntervalCount {
    unsigned long count = 0;            // W
    std::vector<mpz_class> witnesses;   // the solutions, sorted
};

/// Exact W = #{x in I : P(x) = 0 mod q}, by intersecting root classes with I.
IntervalCount count_in_interval(const IntPoly& P, const Factored& q, const IntervalI& I,
                                const HenselCaps& caps = HenselCaps{});

/// Theorem 3 / Theorem 4 right-hand sides.
inline unsigned long thm3_rhs(unsigned n, unsigned omega_q) {
    return 2ul * (n - 1) * (n - 1) * omega_q;
}
inline unsigned long thm4_rhs(unsigned n, unsigned omega_q) { return n * 1ul * omega_q; }

/// Exact Corollary 2 check: W <= 2(n-1)^2 omega(q) (L/q^(1/n) + 1) with
/// L = points-1, decided purely in integers.
bool cor2_holds(unsigned long W, unsigned n, unsigned omega_q, const mpz_class& q,
                const mpz_class& span_L);

/// RHS of the section-6 remark: (1-1/n) log q/log 4 + log log q/log 4 + 3.
/// Requires q >= 3 (DomainError).
CertReal remark_log_rhs(const mpz_class& q, unsigned n, mpfr_prec_t prec = 0);

/// Lemma 4: q^(s^2/(2n) - s/2) | Delta for s >= n+1 roots of P mod q.
/// Throws NotRoots if some x_i is not a root, HypothesisViolated if s <= n.
bool verify_lemma4(const IntPoly& P, const Factored& q, const std::vector<mpz_class>& roots);

/// N(P,q) / q^(1 - 1/n); exploratory only.
double svk_ratio(const IntPoly& P, const Factored& q, const HenselCaps& caps = HenselCaps{});

// --- fast fixed-width helpers used by the sweep drivers ----------------------

/// Exhaustive sorted roots of P mod q for q < 2^31, by Horner scan.
std::vector<std::uint32_t> roots_mod_small(const IntPoly& P, std::uint32_t q);
std::vector<std::uint32_t> roots_mod_small(const std::vector<std::uint32_t>& coeffs_mod_q,
                                           std::uint32_t q);

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m);

/// Maximum number of roots contained in any closed interval spanning at most
/// span_limit (i.e. of real length <= span_limit), over all placements mod q.
unsigned long max_window_count(const std::vector<std::uint32_t>& sorted_roots, std::uint32_t q,
                               std::uint64_t span_limit);

} // namespace larsieve
