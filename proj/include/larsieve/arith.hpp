#pragma once

#include "larsieve/certreal.hpp"
#include "larsieve/error.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace larsieve {

/// An integer together with its full prime-power factorization.
/// Invariants: value = prod p^a, primes strictly increasing, exponents >= 1,
/// every p certified prime. value = 1 has an empty factor list.
struct Factored {
    mpz_class value;
    std::vector<std::pair<mpz_class, unsigned>> factors;

    unsigned omega() const { return static_cast<unsigned>(factors.size()); }
    bool is_prime_power() const { return factors.size() == 1; }
    void check_invariants() const; // throws on violation
};

/// Exponent alpha in the generalized divisibility q^alpha | Delta; kept exact.
using RationalExponent = mpq_class;

/// Map prime -> total p-adic valuation; absent prime means valuation 0.
using ValuationProfile = std::map<mpz_class, unsigned long>;

inline const mpz_class& factor_cap() {
    static const mpz_class cap = mpz_class(1) << 96;
    return cap;
}

// --- primes -----------------------------------------------------------------

/// Deterministic primality: Miller-Rabin over the 12 smallest prime bases
/// (proven correct below 3.3e24, so for the whole 64-bit range) and GMP's
/// BPSW-based test for anything larger up to the 2^96 factorization cap.
bool is_prime(const mpz_class& n);

/// Smallest-prime-factor table for [0, limit]; grown on demand, shared.
const std::vector<std::uint32_t>& spf_table(std::uint32_t limit);
const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit);

// --- factorization and arithmetic functions ---------------------------------

/// Full factorization. Requires 2 <= n <= 2^96; throws OutOfRange otherwise.
Factored factorize(const mpz_class& n);

/// Factored value for any n >= 1 (n = 1 gives an empty factor list).
Factored factored_of(const mpz_class& n);

/// Lambda(q): the prime p with q = p^j, or nullopt if q is not a prime power.
std::optional<mpz_class> mangoldt_prime(const Factored& q);

/// Lambda(q) as a certified real on the natural-log scale (0 when not a prime power).
CertReal von_mangoldt(const Factored& q, mpfr_prec_t prec = 0);

unsigned omega(const Factored& q);
mpz_class phi(const Factored& q);
unsigned vp(const Factored& q, const mpz_class& p);

/// g(n,q) = prod over p^j || q of the local factor; g(n,1) = 1. Requires n >= 2.
mpz_class g_function(const mpz_class& n, const Factored& q);

/// CRT: unique residue mod prod(m_i) congruent to each r_i mod m_i.
/// Throws NotCoprime if two moduli share a factor.
std::pair<mpz_class, mpz_class> crt_combine(
    const std::vector<std::pair<mpz_class, Factored>>& residues);

/// v_p(prod_{i<j}(x_j - x_i)) for every prime p, without forming the product.
/// Throws DuplicateElements on repeated entries; requires |xs| >= 2.
ValuationProfile diff_product_valuations(std::vector<mpz_class> xs);

/// q^alpha | Delta in the generalized sense: alpha * v_p(q) <= v_p(Delta) for
/// every prime p | q, compared exactly in rational arithmetic.
bool generalized_divides(const Factored& q, const RationalExponent& alpha,
                         const ValuationProfile& delta);

/// floor(q^(1/n)), exact.
mpz_class iroot(const mpz_class& q, unsigned long n);

mpz_class pow_mpz(const mpz_class& base, unsigned long e);

} // namespace larsieve
