#include "larsieve/arith.hpp"

#include <algorithm>
#include <mutex>

namespace larsieve {

void Factored::check_invariants() const {
    mpz_class prod = 1;
    const mpz_class* prev = nullptr;
    for (const auto& [p, a] : factors) {
        if (a < 1) fail(ErrorKind::OutOfRange, "exponent < 1 in factorization");
        if (prev && !(*prev < p)) fail(ErrorKind::OutOfRange, "primes not strictly increasing");
        if (!is_prime(p)) fail(ErrorKind::OutOfRange, "non-prime factor " + p.get_str());
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), a);
        prod *= pe;
        prev = &p;
    }
    if (prod != value) fail(ErrorKind::OutOfRange, "factor product does not match value");
}

// --- primality ---------------------------------------------------------------

namespace {

bool miller_rabin_witness(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned long r) {
    if (a % n == 0) return false;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true; // a witnesses compositeness
}

} // namespace

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    static const unsigned small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned p : small_primes) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    mpz_class d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 82) {
        // the 12-base set is proven deterministic below 3.317e24 (~2^81.1)
        for (unsigned p : small_primes)
            if (miller_rabin_witness(n, mpz_class(p), d, r)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// --- prime tables ------------------------------------------------------------

namespace {

std::mutex g_table_mutex;
std::vector<std::uint32_t> g_spf;   // g_spf[i] = smallest prime factor of i (0,1 -> 0)
std::vector<std::uint32_t> g_primes;
std::uint32_t g_prime_limit = 0;

void grow_spf_locked(std::uint32_t limit) {
    if (g_spf.size() > limit) return;
    std::uint32_t n = std::max<std::uint32_t>(limit, 1u << 20);
    g_spf.assign(static_cast<size_t>(n) + 1, 0);
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (g_spf[i] == 0) {
            for (std::uint64_t j = i; j <= n; j += i)
                if (g_spf[j] == 0) g_spf[j] = i;
        }
    }
}

} // namespace

const std::vector<std::uint32_t>& spf_table(std::uint32_t limit) {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    grow_spf_locked(limit);
    return g_spf;
}

const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit) {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    if (g_prime_limit < limit) {
        grow_spf_locked(limit);
        g_primes.clear();
        for (std::uint32_t i = 2; i <= limit && i < g_spf.size(); ++i)
            if (g_spf[i] == i) g_primes.push_back(i);
        g_prime_limit = limit;
    }
    return g_primes;
}

// --- factorization -----------------------------------------------------------

namespace {

// Brent's variant of Pollard rho; deterministic (c = 1, 2, ...).
mpz_class rho_factor(const mpz_class& n) {
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1, q = 1;
        unsigned long power = 1, lam = 0;
        mpz_class ys = y;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < power; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < power && d == 1) {
                ys = y;
                unsigned long bound = std::min<unsigned long>(128, power - k);
                for (unsigned long i = 0; i < bound; ++i) {
                    y = (y * y + c) % n;
                    mpz_class diff = x > y ? x - y : y - x;
                    if (diff != 0) q = (q * diff) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += bound;
            }
            power <<= 1;
            lam += 1;
            if (lam > 40) break; // restart with a new c
        }
        if (d == n) {
            // backtrack step by step
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                mpz_class diff = x > ys ? x - ys : ys - x;
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (d != n && d != 1) return d;
    }
}

void factor_rec(const mpz_class& n, std::map<mpz_class, unsigned>& acc) {
    if (n == 1) return;
    if (is_prime(n)) {
        acc[n] += 1;
        return;
    }
    mpz_class d = rho_factor(n);
    factor_rec(d, acc);
    factor_rec(n / d, acc);
}

} // namespace

Factored factored_of(const mpz_class& n) {
    if (n < 1 || n > factor_cap())
        fail(ErrorKind::OutOfRange, "factorization input outside [1, 2^96]: " + n.get_str());
    Factored f;
    f.value = n;
    if (n == 1) return f;

    std::map<mpz_class, unsigned> acc;
    mpz_class m = n;
    if (m < (1u << 20)) {
        const auto& spf = spf_table(1u << 20);
        std::uint32_t v = static_cast<std::uint32_t>(m.get_ui());
        while (v > 1) {
            std::uint32_t p = spf[v];
            acc[p] += 1;
            v /= p;
        }
        m = 1;
    } else {
        // trial division up to 10^6, bailing out early once the cofactor is prime
        const auto& primes = primes_up_to(1000000);
        size_t i = 0;
        for (; i < primes.size(); ++i) {
            std::uint32_t p = primes[i];
            if (mpz_class(p) * p > m) break;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                acc[p] += 1;
                m /= p;
            }
            if ((i & 255u) == 255u && m > 1 && is_prime(m)) break;
        }
        if (m > 1) factor_rec(m, acc);
        m = 1;
    }
    for (const auto& [p, a] : acc) f.factors.emplace_back(p, a);
    return f;
}

Factored factorize(const mpz_class& n) {
    if (n < 2) fail(ErrorKind::OutOfRange, "factorize requires n >= 2");
    return factored_of(n);
}

// --- arithmetic functions ----------------------------------------------------

std::optional<mpz_class> mangoldt_prime(const Factored& q) {
    if (q.value < 2) fail(ErrorKind::OutOfRange, "von Mangoldt requires q >= 2");
    if (q.factors.size() == 1) return q.factors[0].first;
    return std::nullopt;
}

CertReal von_mangoldt(const Factored& q, mpfr_prec_t prec) {
    auto p = mangoldt_prime(q);
    if (!p) return CertReal::of_si(0, prec);
    return CertReal::log_int(*p, prec);
}

unsigned omega(const Factored& q) { return q.omega(); }

mpz_class phi(const Factored& q) {
    mpz_class r = 1;
    for (const auto& [p, a] : q.factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), a - 1);
        r *= pe * (p - 1);
    }
    return r;
}

unsigned vp(const Factored& q, const mpz_class& p) {
    for (const auto& [fp, a] : q.factors)
        if (fp == p) return a;
    return 0;
}

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class g_function(const mpz_class& n, const Factored& q) {
    if (n < 2) fail(ErrorKind::OutOfRange, "g(n,q) requires n >= 2");
    mpz_class result = 1;
    for (const auto& [p, j] : q.factors) {
        mpz_class local;
        if (p >= 3) {
            mpz_class ph = pow_mpz(p, j - 1) * (p - 1);
            mpz_gcd(local.get_mpz_t(), n.get_mpz_t(), ph.get_mpz_t());
        } else if (j == 1) {
            local = 1;
        } else if (j == 2) {
            mpz_gcd_ui(local.get_mpz_t(), n.get_mpz_t(), 2);
        } else {
            mpz_class g2, gph;
            mpz_gcd_ui(g2.get_mpz_t(), n.get_mpz_t(), 2);
            mpz_class ph = pow_mpz(mpz_class(2), j - 2); // phi(2^(j-1))
            mpz_gcd(gph.get_mpz_t(), n.get_mpz_t(), ph.get_mpz_t());
            local = g2 * gph;
        }
        result *= local;
    }
    return result;
}

std::pair<mpz_class, mpz_class> crt_combine(
    const std::vector<std::pair<mpz_class, Factored>>& residues) {
    mpz_class r = 0, m = 1;
    for (const auto& [ri, qi] : residues) {
        const mpz_class& mi = qi.value;
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t());
        if (g != 1)
            fail(ErrorKind::NotCoprime, "moduli share factor " + g.get_str());
        // x = r + m * ((ri - r) * s mod mi)
        mpz_class k = ((ri - r) * s) % mi;
        if (k < 0) k += mi;
        r += m * k;
        m *= mi;
        r %= m;
        if (r < 0) r += m;
    }
    return {r, m};
}

ValuationProfile diff_product_valuations(std::vector<mpz_class> xs) {
    if (xs.size() < 2) fail(ErrorKind::OutOfRange, "need at least two elements");
    std::sort(xs.begin(), xs.end());
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] == xs[i - 1]) fail(ErrorKind::DuplicateElements, "repeated element " + xs[i].get_str());

    ValuationProfile profile;
    for (size_t i = 0; i < xs.size(); ++i) {
        for (size_t j = i + 1; j < xs.size(); ++j) {
            mpz_class d = xs[j] - xs[i];
            Factored f = factored_of(d);
            for (const auto& [p, a] : f.factors) profile[p] += a;
        }
    }
    return profile;
}

bool generalized_divides(const Factored& q, const RationalExponent& alpha,
                         const ValuationProfile& delta) {
    if (q.value < 2) fail(ErrorKind::OutOfRange, "generalized divisibility requires q >= 2");
    for (const auto& [p, a] : q.factors) {
        unsigned long vd = 0;
        auto it = delta.find(p);
        if (it != delta.end()) vd = it->second;
        // alpha * a <= vd, exactly: alpha.num * a <= alpha.den * vd
        mpz_class lhs = alpha.get_num() * a;
        mpz_class rhs = alpha.get_den() * mpz_class(static_cast<unsigned long>(vd));
        if (lhs > rhs) return false;
    }
    return true;
}

mpz_class iroot(const mpz_class& q, unsigned long n) {
    if (q < 0) fail(ErrorKind::DomainError, "iroot of negative value");
    mpz_class r;
    mpz_root(r.get_mpz_t(), q.get_mpz_t(), n);
    return r;
}

} // namespace larsieve
