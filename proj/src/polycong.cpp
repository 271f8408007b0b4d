#include "larsieve/polycong.hpp"

#include <algorithm>
#include <set>

namespace larsieve {

IntPoly::IntPoly(std::vector<mpz_class> c) : coeffs(std::move(c)) {
    if (coeffs.size() < 2) fail(ErrorKind::OutOfRange, "polynomial degree must be >= 1");
    if (coeffs.back() == 0) fail(ErrorKind::OutOfRange, "leading coefficient must be nonzero");
}

IntPoly IntPoly::power_plus_d(unsigned n, const mpz_class& d) {
    std::vector<mpz_class> c(n + 1, mpz_class(0));
    c[0] = d;
    c[n] = 1;
    return IntPoly(std::move(c));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& a : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    return g;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

namespace {

mpz_class eval_mod_raw(const std::vector<mpz_class>& coeffs, const mpz_class& x,
                       const mpz_class& m) {
    mpz_class acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        acc = acc * x + coeffs[i];
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
    }
    return acc;
}

} // namespace

std::vector<mpz_class> IntPoly::derivative_coeffs() const {
    std::vector<mpz_class> c;
    for (size_t i = 1; i < coeffs.size(); ++i) c.push_back(coeffs[i] * static_cast<long>(i));
    return c;
}

mpz_class IntPoly::eval_mod(const mpz_class& x, const mpz_class& m) const {
    return eval_mod_raw(coeffs, x, m);
}

bool IntPoly::content_coprime_to(const mpz_class& q) const {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), content().get_mpz_t(), q.get_mpz_t());
    return g == 1;
}

std::string IntPoly::to_string() const {
    std::string s;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) s += ',';
        s += coeffs[i].get_str();
    }
    return s;
}

bool IntervalI::admissible_real(const mpz_class& q, unsigned n) const {
    if (point_count <= 1) return true;
    mpz_class span(static_cast<unsigned long>(point_count - 1));
    return pow_mpz(span, n) <= q;
}

bool IntervalI::admissible_points(const mpz_class& q, unsigned n) const {
    if (point_count == 0) return true;
    mpz_class pts(static_cast<unsigned long>(point_count));
    return pow_mpz(pts, n) <= q;
}

unsigned long max_admissible_points(const mpz_class& q, unsigned n) {
    return iroot(q, n).get_ui() + 1;
}

namespace {

void verify_roots(const Factored& q, const std::vector<mpz_class>& rs, const IntPoly& P) {
    for (const auto& r : rs) {
        if (r < 0 || r >= q.value) fail(ErrorKind::OutOfRange, "root outside [0, q)");
        if (P.eval_mod(r, q.value) != 0)
            fail(ErrorKind::NotRoots, r.get_str() + " does not solve P = 0 mod " + q.value.get_str());
    }
}

void sort_unique(std::vector<mpz_class>& rs) {
    std::sort(rs.begin(), rs.end());
    if (std::adjacent_find(rs.begin(), rs.end()) != rs.end())
        fail(ErrorKind::DuplicateElements, "duplicate root");
}

} // namespace

SolutionSet::SolutionSet(Factored q, std::vector<mpz_class> rs, const IntPoly& P)
    : modulus(std::move(q)), roots(std::move(rs)) {
    sort_unique(roots);
    verify_roots(modulus, roots, P);
}

SolutionSet::SolutionSet(Factored q, std::vector<mpz_class> rs)
    : modulus(std::move(q)), roots(std::move(rs)) {
    sort_unique(roots);
}

// --- fast scans ---------------------------------------------------------------

std::vector<std::uint32_t> roots_mod_small(const std::vector<std::uint32_t>& c, std::uint32_t q) {
    std::vector<std::uint32_t> out;
    const std::uint64_t m = q;
    for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t acc = 0;
        for (size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % m;
        if (acc == 0) out.push_back(static_cast<std::uint32_t>(x));
    }
    return out;
}

std::vector<std::uint32_t> roots_mod_small(const IntPoly& P, std::uint32_t q) {
    if (q >= (1u << 31)) fail(ErrorKind::CapExceeded, "roots_mod_small requires q < 2^31");
    std::vector<std::uint32_t> c(P.coeffs.size());
    mpz_class m(static_cast<unsigned long>(q)), r;
    for (size_t i = 0; i < P.coeffs.size(); ++i) {
        mpz_fdiv_r(r.get_mpz_t(), P.coeffs[i].get_mpz_t(), m.get_mpz_t());
        c[i] = static_cast<std::uint32_t>(r.get_ui());
    }
    return roots_mod_small(c, q);
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 acc = 1, b = base % m;
    while (e) {
        if (e & 1) acc = (acc * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

unsigned long max_window_count(const std::vector<std::uint32_t>& roots, std::uint32_t q,
                               std::uint64_t span_limit) {
    if (roots.empty()) return 0;
    size_t R = roots.size();
    if (span_limit >= q) {
        // [a, a+L] with L = kq + r holds k full periods plus a closed window of span r
        std::uint64_t k = span_limit / q;
        return k * R + max_window_count(roots, q, span_limit % q);
    }
    unsigned long best = 0;
    size_t j = 0;
    for (size_t i = 0; i < R; ++i) {
        if (j < i) j = i;
        while (j < i + R) {
            std::uint64_t rj = roots[j % R] + (j >= R ? static_cast<std::uint64_t>(q) : 0);
            if (rj - roots[i] <= span_limit)
                ++j;
            else
                break;
        }
        best = std::max<unsigned long>(best, j - i);
    }
    return best;
}

// --- root finding -------------------------------------------------------------

SolutionSet roots_mod_prime(const IntPoly& P, const mpz_class& p) {
    if (p > 10000000) fail(ErrorKind::CapExceeded, "prime exceeds the 10^7 scan cap");
    if (!is_prime(p)) fail(ErrorKind::OutOfRange, "modulus is not prime");
    bool all_zero = true;
    for (const auto& a : P.coeffs)
        if (!mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
            all_zero = false;
            break;
        }
    if (all_zero) fail(ErrorKind::DegenerateModP, "polynomial vanishes identically mod p");
    auto rs32 = roots_mod_small(P, static_cast<std::uint32_t>(p.get_ui()));
    std::vector<mpz_class> rs(rs32.begin(), rs32.end());
    return SolutionSet(factored_of(p), std::move(rs), P);
}

SolutionSet hensel_lift(const IntPoly& P, const mpz_class& p, unsigned alpha,
                        const HenselCaps& caps) {
    mpz_class pe = pow_mpz(p, alpha);
    if (pe > caps.prime_power_cap)
        fail(ErrorKind::CapExceeded, "p^alpha exceeds cap " + caps.prime_power_cap.get_str());
    SolutionSet base = roots_mod_prime(P, p);
    std::vector<mpz_class> cur = base.roots;
    std::vector<mpz_class> dP = P.derivative_coeffs();

    mpz_class mod = p;
    for (unsigned level = 1; level < alpha; ++level) {
        mpz_class next = mod * p;
        std::vector<mpz_class> lifted;
        for (const auto& r : cur) {
            mpz_class A = P.eval_mod(r, next);       // = 0 mod `mod` already
            mpz_class B = eval_mod_raw(dP, r, p);
            if (B != 0) {
                // unique lift: r - A * B^{-1}, adjusted mod `next`
                mpz_class Binv;
                mpz_invert(Binv.get_mpz_t(), B.get_mpz_t(), p.get_mpz_t());
                mpz_class t = ((-(A / mod)) * Binv) % p;
                if (t < 0) t += p;
                lifted.push_back(r + t * mod);
            } else if (A == 0) {
                for (mpz_class t = 0; t < p; ++t) lifted.push_back(r + t * mod);
            }
            if (lifted.size() > caps.width_cap)
                fail(ErrorKind::CapExceeded, "singular Hensel chain width exceeds cap");
        }
        cur = std::move(lifted);
        mod = next;
    }
    return SolutionSet(factored_of(pe), std::move(cur), P);
}

SolutionSet solve_mod_q(const IntPoly& P, const Factored& q, const HenselCaps& caps) {
    if (!P.content_coprime_to(q.value))
        fail(ErrorKind::ContentNotCoprime, "gcd(coefficients, q) != 1");
    std::vector<mpz_class> sols{0};
    mpz_class mod = 1;
    for (const auto& [p, a] : q.factors) {
        SolutionSet local = hensel_lift(P, p, a, caps);
        mpz_class pe = local.modulus.value;
        std::vector<mpz_class> merged;
        merged.reserve(sols.size() * local.roots.size());
        // CRT each pair: x = s mod `mod`, x = r mod pe
        mpz_class minv;
        if (mod == 1) {
            merged = local.roots;
        } else {
            mpz_invert(minv.get_mpz_t(), mod.get_mpz_t(), pe.get_mpz_t());
            for (const auto& s : sols)
                for (const auto& r : local.roots) {
                    mpz_class k = ((r - s) * minv) % pe;
                    if (k < 0) k += pe;
                    merged.push_back(s + mod * k);
                }
        }
        sols = std::move(merged);
        mod *= pe;
    }
    return SolutionSet(q, std::move(sols), P);
}

IntervalCount count_in_interval(const IntPoly& P, const Factored& q, const IntervalI& I,
                                const HenselCaps& caps) {
    IntervalCount out;
    if (I.point_count == 0) return out;
    SolutionSet sols = solve_mod_q(P, q, caps);
    mpz_class lo = I.start, hi = I.end();
    for (const auto& r : sols.roots) {
        // first x >= lo with x = r (mod q)
        mpz_class k, diff = lo - r;
        mpz_cdiv_q(k.get_mpz_t(), diff.get_mpz_t(), q.value.get_mpz_t());
        for (mpz_class x = r + k * q.value; x <= hi; x += q.value) out.witnesses.push_back(x);
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    out.count = out.witnesses.size();
    return out;
}

bool cor2_holds(unsigned long W, unsigned n, unsigned omega_q, const mpz_class& q,
                const mpz_class& span_L) {
    mpz_class B(static_cast<unsigned long>(thm3_rhs(n, omega_q)));
    mpz_class Wz(static_cast<unsigned long>(W));
    if (Wz <= B) return true;
    // W <= B(L/q^{1/n} + 1)  <=>  (W-B)^n q <= B^n L^n   (both sides nonnegative)
    mpz_class lhs = pow_mpz(Wz - B, n) * q;
    mpz_class rhs = pow_mpz(B * span_L, n);
    return lhs <= rhs;
}

CertReal remark_log_rhs(const mpz_class& q, unsigned n, mpfr_prec_t prec) {
    if (q < 3) fail(ErrorKind::DomainError, "remark bound requires q >= 3");
    mpfr_prec_t p = prec > 0 ? prec : default_precision();
    CertReal logq = CertReal::log_int(q, p);
    CertReal log4 = CertReal::log_int(mpz_class(4), p);
    CertReal first = logq.mul_ui(n - 1).div_ui(n) / log4; // (1 - 1/n) log q / log 4
    CertReal second = logq.log() / log4;
    return first + second + CertReal::of_si(3, p);
}

bool verify_lemma4(const IntPoly& P, const Factored& q, const std::vector<mpz_class>& roots) {
    unsigned n = P.degree();
    if (roots.size() <= n)
        fail(ErrorKind::HypothesisViolated, "need at least n+1 roots for Lemma 4");
    for (const auto& x : roots)
        if (P.eval_mod(x, q.value) != 0)
            fail(ErrorKind::NotRoots, x.get_str() + " is not a root mod " + q.value.get_str());
    unsigned long s = roots.size();
    RationalExponent alpha(mpz_class(static_cast<unsigned long>(s)) * s -
                               mpz_class(static_cast<unsigned long>(s)) * n,
                           2 * mpz_class(static_cast<unsigned long>(n)));
    alpha.canonicalize();
    ValuationProfile profile = diff_product_valuations(roots);
    return generalized_divides(q, alpha, profile);
}

double svk_ratio(const IntPoly& P, const Factored& q, const HenselCaps& caps) {
    SolutionSet sols = solve_mod_q(P, q, caps);
    unsigned n = P.degree();
    double lq = std::log(mpz_get_d(q.value.get_mpz_t()));
    return static_cast<double>(sols.roots.size()) / std::exp((1.0 - 1.0 / n) * lq);
}

} // namespace larsieve
