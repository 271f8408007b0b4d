#include "larsieve/constants.hpp"

#include "larsieve/arith.hpp"
#include "larsieve/error.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace larsieve {

// --- shared log table ---------------------------------------------------------

namespace {

std::mutex g_log_mutex;
std::vector<CertReal> g_log_table; // index k -> log k at the precision it was built
mpfr_prec_t g_log_prec = 0;
constexpr unsigned long kLogCacheMax = 1u << 21;

} // namespace

CertReal log_ui_cached(unsigned long k, mpfr_prec_t prec) {
    mpfr_prec_t want = prec > 0 ? prec : default_precision();
    if (k >= kLogCacheMax) return CertReal::log_int(mpz_class(static_cast<unsigned long>(k)), want);
    std::lock_guard<std::mutex> lock(g_log_mutex);
    if (g_log_prec < want) {
        g_log_table.clear();
        g_log_prec = want;
    }
    if (g_log_table.size() <= k) {
        size_t old = g_log_table.size();
        size_t grow = std::max<size_t>(k + 1, std::max<size_t>(2 * old, 256));
        g_log_table.resize(grow, CertReal(g_log_prec));
        for (size_t i = std::max<size_t>(old, 1); i < grow; ++i)
            g_log_table[i] = CertReal::log_int(mpz_class(static_cast<unsigned long>(i)), g_log_prec);
    }
    return g_log_table[k];
}

// --- c_s ------------------------------------------------------------------------

CertReal c_s(unsigned long s, mpfr_prec_t prec) {
    if (s < 2 || s > 1000000ul) fail(ErrorKind::OutOfRange, "c_s requires 2 <= s <= 10^6");
    mpfr_prec_t p = prec > 0 ? prec : default_precision();
    bool cached = (2 * s <= 4096);
    CertReal sum(p); // = 0
    for (unsigned long j = 1; j <= s; ++j) {
        // 2(j-1)log(j-1) + j log j - (s+j-2) log(s+j-2), with 0 log 0 = 0
        if (j >= 2) {
            CertReal lg = cached ? log_ui_cached(j - 1, p)
                                 : CertReal::log_int(mpz_class(j - 1), p);
            sum += lg.mul_ui(2 * (j - 1));
        }
        if (j >= 2) { // log 1 = 0 for j = 1
            CertReal lg = cached ? log_ui_cached(j, p) : CertReal::log_int(mpz_class(j), p);
            sum += lg.mul_ui(j);
        }
        unsigned long t = s + j - 2;
        if (t >= 2) {
            CertReal lg = cached ? log_ui_cached(t, p) : CertReal::log_int(mpz_class(t), p);
            sum -= lg.mul_ui(t);
        }
    }
    sum = sum.div_ui(s).div_ui(s - 1);
    return sum.exp();
}

// --- Lemma 1 oracle --------------------------------------------------------------

namespace {

double pairwise_product(const std::vector<double>& xi) {
    double prod = 1.0;
    for (size_t i = 0; i < xi.size(); ++i)
        for (size_t j = i + 1; j < xi.size(); ++j) prod *= xi[j] - xi[i];
    return prod;
}

// enumerate interior coordinates over per-coordinate grids, keeping xi sorted
void grid_search(const std::vector<std::vector<double>>& grids, std::vector<double>& xi,
                 size_t idx, double lower, std::vector<double>& best_pts, double& best_prod) {
    size_t k = grids.size();
    if (idx == k) {
        double prod = pairwise_product(xi);
        if (prod > best_prod ||
            (prod == best_prod && std::lexicographical_compare(xi.begin(), xi.end(),
                                                               best_pts.begin(), best_pts.end()))) {
            best_prod = prod;
            best_pts = xi;
        }
        return;
    }
    for (double v : grids[idx]) {
        if (v < lower || v > 1.0) continue;
        xi[idx + 1] = v;
        grid_search(grids, xi, idx + 1, v, best_pts, best_prod);
    }
}

} // namespace

FeketeConfig lemma1_oracle(unsigned s, unsigned grid_refinements) {
    if (s < 2 || s > 7) fail(ErrorKind::OutOfRange, "lemma1_oracle supports 2 <= s <= 7");
    FeketeConfig cfg;
    cfg.s = s;
    if (s == 2) {
        cfg.points = {0.0, 1.0};
        cfg.product = 1.0;
        return cfg;
    }
    size_t interior = s - 2;
    std::vector<double> best(s);
    best.front() = 0.0;
    best.back() = 1.0;
    double best_prod = -1.0;

    double step = 0.1;
    {
        std::vector<double> grid;
        for (int i = 0; i <= 10; ++i) grid.push_back(i * step);
        std::vector<std::vector<double>> grids(interior, grid);
        std::vector<double> xi(s);
        xi.front() = 0.0;
        xi.back() = 1.0;
        grid_search(grids, xi, 0, 0.0, best, best_prod);
    }
    for (unsigned round = 0; round < grid_refinements; ++round) {
        double fine = step / 10.0;
        std::vector<std::vector<double>> grids(interior);
        for (size_t c = 0; c < interior; ++c) {
            double center = best[c + 1];
            for (int i = -10; i <= 10; ++i) {
                double v = center + i * fine;
                if (v >= 0.0 && v <= 1.0) grids[c].push_back(v);
            }
        }
        std::vector<double> xi(s);
        xi.front() = 0.0;
        xi.back() = 1.0;
        std::vector<double> cand = best;
        double cand_prod = best_prod;
        grid_search(grids, xi, 0, 0.0, cand, cand_prod);
        best = cand;
        best_prod = cand_prod;
        step = fine;
    }
    cfg.points = best;
    cfg.product = best_prod;
    return cfg;
}

// --- Lemma 2 ---------------------------------------------------------------------

namespace {

CertReal lemma2_rhs(unsigned long s, mpfr_prec_t p) {
    // (1/4) exp((s log(2s) + (1/4) log s) / (s(s-1)))
    CertReal num = log_ui_cached(2 * s, p).mul_ui(s) + log_ui_cached(s, p).div_ui(4);
    CertReal expo = num.div_ui(s).div_ui(s - 1);
    return expo.exp().div_ui(4);
}

} // namespace

std::vector<Lemma2Row> lemma2_check(unsigned long s_max, mpfr_prec_t prec) {
    if (s_max < 2) fail(ErrorKind::OutOfRange, "lemma2_check requires s_max >= 2");
    std::vector<Lemma2Row> rows;
    rows.reserve(s_max - 1);
    for (unsigned long s = 2; s <= s_max; ++s) {
        mpfr_prec_t p = prec > 0 ? prec : default_precision();
        for (int attempt = 0;; ++attempt) {
            CertReal lhs = c_s(s, p);
            CertReal rhs = lemma2_rhs(s, p);
            if (lhs.certainly_lt(rhs)) {
                CertReal margin = rhs - lhs;
                rows.push_back({static_cast<unsigned>(s), lhs.mid_d(), rhs.mid_d(), true,
                                margin.lo_d()});
                break;
            }
            if (rhs.certainly_le(lhs)) {
                rows.push_back({static_cast<unsigned>(s), lhs.mid_d(), rhs.mid_d(), false, 0.0});
                break;
            }
            if (attempt >= 3)
                fail(ErrorKind::PrecisionInsufficient,
                     "lemma2 intervals overlap at s = " + std::to_string(s));
            p *= 2;
        }
    }
    return rows;
}

// --- remark constant ---------------------------------------------------------------

RemarkConstantResult remark_constant(std::uint32_t prime_cutoff, mpfr_prec_t prec) {
    if (prime_cutoff < 1000) fail(ErrorKind::OutOfRange, "prime cutoff must be >= 10^3");
    mpfr_prec_t p = prec > 0 ? prec : default_precision();

    CertReal sum(p);
    const auto& primes = primes_up_to(prime_cutoff);
    for (std::uint32_t q : primes) {
        if (q < 3) continue;
        mpz_class den = mpz_class(static_cast<unsigned long>(q)) * q - 1;
        CertReal term = CertReal::log_int(mpz_class(static_cast<unsigned long>(q)), p) /
                        CertReal::of_int(den, p);
        sum += term;
    }
    // tail: sum_{p > N} log p/(p^2-1) <= int_N^inf log x/(x^2-1) dx
    //       <= N^2/(N^2-1) * (log N + 1)/N  (the integrand is decreasing for x >= 2)
    mpz_class N(static_cast<unsigned long>(prime_cutoff));
    CertReal Nr = CertReal::of_int(N, p);
    CertReal ratio = (Nr * Nr) / (Nr * Nr - CertReal::of_si(1, p));
    CertReal tail = ratio * (CertReal::log_int(N, p) + CertReal::of_si(1, p)) / Nr;
    // the true tail lies in [0, tail.hi]
    CertReal tail_iv = CertReal::hull(CertReal(p), tail);

    CertReal total = CertReal::of_si(2, p) - CertReal::log_int(mpz_class(2), p) +
                     CertReal::euler_gamma(p).mul_ui(2) + (sum + tail_iv).mul_ui(4);

    RemarkConstantResult out{total, tail, false};
    out.certified_le_3817 = total.certainly_le(
        CertReal::of_rational(mpq_class(3817, 1000), p));
    return out;
}

} // namespace larsieve
