#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace larsieve {

/// Default working precision in bits for certified reals. Initialized from the
/// LARSIEVE_PRECISION_BITS environment variable (clamped to [64, 16384]),
/// otherwise 192.
mpfr_prec_t default_precision();
void set_default_precision(mpfr_prec_t bits);

/// A real number enclosed by directed-rounding MPFR endpoints [lo, hi].
///
/// Every operation rounds the lower endpoint down and the upper endpoint up,
/// so the true value of any expression built from exact inputs is guaranteed
/// to lie inside the result interval. All bound evaluators in this project
/// derive their validity flags and rounding certificates from these
/// enclosures; no comparison that matters is ever done in bare doubles.
class CertReal {
public:
    CertReal() : CertReal(static_cast<mpfr_prec_t>(0)) {}
    explicit CertReal(mpfr_prec_t prec);
    CertReal(const CertReal& o);
    CertReal(CertReal&& o) noexcept;
    CertReal& operator=(const CertReal& o);
    CertReal& operator=(CertReal&& o) noexcept;
    ~CertReal();

    mpfr_prec_t precision() const { return prec_; }

    // exact constructors (interval still directed if the value needs rounding)
    static CertReal of_si(long v, mpfr_prec_t prec = 0);
    static CertReal of_int(const mpz_class& v, mpfr_prec_t prec = 0);
    static CertReal of_rational(const mpq_class& v, mpfr_prec_t prec = 0);
    static CertReal of_double(double v, mpfr_prec_t prec = 0);
    static CertReal euler_gamma(mpfr_prec_t prec = 0);

    /// Convex hull of two enclosures.
    static CertReal hull(const CertReal& a, const CertReal& b);

    // log of an exact positive integer/rational, fully certified
    static CertReal log_int(const mpz_class& v, mpfr_prec_t prec = 0);
    static CertReal log_rational(const mpq_class& v, mpfr_prec_t prec = 0);

    CertReal operator-() const;
    friend CertReal operator+(const CertReal& a, const CertReal& b);
    friend CertReal operator-(const CertReal& a, const CertReal& b);
    friend CertReal operator*(const CertReal& a, const CertReal& b);
    friend CertReal operator/(const CertReal& a, const CertReal& b); // requires certified sign of b
    CertReal& operator+=(const CertReal& o);
    CertReal& operator-=(const CertReal& o);

    CertReal log() const;  // requires certified lo > 0
    CertReal exp() const;
    CertReal sqrt() const; // requires lo >= 0
    CertReal rootn(unsigned long n) const;
    CertReal pow_ui(unsigned long n) const;
    CertReal mul_ui(unsigned long k) const;
    CertReal div_ui(unsigned long k) const;
    CertReal mul_si(long k) const;

    /// +1 if certainly > 0, -1 if certainly < 0, 0 if the interval straddles zero.
    int certified_sign() const;
    bool certainly_positive() const { return certified_sign() > 0; }
    bool certainly_negative() const { return certified_sign() < 0; }
    bool certainly_lt(const CertReal& o) const;  // hi <  o.lo
    bool certainly_le(const CertReal& o) const;  // hi <= o.lo
    bool certainly_le_d(double x) const;
    bool certainly_ge_d(double x) const;

    double lo_d() const; // rounded down
    double hi_d() const; // rounded up
    double mid_d() const;
    double rad_d() const; // >= true half-width, rounded up
    bool identical(const CertReal& o) const; // bitwise equal endpoints

    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    std::string to_string(int digits = 30) const; // decimal rendering of the midpoint

private:
    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

/// Value + certified absolute error bound, the published form of a constant.
struct PrecisionReal {
    std::string value_str;  // midpoint, decimal
    double value;           // midpoint as double
    double abs_error_bound; // certified: true value within +/- this of the midpoint
};

PrecisionReal to_precision_real(const CertReal& x, int digits = 40);

} // namespace larsieve
