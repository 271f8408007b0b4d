#include "larsieve/certreal.hpp"

#include "larsieve/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>

namespace larsieve {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::NotPairwiseCoprime: return "NotPairwiseCoprime";
        case ErrorKind::DuplicateElements: return "DuplicateElements";
        case ErrorKind::PrecisionInsufficient: return "PrecisionInsufficient";
        case ErrorKind::InstanceInconsistent: return "InstanceInconsistent";
        case ErrorKind::ContentNotCoprime: return "ContentNotCoprime";
        case ErrorKind::DegenerateModP: return "DegenerateModP";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::NotRoots: return "NotRoots";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidHypothesis: return "InvalidHypothesis";
        case ErrorKind::DegenerateRegion: return "DegenerateRegion";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Error";
}

namespace {

std::atomic<long> g_default_prec{0};

mpfr_prec_t clamp_prec(long bits) {
    return static_cast<mpfr_prec_t>(std::min(16384L, std::max(64L, bits)));
}

} // namespace

mpfr_prec_t default_precision() {
    long p = g_default_prec.load(std::memory_order_relaxed);
    if (p == 0) {
        long bits = 192;
        if (const char* env = std::getenv("LARSIEVE_PRECISION_BITS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v > 0) bits = v;
        }
        p = clamp_prec(bits);
        g_default_prec.store(p, std::memory_order_relaxed);
    }
    return static_cast<mpfr_prec_t>(p);
}

void set_default_precision(mpfr_prec_t bits) {
    g_default_prec.store(clamp_prec(bits), std::memory_order_relaxed);
}

static mpfr_prec_t resolve(mpfr_prec_t prec) { return prec > 0 ? prec : default_precision(); }

CertReal::CertReal(mpfr_prec_t prec) : prec_(resolve(prec)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

CertReal::CertReal(const CertReal& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

CertReal::CertReal(CertReal&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

CertReal& CertReal::operator=(const CertReal& o) {
    if (this == &o) return *this;
    if (prec_ != o.prec_) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

CertReal& CertReal::operator=(CertReal&& o) noexcept {
    if (this == &o) return *this;
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

CertReal::~CertReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

CertReal CertReal::of_si(long v, mpfr_prec_t prec) {
    CertReal r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

CertReal CertReal::of_int(const mpz_class& v, mpfr_prec_t prec) {
    CertReal r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

CertReal CertReal::of_rational(const mpq_class& v, mpfr_prec_t prec) {
    CertReal r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

CertReal CertReal::of_double(double v, mpfr_prec_t prec) {
    CertReal r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

CertReal CertReal::euler_gamma(mpfr_prec_t prec) {
    CertReal r(prec);
    mpfr_const_euler(r.lo_, MPFR_RNDD);
    mpfr_const_euler(r.hi_, MPFR_RNDU);
    return r;
}

CertReal CertReal::hull(const CertReal& a, const CertReal& b) {
    CertReal r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

CertReal CertReal::log_int(const mpz_class& v, mpfr_prec_t prec) {
    return of_int(v, prec).log();
}

CertReal CertReal::log_rational(const mpq_class& v, mpfr_prec_t prec) {
    return of_rational(v, prec).log();
}

CertReal CertReal::operator-() const {
    CertReal r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

CertReal operator+(const CertReal& a, const CertReal& b) {
    CertReal r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

CertReal operator-(const CertReal& a, const CertReal& b) {
    CertReal r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

CertReal& CertReal::operator+=(const CertReal& o) {
    mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    return *this;
}

CertReal& CertReal::operator-=(const CertReal& o) {
    mpfr_sub(lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
    return *this;
}

CertReal operator*(const CertReal& a, const CertReal& b) {
    CertReal r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    // lower endpoint: min of the four products rounded down
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // upper endpoint: max of the four products rounded up
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

CertReal operator/(const CertReal& a, const CertReal& b) {
    if (b.certified_sign() == 0)
        fail(ErrorKind::PrecisionInsufficient, "division by interval containing zero");
    CertReal r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

CertReal CertReal::log() const {
    if (mpfr_sgn(lo_) <= 0)
        fail(ErrorKind::PrecisionInsufficient, "log of interval not certified positive");
    CertReal r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertReal CertReal::exp() const {
    CertReal r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertReal CertReal::sqrt() const {
    if (mpfr_sgn(lo_) < 0) fail(ErrorKind::DomainError, "sqrt of negative interval");
    CertReal r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertReal CertReal::rootn(unsigned long n) const {
    if (mpfr_sgn(lo_) < 0) fail(ErrorKind::DomainError, "rootn of negative interval");
    CertReal r(prec_);
    mpfr_rootn_ui(r.lo_, lo_, n, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, hi_, n, MPFR_RNDU);
    return r;
}

CertReal CertReal::pow_ui(unsigned long n) const {
    if (mpfr_sgn(lo_) < 0) fail(ErrorKind::DomainError, "pow_ui needs nonnegative interval");
    CertReal r(prec_);
    mpfr_pow_ui(r.lo_, lo_, n, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, n, MPFR_RNDU);
    return r;
}

CertReal CertReal::mul_ui(unsigned long k) const {
    CertReal r(prec_);
    mpfr_mul_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_mul_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

CertReal CertReal::div_ui(unsigned long k) const {
    if (k == 0) fail(ErrorKind::DomainError, "division by zero");
    CertReal r(prec_);
    mpfr_div_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_div_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

CertReal CertReal::mul_si(long k) const {
    CertReal r(prec_);
    if (k >= 0) {
        mpfr_mul_si(r.lo_, lo_, k, MPFR_RNDD);
        mpfr_mul_si(r.hi_, hi_, k, MPFR_RNDU);
    } else {
        mpfr_mul_si(r.lo_, hi_, k, MPFR_RNDD);
        mpfr_mul_si(r.hi_, lo_, k, MPFR_RNDU);
    }
    return r;
}

int CertReal::certified_sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
}

bool CertReal::certainly_lt(const CertReal& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool CertReal::certainly_le(const CertReal& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }

bool CertReal::certainly_le_d(double x) const { return mpfr_cmp_d(hi_, x) <= 0; }
bool CertReal::certainly_ge_d(double x) const { return mpfr_cmp_d(lo_, x) >= 0; }

double CertReal::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double CertReal::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double CertReal::mid_d() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double v = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return v;
}

double CertReal::rad_d() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    // one ulp of slack for the midpoint rounding
    mpfr_nextabove(w);
    double v = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return v;
}

bool CertReal::identical(const CertReal& o) const {
    return mpfr_equal_p(lo_, o.lo_) && mpfr_equal_p(hi_, o.hi_);
}

std::string CertReal::to_string(int digits) const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, m);
    std::string out(s ? s : "");
    mpfr_free_str(s);
    mpfr_clear(m);
    return out;
}

PrecisionReal to_precision_real(const CertReal& x, int digits) {
    PrecisionReal r;
    r.value_str = x.to_string(digits);
    r.value = x.mid_d();
    r.abs_error_bound = x.rad_d();
    return r;
}

} // namespace larsieve
