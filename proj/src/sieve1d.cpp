#include "larsieve/sieve1d.hpp"

#include "larsieve/constants.hpp"

#include <algorithm>
#include <set>

namespace larsieve {

const char* bound_method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::gallagher: return "gallagher";
        case BoundMethod::theorem1: return "theorem1";
        case BoundMethod::theorem1_lambda_variant: return "theorem1_lambda_variant";
        case BoundMethod::corollary1: return "corollary1";
        case BoundMethod::theorem2: return "theorem2";
        case BoundMethod::gaussian: return "gaussian";
    }
    return "unknown";
}

RatioEval ratio_bound_core(const std::vector<RatioTerm>& terms, const CertReal& subtrahend) {
    mpfr_prec_t p = subtrahend.precision();
    CertReal num(p), den(p);
    for (const auto& t : terms) {
        num += t.weight;
        den += t.weight.div_ui(t.nu);
    }
    num -= subtrahend;
    den -= subtrahend;
    RatioEval out{std::move(num), std::move(den), false};
    out.valid = out.denominator.certainly_positive();
    return out;
}

void SieveInstance1D::validate() const {
    if (interval_length <= 0) fail(ErrorKind::OutOfRange, "interval length M must be positive");
    std::set<mpz_class> seen;
    for (const auto& [q, nu] : moduli) {
        if (q.value < 2) fail(ErrorKind::OutOfRange, "modulus must be >= 2");
        if (nu < 1 || mpz_class(static_cast<unsigned long>(nu)) > q.value)
            fail(ErrorKind::OutOfRange, "nu(q) must satisfy 1 <= nu <= q");
        if (!seen.insert(q.value).second)
            fail(ErrorKind::DuplicateElements, "duplicate modulus " + q.value.get_str());
    }
    if (elements) {
        const auto& xs = *elements;
        for (size_t i = 0; i < xs.size(); ++i) {
            if (i > 0 && !(xs[i - 1] < xs[i]))
                fail(ErrorKind::DuplicateElements, "elements must be strictly increasing");
            if (xs[i] < interval_start || mpq_class(xs[i] - interval_start) > interval_length)
                fail(ErrorKind::OutOfRange, "element outside [N, N+M]");
        }
    }
}

unsigned long SieveInstance1D::observed_nu(const Factored& q) const {
    if (!elements) return 0;
    std::set<mpz_class> classes;
    for (const auto& x : *elements) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), q.value.get_mpz_t());
        classes.insert(r);
    }
    return classes.size();
}

namespace {

void fill_ratio_fields(BoundReport& rep, const RatioEval& ev) {
    rep.numerator = ev.numerator.mid_d();
    rep.numerator_err = ev.numerator.rad_d();
    rep.denominator = ev.denominator.mid_d();
    rep.denominator_err = ev.denominator.rad_d();
    rep.valid = ev.valid;
    if (ev.valid) {
        rep.bound = (ev.numerator / ev.denominator).hi_d();
        rep.effective = rep.bound;
    }
}

void check_pairwise_coprime(const SieveInstance1D& inst) {
    for (size_t i = 0; i < inst.moduli.size(); ++i)
        for (size_t j = i + 1; j < inst.moduli.size(); ++j) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), inst.moduli[i].first.value.get_mpz_t(),
                    inst.moduli[j].first.value.get_mpz_t());
            if (g != 1)
                fail(ErrorKind::NotPairwiseCoprime,
                     inst.moduli[i].first.value.get_str() + " and " +
                         inst.moduli[j].first.value.get_str() + " share factor " + g.get_str());
        }
}

// Incremental evaluator of c_s along s = 2, 3, ...: maintains
// a_s = s(s-1) log c_s via a_{s+1} - a_s = (s+1)log(s+1) + (s-1)log(s-1)
//                                          - (2s-1)log(2s-1) - 2s log 2.
class CsWalker {
public:
    explicit CsWalker(mpfr_prec_t prec) : prec_(prec), a_(prec), s_(2) {}

    unsigned long s() const { return s_; }

    CertReal value() const {
        if (s_ == 2) return CertReal::of_si(1, prec_);
        return a_.div_ui(s_).div_ui(s_ - 1).exp();
    }

    void advance_to(unsigned long target) {
        while (s_ < target) {
            unsigned long s = s_;
            a_ += log_ui_cached(s + 1, prec_).mul_ui(s + 1);
            if (s >= 2) a_ += log_ui_cached(s - 1, prec_).mul_ui(s - 1);
            a_ -= log_ui_cached(2 * s - 1, prec_).mul_ui(2 * s - 1);
            a_ -= log_ui_cached(2, prec_).mul_ui(2 * s);
            ++s_;
        }
    }

private:
    mpfr_prec_t prec_;
    CertReal a_;
    unsigned long s_;
};

struct SelfRefWeights {
    CertReal sum_w;    // sum of weights
    CertReal sum_w_nu; // sum of weights / nu
    CertReal log_m;
};

// Largest S not excluded by "denominator(c_S) certified positive and
// S > conservative RHS(c_S)". Returns -1 if no S is ever excluded (no bound).
long self_referential_search(const SelfRefWeights& w, mpfr_prec_t prec, BoundReport& rep) {
    CsWalker walker(prec);
    auto excluded = [&](unsigned long S, CertReal* num_out, CertReal* den_out) {
        walker.advance_to(S);
        CertReal log_c = walker.value().log();
        CertReal num = w.sum_w - w.log_m - log_c;
        CertReal den = w.sum_w_nu - w.log_m - log_c;
        if (num_out) *num_out = num;
        if (den_out) *den_out = den;
        if (!den.certainly_positive()) return false;
        CertReal rhs = num / den;
        return mpfr_cmp_ui(rhs.hi(), S) < 0; // RHS < S: S impossible
    };

    // the exclusion predicate is monotone in S (c_S decreasing), so probe
    // linearly first, then exponentially + bisect for large crossovers
    const unsigned long kLinear = 512;
    unsigned long first_excluded = 0;
    for (unsigned long S = 2; S <= kLinear; ++S) {
        if (excluded(S, nullptr, nullptr)) {
            first_excluded = S;
            break;
        }
    }
    if (first_excluded == 0) {
        unsigned long lo = kLinear, hi = 2 * kLinear;
        const unsigned long kCap = 1ul << 26;
        while (hi <= kCap && !excluded(hi, nullptr, nullptr)) {
            lo = hi;
            hi *= 2;
        }
        if (hi > kCap) return -1;
        // walker only moves forward; re-walk with a fresh one per probe
        while (lo + 1 < hi) {
            unsigned long mid = lo + (hi - lo) / 2;
            CsWalker probe(prec);
            probe.advance_to(mid);
            CertReal log_c = probe.value().log();
            CertReal num = w.sum_w - w.log_m - log_c;
            CertReal den = w.sum_w_nu - w.log_m - log_c;
            bool exc = false;
            if (den.certainly_positive()) {
                CertReal rhs = num / den;
                exc = mpfr_cmp_ui(rhs.hi(), mid) < 0;
            }
            if (exc)
                hi = mid;
            else
                lo = mid;
        }
        first_excluded = hi;
    }

    // certificate terms at the excluding S
    CertReal num(prec), den(prec);
    {
        CsWalker probe(prec);
        probe.advance_to(first_excluded);
        CertReal log_c = probe.value().log();
        num = w.sum_w - w.log_m - log_c;
        den = w.sum_w_nu - w.log_m - log_c;
    }
    rep.numerator = num.mid_d();
    rep.numerator_err = num.rad_d();
    rep.denominator = den.mid_d();
    rep.denominator_err = den.rad_d();
    return static_cast<long>(first_excluded) - 1;
}

BoundReport self_referential_bound(const SieveInstance1D& inst, bool lambda_weights,
                                   mpfr_prec_t prec) {
    inst.validate();
    check_pairwise_coprime(inst);
    mpfr_prec_t p = prec > 0 ? prec : default_precision();

    SelfRefWeights w{CertReal(p), CertReal(p), CertReal::log_rational(inst.interval_length, p)};
    BoundReport rep;
    rep.method = lambda_weights ? BoundMethod::theorem1_lambda_variant : BoundMethod::theorem1;
    for (const auto& [q, nu] : inst.moduli) {
        CertReal weight(p);
        if (lambda_weights) {
            auto base = mangoldt_prime(q);
            if (!base) {
                rep.flagged_moduli.push_back(q.value);
                continue;
            }
            weight = CertReal::log_int(*base, p);
        } else {
            weight = CertReal::log_int(q.value, p);
        }
        w.sum_w += weight;
        w.sum_w_nu += weight.div_ui(nu);
    }

    long s_star = self_referential_search(w, p, rep);
    if (s_star < 0) {
        rep.valid = false;
        rep.note = "no S excluded; instance carries no information";
        return rep;
    }
    rep.valid = true;
    rep.s_star = s_star;
    rep.bound = static_cast<double>(s_star);
    rep.effective = rep.bound;
    return rep;
}

} // namespace

BoundReport gallagher_bound(const SieveInstance1D& inst, mpfr_prec_t prec) {
    inst.validate();
    mpfr_prec_t p = prec > 0 ? prec : default_precision();
    BoundReport rep;
    rep.method = BoundMethod::gallagher;

    std::vector<RatioTerm> terms;
    for (const auto& [q, nu] : inst.moduli) {
        auto base = mangoldt_prime(q);
        if (!base) {
            rep.flagged_moduli.push_back(q.value);
            continue;
        }
        terms.push_back({CertReal::log_int(*base, p), nu});
    }
    RatioEval ev = ratio_bound_core(terms, CertReal::log_rational(inst.interval_length, p));
    fill_ratio_fields(rep, ev);
    return rep;
}

BoundReport theorem1_bound(const SieveInstance1D& inst, mpfr_prec_t prec) {
    return self_referential_bound(inst, false, prec);
}

BoundReport theorem1_lambda_variant(const SieveInstance1D& inst, mpfr_prec_t prec) {
    return self_referential_bound(inst, true, prec);
}

BoundReport corollary1_bound(const SieveInstance1D& inst, mpfr_prec_t prec) {
    inst.validate();
    check_pairwise_coprime(inst);
    mpfr_prec_t p = prec > 0 ? prec : default_precision();
    BoundReport rep;
    rep.method = BoundMethod::corollary1;
    rep.floor_value = 1243;

    std::vector<RatioTerm> terms;
    for (const auto& [q, nu] : inst.moduli) {
        auto base = mangoldt_prime(q);
        if (!base) {
            rep.flagged_moduli.push_back(q.value);
            continue;
        }
        terms.push_back({CertReal::log_int(*base, p), nu});
    }
    // numerator/denominator carry "- log M + 1.38"
    CertReal subtrahend =
        CertReal::log_rational(inst.interval_length, p) - CertReal::of_rational(mpq_class(69, 50), p);
    RatioEval ev = ratio_bound_core(terms, subtrahend);
    fill_ratio_fields(rep, ev);
    if (rep.valid)
        rep.effective = std::max(1243.0, rep.bound);
    else
        rep.note = "denominator not certified positive; only the unconditional S <= 1243 branch";
    return rep;
}

VerifyReport verify_instance(const SieveInstance1D& inst, mpfr_prec_t prec) {
    inst.validate();
    if (!inst.elements || inst.elements->size() < 2)
        fail(ErrorKind::OutOfRange, "verify_instance needs at least two explicit elements");

    VerifyReport out;
    const auto& xs = *inst.elements;
    unsigned long S = xs.size();
    out.element_count = S;

    ValuationProfile profile = diff_product_valuations(xs);
    for (const auto& [q, nu_declared] : inst.moduli) {
        unsigned long nu_obs = inst.observed_nu(q);
        if (nu_obs > nu_declared)
            fail(ErrorKind::InstanceInconsistent,
                 "declared nu(" + q.value.get_str() + ") = " + std::to_string(nu_declared) +
                     " smaller than observed " + std::to_string(nu_obs));
        DivisibilityCheck chk;
        chk.q = q.value;
        chk.nu_observed = nu_obs;
        // alpha = S^2/(2 nu) - S/2 as an exact rational
        chk.alpha = mpq_class(mpz_class(static_cast<unsigned long>(S)) * S -
                                  mpz_class(static_cast<unsigned long>(S)) * nu_obs,
                              2 * mpz_class(static_cast<unsigned long>(nu_obs)));
        chk.alpha.canonicalize();
        chk.applicable = chk.alpha > 0;
        chk.holds = !chk.applicable || generalized_divides(q, chk.alpha, profile);
        if (!chk.holds) out.divisibility_ok = false;
        out.divisibility.push_back(std::move(chk));
    }

    out.bounds.push_back(gallagher_bound(inst, prec));
    out.bounds.push_back(theorem1_bound(inst, prec));
    out.bounds.push_back(theorem1_lambda_variant(inst, prec));
    out.bounds.push_back(corollary1_bound(inst, prec));
    for (const auto& b : out.bounds) {
        if (!b.valid) continue;
        double count = static_cast<double>(S);
        bool ok = b.method == BoundMethod::corollary1
                      ? (S <= 1243 || count < b.bound)
                      : count <= b.usable_bound();
        if (!ok) out.bounds_ok = false;
    }
    return out;
}

} // namespace larsieve
