#include "larsieve/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace larsieve {

mpz_class det_integer(Mat a) {
    size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) fail(ErrorKind::DimensionMismatch, "determinant needs a square matrix");
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : mpz_class(-a[n - 1][n - 1]);
}

mpq_class det_rational(std::vector<std::vector<mpq_class>> a) {
    size_t n = a.size();
    mpq_class det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            mpq_class f = a[i][k] / a[k][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

mpz_class D_of(const std::vector<Vec>& points) {
    if (points.empty()) fail(ErrorKind::DimensionMismatch, "no points");
    size_t m = points[0].size();
    if (points.size() != m + 1)
        fail(ErrorKind::DimensionMismatch, "D needs exactly m+1 points in dimension m");
    Mat a(m + 1, Vec(m + 1));
    for (size_t j = 0; j <= m; ++j) {
        if (points[j].size() != m) fail(ErrorKind::DimensionMismatch, "point dimension mismatch");
        a[0][j] = 1;
        for (size_t i = 0; i < m; ++i) a[i + 1][j] = points[j][i];
    }
    return abs(det_integer(std::move(a)));
}

// --- Hermite normal form --------------------------------------------------------

LatticeBasis LatticeBasis::from_generators(const std::vector<Vec>& gens) {
    LatticeBasis out;
    size_t m = gens.size();
    if (m == 0) fail(ErrorKind::DimensionMismatch, "empty basis");
    for (const auto& g : gens)
        if (g.size() != m) fail(ErrorKind::DimensionMismatch, "basis must be m x m");
    out.m_ = static_cast<int>(m);

    // columns = generators
    std::vector<Vec> cols(m, Vec(m));
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < m; ++i) cols[j][i] = gens[j][i];

    auto col_axpy = [&](size_t dst, size_t src, const mpz_class& k) {
        for (size_t i = 0; i < m; ++i) cols[dst][i] -= k * cols[src][i];
    };

    for (size_t i = 0; i < m; ++i) {
        // eliminate row i across columns i..m-1 down to a single pivot
        for (;;) {
            size_t best = m;
            for (size_t j = i; j < m; ++j) {
                if (cols[j][i] == 0) continue;
                if (best == m || abs(cols[j][i]) < abs(cols[best][i])) best = j;
            }
            if (best == m) fail(ErrorKind::DegenerateRegion, "basis is singular");
            if (best != i) std::swap(cols[i], cols[best]);
            bool clean = true;
            for (size_t j = i + 1; j < m; ++j) {
                if (cols[j][i] == 0) continue;
                mpz_class k;
                mpz_fdiv_q(k.get_mpz_t(), cols[j][i].get_mpz_t(), cols[i][i].get_mpz_t());
                col_axpy(j, i, k);
                if (cols[j][i] != 0) clean = false;
            }
            if (clean) break;
        }
        if (cols[i][i] < 0)
            for (size_t r = 0; r < m; ++r) cols[i][r] = -cols[i][r];
        // reduce the row-i entries of the already-fixed columns into [0, pivot)
        for (size_t j = 0; j < i; ++j) {
            mpz_class k;
            mpz_fdiv_q(k.get_mpz_t(), cols[j][i].get_mpz_t(), cols[i][i].get_mpz_t());
            col_axpy(j, i, k);
        }
    }
    out.hnf_ = std::move(cols);
    out.det_ = 1;
    for (size_t i = 0; i < m; ++i) out.det_ *= out.hnf_[i][i];
    return out;
}

Vec LatticeBasis::reduce(const Vec& point) const {
    if (static_cast<int>(point.size()) != m_)
        fail(ErrorKind::DimensionMismatch, "point dimension mismatch");
    Vec r = point;
    for (int i = 0; i < m_; ++i) {
        mpz_class k;
        mpz_fdiv_q(k.get_mpz_t(), r[i].get_mpz_t(), hnf_[i][i].get_mpz_t());
        for (int t = i; t < m_; ++t) r[t] -= k * hnf_[i][t];
    }
    return r;
}

bool LatticeBasis::contains(const Vec& v) const {
    if (static_cast<int>(v.size()) != m_)
        fail(ErrorKind::DimensionMismatch, "point dimension mismatch");
    Vec r = v;
    for (int i = 0; i < m_; ++i) {
        if (!mpz_divisible_p(r[i].get_mpz_t(), hnf_[i][i].get_mpz_t())) return false;
        mpz_class k = r[i] / hnf_[i][i];
        for (int t = i; t < m_; ++t) r[t] -= k * hnf_[i][t];
    }
    for (const auto& x : r)
        if (x != 0) return false;
    return true;
}

std::string LatticeBasis::class_label(const Vec& point) const {
    Vec r = reduce(point);
    std::string s;
    for (size_t i = 0; i < r.size(); ++i) {
        if (i) s += ',';
        s += r[i].get_str();
    }
    return s;
}

// --- regions and t(Omega) --------------------------------------------------------

mpq_class region_volume(const Region& region) {
    if (region.explicit_t) fail(ErrorKind::DegenerateRegion, "explicit-t region has no edge matrix");
    mpq_class d = det_rational(region.edges);
    if (d < 0) d = -d;
    if (d == 0) fail(ErrorKind::DegenerateRegion, "parallelepiped has zero volume");
    return d;
}

std::optional<mpq_class> t_exact(const Region& region, int m) {
    if (region.explicit_t) return region.t_value;
    static const long coeff[] = {0, 1, 1, 2, 3}; // t(m) / Vol for m = 1..4
    if (m < 1 || m > 4) return std::nullopt;
    return mpq_class(coeff[m]) * region_volume(region);
}

CertReal t_upper_bound(const Region& region, int m, mpfr_prec_t prec) {
    mpfr_prec_t p = prec > 0 ? prec : default_precision();
    if (region.explicit_t) return CertReal::of_rational(region.t_value, p);
    mpq_class vol = region_volume(region);
    // (m+2)^((m+1)/2) = sqrt((m+2)^(m+1))
    CertReal base = CertReal::of_int(pow_mpz(mpz_class(m + 2), m + 1), p).sqrt();
    mpq_class scale(vol.get_num(), vol.get_den() * pow_mpz(mpz_class(2), m));
    scale.canonicalize();
    return base * CertReal::of_rational(scale, p);
}

/// point inside the closed parallelepiped: point = origin + sum lambda_i e_i
/// with every lambda_i in [0,1], solved exactly by Cramer's rule.
bool region_contains(const Region& region, const Vec& point) {
    if (region.explicit_t) return true; // no geometry to check against
    size_t m = region.edges.size();
    std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) A[i][j] = region.edges[j][i]; // columns = edges
    mpq_class det = det_rational(A);
    if (det == 0) fail(ErrorKind::DegenerateRegion, "parallelepiped has zero volume");
    for (size_t j = 0; j < m; ++j) {
        auto Aj = A;
        for (size_t i = 0; i < m; ++i) Aj[i][j] = mpq_class(point[i]) - region.origin[i];
        mpq_class lambda = det_rational(Aj) / det;
        if (lambda < 0 || lambda > 1) return false;
    }
    return true;
}

long t_bruteforce_oracle(int m) {
    if (m < 1 || m > 5) fail(ErrorKind::OutOfRange, "oracle supports 1 <= m <= 5");
    int vcount = 1 << m;
    int k = m + 1; // columns to choose
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    long best = 0;

    auto det_small = [&](const std::vector<int>& chosen) -> long {
        // (m+1)x(m+1): top row ones, column j = bits of chosen[j]
        long a[6][6];
        for (int j = 0; j < k; ++j) {
            a[0][j] = 1;
            for (int i = 0; i < m; ++i) a[i + 1][j] = (chosen[j] >> i) & 1;
        }
        // Bareiss on small ints
        long prev = 1;
        int sign = 1;
        for (int kk = 0; kk + 1 < k; ++kk) {
            if (a[kk][kk] == 0) {
                int piv = kk + 1;
                while (piv < k && a[piv][kk] == 0) ++piv;
                if (piv == k) return 0;
                for (int j = 0; j < k; ++j) std::swap(a[kk][j], a[piv][j]);
                sign = -sign;
            }
            for (int i = kk + 1; i < k; ++i)
                for (int j = kk + 1; j < k; ++j)
                    a[i][j] = (a[i][j] * a[kk][kk] - a[i][kk] * a[kk][j]) / prev;
            prev = a[kk][kk];
        }
        return sign * a[k - 1][k - 1];
    };

    if (vcount < k) return 0;
    for (;;) {
        long d = det_small(idx);
        best = std::max(best, d < 0 ? -d : d);
        // next combination
        int i = k - 1;
        while (i >= 0 && idx[i] == vcount - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

GeneralPositionResult general_position_check(const std::vector<Vec>& points, int m,
                                             unsigned long subset_cap) {
    GeneralPositionResult out;
    size_t n = points.size();
    size_t k = static_cast<size_t>(m) + 1;
    if (n < k) fail(ErrorKind::OutOfRange, "need at least m+1 points");
    // C(n, k) against the cap
    double combos = 1;
    for (size_t i = 0; i < k; ++i) combos = combos * static_cast<double>(n - i) / (i + 1);
    if (combos > static_cast<double>(subset_cap))
        fail(ErrorKind::CapExceeded, "too many (m+1)-subsets");

    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    bool first = true;
    for (;;) {
        std::vector<Vec> tuple;
        tuple.reserve(k);
        for (size_t i : idx) tuple.push_back(points[i]);
        mpz_class d = D_of(tuple);
        ++out.tuples_checked;
        if (first || d < out.min_D) {
            out.min_D = d;
            first = false;
        }
        size_t i = k;
        while (i-- > 0) {
            if (idx[i] != n - k + i) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) {
                out.ok = out.min_D > 0;
                return out;
            }
        }
    }
}

// --- Theorem 2 --------------------------------------------------------------------

void LatticeSieveInstance::validate() const {
    if (m < 2) fail(ErrorKind::OutOfRange, "theorem 2 needs dimension m >= 2");
    if (lattices.empty()) fail(ErrorKind::OutOfRange, "no lattices");
    for (const auto& e : lattices) {
        if (e.basis.dim() != m) fail(ErrorKind::DimensionMismatch, "lattice dimension mismatch");
        if (e.nu < 1) fail(ErrorKind::OutOfRange, "nu must be >= 1");
    }
    for (size_t i = 0; i < lattices.size(); ++i)
        for (size_t j = i + 1; j < lattices.size(); ++j) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), lattices[i].basis.det_abs().get_mpz_t(),
                    lattices[j].basis.det_abs().get_mpz_t());
            if (g != 1)
                fail(ErrorKind::InvalidHypothesis, "lattice determinants share factor " + g.get_str());
        }
    std::set<std::string> seen;
    for (const auto& pt : points) {
        if (static_cast<int>(pt.size()) != m)
            fail(ErrorKind::DimensionMismatch, "point dimension mismatch");
        std::string key;
        for (const auto& c : pt) key += c.get_str() + ",";
        if (!seen.insert(key).second) fail(ErrorKind::DuplicateElements, "repeated point");
    }
    for (const auto& e : lattices) {
        unsigned long obs = observed_nu(e.basis);
        if (obs > e.nu)
            fail(ErrorKind::InstanceInconsistent,
                 "declared nu smaller than observed class count");
    }
    if (!region.explicit_t) {
        if (region.edges.size() != static_cast<size_t>(m) ||
            region.origin.size() != static_cast<size_t>(m))
            fail(ErrorKind::DimensionMismatch, "region dimension mismatch");
        for (const auto& e : region.edges)
            if (e.size() != static_cast<size_t>(m))
                fail(ErrorKind::DimensionMismatch, "region edge dimension mismatch");
        for (const auto& pt : points)
            if (!region_contains(region, pt))
                fail(ErrorKind::InvalidHypothesis, "point outside the region Omega");
    }
}

unsigned long LatticeSieveInstance::observed_nu(const LatticeBasis& basis) const {
    std::set<std::string> labels;
    for (const auto& pt : points) labels.insert(basis.class_label(pt));
    return labels.size();
}

BoundReport theorem2_bound(const LatticeSieveInstance& inst, mpfr_prec_t prec) {
    inst.validate();
    mpfr_prec_t p = prec > 0 ? prec : default_precision();
    BoundReport rep;
    rep.method = BoundMethod::theorem2;

    // log t(Omega): exact value when available, Hadamard upper bound otherwise
    // (an upper bound on t keeps the final bound sound, only weaker)
    CertReal log_t(p);
    if (auto ex = t_exact(inst.region, inst.m)) {
        if (*ex <= 0) fail(ErrorKind::DegenerateRegion, "t(Omega) must be positive");
        log_t = CertReal::log_rational(*ex, p);
    } else {
        log_t = t_upper_bound(inst.region, inst.m, p).log();
        rep.note = "t(Omega) taken as the Hadamard-style upper bound";
    }

    auto b_of = [&](int i) {
        CertReal b(p);
        for (const auto& e : inst.lattices) {
            CertReal w = CertReal::log_int(e.basis.det_abs(), p);
            b += w / CertReal::of_int(pow_mpz(mpz_class(static_cast<unsigned long>(e.nu)), i), p);
        }
        b -= log_t;
        return b;
    };

    CertReal b_m = b_of(inst.m);
    rep.denominator = b_m.mid_d();
    rep.denominator_err = b_m.rad_d();
    if (!b_m.certainly_positive()) {
        rep.valid = false;
        rep.note += (rep.note.empty() ? "" : "; ");
        rep.note += "b_m not certified positive";
        return rep;
    }

    unsigned long gamma = gamma_m_constant(inst.m);
    CertReal best_branch(p); // zero
    bool have = false;
    for (int s = 1; s <= inst.m; s += 2) {
        CertReal b_ms = b_of(inst.m - s);
        if (!b_ms.certainly_positive())
            fail(ErrorKind::PrecisionInsufficient,
                 "b_i not certified positive although b_m is"); // cannot happen mathematically
        CertReal branch = (b_ms / b_m).rootn(static_cast<unsigned long>(s)).mul_ui(gamma);
        if (!have || mpfr_cmp(branch.hi(), best_branch.hi()) > 0) {
            best_branch = branch;
            rep.numerator = b_ms.mid_d();
            rep.numerator_err = b_ms.rad_d();
            have = true;
        }
    }
    unsigned long max_nu = 0;
    for (const auto& e : inst.lattices) max_nu = std::max(max_nu, e.nu);
    double branch2 = static_cast<double>((inst.m + 1)) * static_cast<double>(max_nu);

    rep.valid = true;
    rep.bound = std::max(best_branch.hi_d(), branch2);
    rep.effective = rep.bound;
    if (!inst.points.empty() &&
        inst.points.size() < static_cast<size_t>(inst.m + 1) * max_nu) {
        rep.note += (rep.note.empty() ? "" : "; ");
        rep.note += "trivial branch: S < (m+1) max nu";
    }
    return rep;
}

// --- Lemma 6 ----------------------------------------------------------------------

namespace {

mpq_class falling_product(const mpq_class& x, unsigned d) {
    mpq_class acc = 1;
    for (unsigned k = 0; k < d; ++k) acc *= (x - static_cast<long>(k));
    return acc;
}

} // namespace

bool lemma6_check(unsigned d, const std::vector<mpq_class>& xs) {
    if (d < 3) fail(ErrorKind::OutOfRange, "lemma 6 requires degree d >= 3");
    if (xs.empty()) fail(ErrorKind::OutOfRange, "empty sample");
    mpq_class X = 0;
    for (const auto& x : xs) {
        if (x <= 0) fail(ErrorKind::HypothesisViolated, "x_i must be positive");
        X += x;
    }
    unsigned long n = xs.size();
    if (X < mpq_class(static_cast<unsigned long>(d) * n))
        fail(ErrorKind::HypothesisViolated, "requires X >= d*n");
    mpq_class lhs = 0;
    for (const auto& x : xs) lhs += falling_product(x, d);
    mpq_class mean = X / mpq_class(static_cast<unsigned long>(n));
    mpq_class rhs = mpq_class(static_cast<unsigned long>(n)) * falling_product(mean, d);
    return lhs >= rhs;
}

// --- Lemma 7 ----------------------------------------------------------------------

namespace {

// max subset avoiding every "bad" (m+1)-tuple, branch and bound on tuples
unsigned max_general_position(const std::vector<std::uint32_t>& bad, std::uint32_t mask,
                              unsigned size, unsigned& best) {
    if (size <= best) return best;
    std::uint32_t hit = 0;
    for (std::uint32_t t : bad)
        if ((t & mask) == t) {
            hit = t;
            break;
        }
    if (hit == 0) {
        best = std::max(best, size);
        return best;
    }
    for (std::uint32_t bit = hit; bit;) {
        std::uint32_t b = bit & (~bit + 1);
        bit ^= b;
        max_general_position(bad, mask & ~b, size - 1, best);
    }
    return best;
}

} // namespace

Lemma7Report lemma7_verify(const std::vector<Vec>& points, int m, unsigned long point_cap) {
    Lemma7Report out;
    size_t n = points.size();
    out.n_points = n;
    if (n > point_cap || n > 30) fail(ErrorKind::CapExceeded, "too many points for exact search");
    size_t k = static_cast<size_t>(m) + 1;

    // all affinely-dependent (m+1)-tuples
    std::vector<std::uint32_t> bad;
    if (n >= k) {
        std::vector<size_t> idx(k);
        for (size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            std::vector<Vec> tuple;
            for (size_t i : idx) tuple.push_back(points[i]);
            if (D_of(tuple) == 0) {
                std::uint32_t maskt = 0;
                for (size_t i : idx) maskt |= (1u << i);
                bad.push_back(maskt);
            }
            size_t i = k;
            bool done = false;
            while (i-- > 0) {
                if (idx[i] != n - k + i) {
                    ++idx[i];
                    for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) done = true;
            }
            if (done) break;
        }
    }

    unsigned best = 0;
    std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1);
    max_general_position(bad, full, static_cast<unsigned>(n), best);
    out.S = best;

    // K: the maximal count is attained by a hyperplane affinely spanned by
    // points, unless the whole set sits inside one hyperplane
    unsigned long K = 0;
    if (n <= static_cast<size_t>(m)) {
        K = n;
    } else {
        bool any_independent = false;
        std::vector<size_t> idx(m);
        for (int i = 0; i < m; ++i) idx[i] = i;
        for (;;) {
            // the m chosen points must be affinely independent to span a hyperplane
            bool indep = true;
            if (m >= 2) {
                Mat diff(m - 1, Vec(m));
                for (int r = 1; r < m; ++r)
                    for (int c = 0; c < m; ++c)
                        diff[r - 1][c] = points[idx[r]][c] - points[idx[0]][c];
                // rank check: some (m-1)x(m-1) minor nonzero
                indep = false;
                for (int drop = 0; drop < m && !indep; ++drop) {
                    Mat minor(m - 1, Vec(m - 1));
                    for (int r = 0; r < m - 1; ++r) {
                        int cc = 0;
                        for (int c = 0; c < m; ++c) {
                            if (c == drop) continue;
                            minor[r][cc++] = diff[r][c];
                        }
                    }
                    if (det_integer(minor) != 0) indep = true;
                }
            }
            if (indep) {
                any_independent = true;
                unsigned long cnt = 0;
                for (size_t v = 0; v < n; ++v) {
                    bool inside = false;
                    bool is_member = std::find(idx.begin(), idx.end(), v) != idx.end();
                    if (is_member) {
                        inside = true;
                    } else {
                        std::vector<Vec> tuple;
                        for (size_t i : idx) tuple.push_back(points[i]);
                        tuple.push_back(points[v]);
                        inside = (D_of(tuple) == 0);
                    }
                    if (inside) ++cnt;
                }
                K = std::max(K, cnt);
            }
            // next combination of size m
            int i = m;
            bool done = false;
            while (i-- > 0) {
                if (idx[i] != n - m + static_cast<size_t>(i)) {
                    ++idx[i];
                    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) done = true;
            }
            if (done) break;
        }
        if (!any_independent) K = n; // all points inside a lower-dimensional flat
    }
    out.K = K;

    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), out.S, static_cast<unsigned long>(m));
    if (binom < 1) binom = 1;
    out.bound = mpz_class(static_cast<unsigned long>(K)) * binom;
    out.holds = mpz_class(static_cast<unsigned long>(n)) <= out.bound;
    return out;
}

// --- Gaussian integers -------------------------------------------------------------

GaussInt gauss_sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

GaussInt gauss_mul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

namespace {

mpz_class round_div(const mpz_class& x, const mpz_class& n) {
    // nearest integer to x/n, n > 0
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    if (2 * r > n) ++q;
    return q;
}

} // namespace

GaussInt gauss_mod(const GaussInt& a, const GaussInt& b) {
    mpz_class nb = b.norm();
    if (nb == 0) fail(ErrorKind::DomainError, "division by zero Gaussian integer");
    // a * conj(b) / N(b), rounded to the nearest lattice point
    GaussInt num = gauss_mul(a, GaussInt{b.re, -b.im});
    GaussInt q{round_div(num.re, nb), round_div(num.im, nb)};
    return gauss_sub(a, gauss_mul(q, b));
}

GaussInt gauss_gcd(GaussInt a, GaussInt b) {
    while (!(b.re == 0 && b.im == 0)) {
        GaussInt r = gauss_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

bool gauss_coprime(const GaussInt& a, const GaussInt& b) { return gauss_gcd(a, b).norm() == 1; }

LatticeBasis gauss_ideal_lattice(const GaussInt& alpha) {
    if (alpha.norm() == 0) fail(ErrorKind::DomainError, "zero ideal");
    return LatticeBasis::from_generators({{alpha.re, alpha.im}, {-alpha.im, alpha.re}});
}

BoundReport gaussian_sieve_bound(const GaussianInstance& inst, mpfr_prec_t prec) {
    mpfr_prec_t p = prec > 0 ? prec : default_precision();
    BoundReport rep;
    rep.method = BoundMethod::gaussian;
    if (inst.d_omega <= 0) fail(ErrorKind::OutOfRange, "d(Omega) must be positive");
    if (inst.moduli.empty()) fail(ErrorKind::OutOfRange, "no moduli");
    for (const auto& [q, nu] : inst.moduli) {
        if (q.norm() < 2) fail(ErrorKind::OutOfRange, "Gaussian modulus must have norm >= 2");
        if (nu == 0 && inst.points.empty())
            fail(ErrorKind::OutOfRange, "nu omitted but no points to derive it from");
    }
    for (size_t i = 0; i < inst.moduli.size(); ++i)
        for (size_t j = i + 1; j < inst.moduli.size(); ++j)
            if (!gauss_coprime(inst.moduli[i].first, inst.moduli[j].first))
                fail(ErrorKind::InvalidHypothesis, "Gaussian moduli not pairwise coprime");

    std::vector<RatioTerm> terms;
    for (const auto& [q, nu_declared] : inst.moduli) {
        LatticeBasis ideal = gauss_ideal_lattice(q);
        unsigned long nu = nu_declared;
        if (!inst.points.empty()) {
            std::set<std::string> labels;
            for (const auto& z : inst.points) labels.insert(ideal.class_label({z.re, z.im}));
            unsigned long observed = labels.size();
            if (nu == 0)
                nu = observed;
            else if (observed > nu)
                fail(ErrorKind::InstanceInconsistent, "declared nu smaller than observed");
        }
        if (mpz_class(static_cast<unsigned long>(nu)) > q.norm())
            fail(ErrorKind::OutOfRange, "nu exceeds the number of residue classes N(q)");
        terms.push_back({CertReal::log_int(q.norm(), p), nu});
    }
    CertReal subtrahend = CertReal::log_rational(inst.d_omega, p).mul_ui(2);
    RatioEval ev = ratio_bound_core(terms, subtrahend);
    rep.numerator = ev.numerator.mid_d();
    rep.numerator_err = ev.numerator.rad_d();
    rep.denominator = ev.denominator.mid_d();
    rep.denominator_err = ev.denominator.rad_d();
    rep.valid = ev.valid;
    if (ev.valid) {
        rep.bound = (ev.numerator / ev.denominator).hi_d();
        rep.effective = rep.bound;
    }
    return rep;
}

} // namespace larsieve
