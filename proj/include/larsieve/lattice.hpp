#pragma once

#include "larsieve/arith.hpp"
#include "larsieve/bound_report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace larsieve {

using Vec = std::vector<mpz_class>;
using Mat = std::vector<std::vector<mpz_class>>; // row-major, mat[r][c]

mpz_class det_integer(Mat a);                          // exact (Bareiss)
mpq_class det_rational(std::vector<std::vector<mpq_class>> a);

/// |det| of the (m+1)x(m+1) matrix with a top row of ones and the points as
/// columns; zero iff the points share an affine hyperplane.
mpz_class D_of(const std::vector<Vec>& points);

/// A full-rank sublattice of Z^m given by m generator vectors, stored with its
/// column-style Hermite normal form (lower triangular, positive diagonal,
/// row entries left of the diagonal reduced into [0, diag)).
class LatticeBasis {
public:
    static LatticeBasis from_generators(const std::vector<Vec>& gens);

    int dim() const { return m_; }
    const mpz_class& det_abs() const { return det_; }
    const std::vector<Vec>& hnf_columns() const { return hnf_; }

    /// canonical representative of point + Gamma in the fundamental box
    Vec reduce(const Vec& point) const;
    /// exact membership test v in Gamma
    bool contains(const Vec& v) const;
    std::string class_label(const Vec& point) const;

private:
    int m_ = 0;
    std::vector<Vec> hnf_; // columns
    mpz_class det_;
};

struct Region {
    bool explicit_t = false;
    mpq_class t_value;                      // when explicit_t
    std::vector<mpq_class> origin;          // parallelepiped
    std::vector<std::vector<mpq_class>> edges; // rows = edge vectors
};

/// Volume of a parallelepiped region (|det| of the edge matrix), exact.
mpq_class region_volume(const Region& region);

/// Exact t(Omega) for parallelepipeds in dimension m <= 4 (coefficients
/// 1, 1, 2, 3 times the volume); nullopt above.
std::optional<mpq_class> t_exact(const Region& region, int m);

/// Hadamard-style upper bound (m+2)^((m+1)/2) / 2^m * Vol(Omega), any m.
CertReal t_upper_bound(const Region& region, int m, mpfr_prec_t prec = 0);

/// Exact membership in a closed parallelepiped region (always true for
/// explicit-t regions, which carry no geometry).
bool region_contains(const Region& region, const Vec& point);

/// Exact maximum of D over (m+1)-tuples drawn from the closed unit cube,
/// by exhaustive enumeration of 0/1 matrices (the extremum is attained there).
/// Supports 1 <= m <= 5.
long t_bruteforce_oracle(int m);

struct GeneralPositionResult {
    bool ok = false;
    mpz_class min_D;
    unsigned long tuples_checked = 0;
};

/// min D over all (m+1)-subsets of the points; CapExceeded above subset_cap.
GeneralPositionResult general_position_check(const std::vector<Vec>& points, int m,
                                             unsigned long subset_cap = 10000000);

struct LatticeEntry {
    LatticeBasis basis;
    unsigned long nu = 1;
};

struct LatticeSieveInstance {
    int m = 2;
    std::vector<Vec> points; // may be empty (bound-only mode)
    std::vector<LatticeEntry> lattices;
    Region region;

    void validate() const;
    unsigned long observed_nu(const LatticeBasis& basis) const;
};

/// Theorem 2 bound: max over odd s <= m of gamma_m (b_{m-s}/b_m)^(1/s) versus
/// (m+1) max nu, where b_i = sum log|Gamma|/nu^i - log t(Omega). Valid only
/// when b_m is certified positive; rounding keeps the bound an over-estimate.
BoundReport theorem2_bound(const LatticeSieveInstance& inst, mpfr_prec_t prec = 0);

inline unsigned long gamma_m_constant(int m) {
    return static_cast<unsigned long>((m + 1) / 2) * (static_cast<unsigned long>(m) * (m + 1) / 2);
}

/// Lemma 6: for P(x) = x(x-1)...(x-d+1), d >= 3, positive rationals xs with
/// sum X >= d*n: sum P(x_i) >= n P(X/n), decided exactly.
bool lemma6_check(unsigned d, const std::vector<mpq_class>& xs);

struct Lemma7Report {
    unsigned long n_points = 0;
    unsigned long S = 0; // max general-position subset size
    unsigned long K = 0; // max points in one hyperplane
    mpz_class bound;     // K * max(1, C(S, m))
    bool holds = false;
};

/// Exhaustive Lemma 7 verification for small point sets (exact S and K).
Lemma7Report lemma7_verify(const std::vector<Vec>& points, int m,
                           unsigned long point_cap = 20);

// --- Gaussian integers --------------------------------------------------------

struct GaussInt {
    mpz_class re, im;
    mpz_class norm() const { return re * re + im * im; }
    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
};

GaussInt gauss_sub(const GaussInt& a, const GaussInt& b);
GaussInt gauss_mul(const GaussInt& a, const GaussInt& b);
/// remainder of nearest-rounding division; N(rem) <= N(b)/2
GaussInt gauss_mod(const GaussInt& a, const GaussInt& b);
GaussInt gauss_gcd(GaussInt a, GaussInt b);
bool gauss_coprime(const GaussInt& a, const GaussInt& b);

/// The ideal (alpha) as the Z^2 lattice spanned by (a,b) and (-b,a);
/// N(alpha) residue classes.
LatticeBasis gauss_ideal_lattice(const GaussInt& alpha);

struct GaussianInstance {
    std::vector<GaussInt> points;                          // may be empty
    std::vector<std::pair<GaussInt, unsigned long>> moduli; // (alpha, nu); nu = 0 -> from points
    mpq_class d_omega;                                     // diameter bound, > 0
};

/// S <= (sum log N(q) - 2 log d)/(sum log N(q)/nu - 2 log d); the evaluator
/// shares the sieve ratio core with the 1-D bounds.
BoundReport gaussian_sieve_bound(const GaussianInstance& inst, mpfr_prec_t prec = 0);

} // namespace larsieve
