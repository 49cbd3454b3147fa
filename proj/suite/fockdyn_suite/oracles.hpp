#pragma once

// Independent reference computations and random generators used by the
// acceptance suite and the unit tests. Nothing here calls into the code
// paths it is meant to check.

#include "fockdyn/fockdyn.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace fockdyn::suite {

using Rng = std::mt19937_64;
using BigRational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Random generators.

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Complex gaussian_complex(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    return {re, g(rng)};
}

inline ComplexMatrix gaussian_matrix(Rng& rng, Eigen::Index d) {
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) m(r, c) = gaussian_complex(rng);
    return m;
}

inline ComplexVector gaussian_vector(Rng& rng, Eigen::Index d) {
    ComplexVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = gaussian_complex(rng);
    return v;
}

inline ComplexMatrix random_unitary(Rng& rng, Eigen::Index d) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(rng, d));
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex ph = r(i, i) / std::abs(r(i, i));
        q.col(i) *= ph;
    }
    return q;
}

/// Invertible matrix with condition number at most cond_max.
inline ComplexMatrix random_conditioned(Rng& rng, Eigen::Index d, double cond_max) {
    RealVector s(d);
    for (Eigen::Index i = 0; i < d; ++i) s(i) = uniform(rng, 1.0, cond_max);
    if (d > 1) {
        s(0) = 1.0;
        s(d - 1) = cond_max;
    }
    return random_unitary(rng, d) * s.cast<Complex>().asDiagonal() * random_unitary(rng, d);
}

/// A = G * (s / ||G||) with s uniform in [0.05, norm_max]; b with |b| uniform in [0, b_max].
inline AffineSymbol random_compact_symbol(Rng& rng, Eigen::Index d, double norm_max = 0.8, double b_max = 2.0) {
    ComplexMatrix g = gaussian_matrix(rng, d);
    g *= uniform(rng, 0.05, norm_max) / spectral_norm(g);
    ComplexVector b = gaussian_vector(rng, d);
    b *= uniform(rng, 0.0, b_max) / b.norm();
    return AffineSymbol(g, b);
}

inline Polynomial random_polynomial(Rng& rng, std::size_t d, int degree, double zero_probability = 0.0) {
    Polynomial f(d);
    for (const auto& a : indices_up_to(d, degree))
        if (uniform(rng, 0.0, 1.0) >= zero_probability) f.add(a, gaussian_complex(rng));
    return f;
}

inline MultiIndex random_index(Rng& rng, std::size_t d, int max_degree) {
    const int n = uniform_int(rng, 0, max_degree);
    MultiIndex a(d);
    for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(d) - 1))] += 1;
    return a;
}

// ---------------------------------------------------------------------------
// Brute-force references.

/// All values lambda^alpha over a box, sorted nonincreasing.
inline std::vector<double> brute_force_lambda_values(const std::vector<double>& lambdas, int box) {
    std::vector<double> out{1.0};
    for (double l : lambdas) {
        std::vector<double> next;
        for (double v : out) {
            double p = v;
            for (int k = 0; k <= box; ++k) {
                next.push_back(p);
                p *= l;
            }
        }
        out = std::move(next);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// Greedy multiset matching within tol. Returns the number of unmatched
/// expected values and the largest matched distance.
struct MatchResult {
    std::size_t unmatched = 0;
    double worst = 0.0;
};

inline MatchResult match_multisets(const std::vector<Complex>& expected, const std::vector<Complex>& computed, double tol) {
    MatchResult out;
    std::vector<bool> used(computed.size(), false);
    for (const Complex& e : expected) {
        std::size_t best = computed.size();
        double bd = tol;
        for (std::size_t i = 0; i < computed.size(); ++i)
            if (!used[i] && std::abs(computed[i] - e) <= bd) {
                bd = std::abs(computed[i] - e);
                best = i;
            }
        if (best == computed.size()) {
            ++out.unmatched;
        } else {
            used[best] = true;
            out.worst = std::max(out.worst, bd);
        }
    }
    // computed values left over count as unmatched too
    out.unmatched += static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
    return out;
}

/// Evaluates (Az+b) at z and then f; reference for composed polynomials.
inline Complex evaluate_composed(const Polynomial& f, const AffineSymbol& s, const ComplexVector& z) {
    return f.evaluate(s.a * z + s.b);
}

// ---------------------------------------------------------------------------
// Exact arithmetic over Q(i).

struct GaussianRational {
    BigRational re{0}, im{0};

    bool is_zero() const { return re == 0 && im == 0; }
    friend GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) { return {x.re + y.re, x.im + y.im}; }
    friend GaussianRational operator-(const GaussianRational& x, const GaussianRational& y) { return {x.re - y.re, x.im - y.im}; }
    friend GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend GaussianRational operator/(const GaussianRational& x, const GaussianRational& y) {
        const BigRational n = y.re * y.re + y.im * y.im;
        return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
    }
    Complex to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline GaussianRational gq(std::int64_t num, std::int64_t den = 1, std::int64_t inum = 0, std::int64_t iden = 1) {
    return {BigRational(num, den), BigRational(inum, iden)};
}

inline GaussianRational gq_pow(GaussianRational x, int n) {
    GaussianRational r = gq(1);
    for (int k = 0; k < n; ++k) r = r * x;
    return r;
}

inline std::int64_t binomial(int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Rank over Q(i) by Gaussian elimination on columns.
inline int exact_rank(std::vector<std::vector<GaussianRational>> cols) {
    if (cols.empty()) return 0;
    const std::size_t rows = cols.front().size();
    int rank = 0;
    std::size_t col = 0;
    for (std::size_t r = 0; r < rows && col < cols.size(); ++r) {
        std::size_t piv = cols.size();
        for (std::size_t c = col; c < cols.size(); ++c)
            if (!cols[c][r].is_zero()) {
                piv = c;
                break;
            }
        if (piv == cols.size()) continue;
        std::swap(cols[col], cols[piv]);
        for (std::size_t c = col + 1; c < cols.size(); ++c) {
            if (cols[c][r].is_zero()) continue;
            const GaussianRational f = cols[c][r] / cols[col][r];
            for (std::size_t k = r; k < rows; ++k) cols[c][k] = cols[c][k] - f * cols[col][k];
        }
        ++col;
        ++rank;
    }
    return rank;
}

/// Exact Krylov rank of f under C_{diag(lambda) z + b} restricted to degree
/// <= n, in monomial coordinates: (lambda_j z_j + b_j)^a expands binomially.
inline int exact_diagonal_krylov_rank(const std::vector<GaussianRational>& lambda, const std::vector<GaussianRational>& b,
                                      const std::vector<std::pair<MultiIndex, GaussianRational>>& f, int n) {
    const std::size_t d = lambda.size();
    const auto idx = indices_up_to(d, n);
    std::map<MultiIndex, std::size_t> pos;
    for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
    const std::size_t m = idx.size();

    // column alpha of T: coefficient of z^beta in prod_j (lambda_j z_j + b_j)^{alpha_j}
    std::vector<std::vector<std::pair<std::size_t, GaussianRational>>> t(m);
    for (std::size_t c = 0; c < m; ++c) {
        const MultiIndex& a = idx[c];
        for (std::size_t r = 0; r < m; ++r) {
            const MultiIndex& be = idx[r];
            if (!be.dominated_by(a)) continue;
            GaussianRational v = gq(1);
            for (std::size_t j = 0; j < d; ++j)
                v = v * gq(binomial(a[j], be[j])) * gq_pow(lambda[j], be[j]) * gq_pow(b[j], a[j] - be[j]);
            if (!v.is_zero()) t[c].push_back({r, v});
        }
    }
    std::vector<GaussianRational> x(m);
    for (const auto& [a, v] : f) x[pos.at(a)] = x[pos.at(a)] + v;
    std::vector<std::vector<GaussianRational>> cols;
    for (std::size_t k = 0; k < m; ++k) {
        cols.push_back(x);
        std::vector<GaussianRational> y(m);
        for (std::size_t c = 0; c < m; ++c) {
            if (x[c].is_zero()) continue;
            for (const auto& [r, v] : t[c]) y[r] = y[r] + v * x[c];
        }
        x = std::move(y);
    }
    return exact_rank(std::move(cols));
}

/// Monomial coefficients of g(z - xi) = sum_alpha g_alpha prod_j (z_j - xi_j)^{alpha_j}.
inline std::vector<std::pair<MultiIndex, GaussianRational>> exact_recenter(
    const std::vector<std::pair<MultiIndex, GaussianRational>>& g, const std::vector<GaussianRational>& xi) {
    const std::size_t d = xi.size();
    std::map<MultiIndex, GaussianRational> acc;
    for (const auto& [a, c] : g) {
        std::vector<MultiIndex> lower{MultiIndex(d)};
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<MultiIndex> next;
            for (const auto& l : lower)
                for (int k = 0; k <= a[j]; ++k) {
                    MultiIndex m = l;
                    m[j] = k;
                    next.push_back(m);
                }
            lower = std::move(next);
        }
        for (const auto& be : lower) {
            GaussianRational v = c;
            for (std::size_t j = 0; j < d; ++j)
                v = v * gq(binomial(a[j], be[j])) * gq_pow(gq(0) - xi[j], a[j] - be[j]);
            acc[be] = acc[be] + v;
        }
    }
    std::vector<std::pair<MultiIndex, GaussianRational>> out;
    for (auto& [a, v] : acc)
        if (!v.is_zero()) out.emplace_back(a, v);
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form iterates along a Jordan chain of length 2 (L_1 eigenvector,
// C L_2 = lambda L_2 + L_1): C^j (L_1^a L_2^c) = lambda^{j(a+c)} L_1^a (L_2 + (j/lambda) L_1)^c.

inline std::map<std::pair<int, int>, Complex> jordan_two_iterate(const std::vector<std::pair<int, int>>& subset,
                                                                  Complex lambda, int j) {
    std::map<std::pair<int, int>, Complex> out;
    const Complex t = static_cast<double>(j) / lambda;
    for (const auto& [a, c] : subset) {
        const Complex scale = std::pow(lambda, j * (a + c));
        for (int k = 0; k <= c; ++k) {
            // choose k factors (j/lambda) L_1, the other c-k factors L_2
            const Complex v = scale * static_cast<double>(binomial(c, k)) * std::pow(t, k);
            out[{a + k, c - k}] += v;
        }
    }
    return out;
}

}  // namespace fockdyn::suite
