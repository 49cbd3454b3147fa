#pragma once

// Approximation numbers of compact C_phi:
//   a_n = exp(<(I-B)^{-1} v, v>/2 - |v|^2/4) * lambda^{alpha_n},
// B = sqrt(A A^*), v = (I+B)^{-1} b, lambda = singular values of A and
// (alpha_n) an enumeration making lambda^{alpha_n} nonincreasing.
// The oracle recomputes them as singular values of exact truncations.

#include "basis.hpp"
#include "core.hpp"
#include "multi_index.hpp"
#include "symbol.hpp"
#include "truncation.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fockdyn {

inline constexpr std::size_t kEnumerationBudget = 10'000'000;

using IndexedValue = std::pair<MultiIndex, double>;

/// The k largest values of lambda^alpha over N^d, nonincreasing; equal values
/// (to 1e-12 relative) are ordered graded-lexicographically.
inline std::vector<IndexedValue> enumerate_lambda_desc(const std::vector<double>& lambdas, std::size_t k) {
    if (k > kEnumerationBudget) throw BudgetExceeded("enumeration count " + std::to_string(k) + " exceeds 10^7");
    if (lambdas.empty()) throw InvalidInput("empty lambda list");
    for (double l : lambdas)
        if (!(l > 0.0 && l < 1.0)) throw InvalidInput("enumerate_lambda_desc needs 0 < lambda_j < 1");
    const std::size_t d = lambdas.size();
    std::vector<double> logs;
    for (double l : lambdas) logs.push_back(std::log(l));

    auto value_of = [&](const MultiIndex& a) {
        double v = 1.0;
        for (std::size_t j = 0; j < d; ++j) v *= std::pow(lambdas[j], a[j]);
        return v;
    };
    auto log_of = [&](const MultiIndex& a) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += a[j] * logs[j];
        return s;
    };
    struct Node {
        double log_value;
        MultiIndex alpha;
    };
    auto cmp = [](const Node& x, const Node& y) {
        if (x.log_value != y.log_value) return x.log_value < y.log_value;
        return GradedLess{}(y.alpha, x.alpha);
    };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
    std::unordered_set<MultiIndex, MultiIndexHash> seen;
    heap.push({0.0, MultiIndex(d)});
    seen.insert(MultiIndex(d));

    // Ties are decided on logarithms; the values themselves may underflow.
    std::vector<IndexedValue> out;
    std::vector<double> out_logs;
    while (!heap.empty()) {
        Node top = heap.top();
        if (out.size() >= k && top.log_value < out_logs.back() - 1e-12) break;
        heap.pop();
        out.emplace_back(top.alpha, value_of(top.alpha));
        out_logs.push_back(top.log_value);
        for (std::size_t j = 0; j < d; ++j) {
            MultiIndex next = top.alpha + MultiIndex::unit(d, j);
            if (seen.insert(next).second) heap.push({log_of(next), std::move(next)});
        }
        if (out.size() > kEnumerationBudget + 1024) throw BudgetExceeded("enumeration tie group too large");
    }
    // Deterministic order inside groups of equal values.
    std::size_t i = 0;
    while (i < out.size()) {
        std::size_t j = i + 1;
        while (j < out.size() && out_logs[j] >= out_logs[i] - 1e-12) ++j;
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(i), out.begin() + static_cast<std::ptrdiff_t>(j),
                  [](const IndexedValue& x, const IndexedValue& y) { return GradedLess{}(x.first, y.first); });
        i = j;
    }
    if (out.size() > k) out.resize(k);
    return out;
}

struct ApproxReport {
    double prefactor = 1.0;
    std::vector<double> lambdas;  // nonzero singular values of A, descending
    std::vector<MultiIndex> indices;
    std::vector<double> values;
    double closed_form_sum = 0.0;
    std::optional<std::vector<double>> oracle_values;
    std::optional<int> oracle_degree;
    std::optional<double> max_rel_delta;
};

struct ClosedFormData {
    double prefactor = 1.0;
    std::vector<double> lambdas;
};

/// Prefactor and singular values of A (zero singular values dropped).
inline ClosedFormData approx_closed_form(const AffineSymbol& sym) {
    const auto rep = check_boundedness(sym);
    if (!rep.compact) throw Refused("approximation numbers need a compact operator (||A|| < 1)");
    const auto d = sym.dimension();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym.a * sym.a.adjoint());
    RealVector mu = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix& q = es.eigenvectors();
    if (mu.maxCoeff() <= sym.tol) throw Refused("approximation-number formula assumes A != 0");
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix bsqrt = q * mu.cast<Complex>().asDiagonal() * q.adjoint();
    const ComplexVector v = (id + bsqrt).lu().solve(sym.b);
    const ComplexVector w = (id - bsqrt).lu().solve(v);
    ClosedFormData out;
    out.prefactor = std::exp(inner(w, v).real() / 2.0 - v.squaredNorm() / 4.0);
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (mu(i) > sym.tol) out.lambdas.push_back(mu(i));
    std::sort(out.lambdas.rbegin(), out.lambdas.rend());
    return out;
}

inline ApproxReport approx_numbers(const AffineSymbol& sym, std::size_t k) {
    if (k == 0) throw InvalidInput("k must be positive");
    const auto cf = approx_closed_form(sym);
    ApproxReport rep;
    rep.prefactor = cf.prefactor;
    rep.lambdas = cf.lambdas;
    for (auto& [alpha, v] : enumerate_lambda_desc(cf.lambdas, k)) {
        rep.indices.push_back(alpha);
        rep.values.push_back(cf.prefactor * v);
    }
    double prod = 1.0;
    for (double l : cf.lambdas) prod /= (1.0 - l);
    rep.closed_form_sum = cf.prefactor * prod;
    return rep;
}

// ---------------------------------------------------------------------------
// Truncated-SVD oracle.

struct OracleResult {
    std::vector<double> values;
    int degree = 0;
};

namespace detail {

// Singular values of C_{sigma z + c} on F(C) truncated at degree n.
inline std::vector<double> one_dimensional_singular_values(double sigma, Complex c, int n, std::size_t count) {
    ComplexMatrix a(1, 1);
    a(0, 0) = sigma;
    ComplexVector b(1);
    b(0) = c;
    return truncated_singular_values(assemble_truncated(AffineSymbol(a, b), n), count);
}

}  // namespace detail

/// Top-k singular values of C_phi from exact truncations.
///
/// b = 0: C_phi is block diagonal in the grading, so a single truncation at
/// degree (max degree of the top-k indices) + 10 is exact.
/// b != 0: with A = U S V^*, C_phi = C_{V^*} C_{S z + U^* b} C_U and the middle
/// factor is a tensor product of one-dimensional operators C_{s_j z + c_j};
/// their truncated singular values are computed at increasing degree until
/// stable, and the top-k products are selected by sorting.
inline OracleResult approx_oracle(const AffineSymbol& sym, std::size_t k, int extra_degree = 10) {
    const auto rep = approx_numbers(sym, k);
    int index_degree = 0;
    for (const auto& a : rep.indices) index_degree = std::max(index_degree, a.degree());
    const auto d = static_cast<std::size_t>(sym.dimension());

    OracleResult out;
    if (sym.b.norm() <= sym.tol && count_up_to(d, index_degree + extra_degree) <= 2000) {
        out.degree = index_degree + extra_degree;
        out.values = truncated_singular_values(assemble_truncated(sym, out.degree), k);
        return out;
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(sym.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector s = svd.singularValues();
    const ComplexVector c = svd.matrixU().adjoint() * sym.b;
    std::vector<std::vector<double>> factors;
    int used_degree = 0;
    for (std::size_t j = 0; j < d; ++j) {
        const double sigma = s(static_cast<Eigen::Index>(j));
        const Complex cj = c(static_cast<Eigen::Index>(j));
        const std::size_t count = k + 1;
        int n = std::max(20, index_degree + extra_degree);
        std::vector<double> prev = detail::one_dimensional_singular_values(sigma, cj, n, count);
        bool stable = false;
        while (!stable && n + 20 <= 140) {
            n += 20;
            std::vector<double> cur = detail::one_dimensional_singular_values(sigma, cj, n, count);
            stable = true;
            for (std::size_t i = 0; i < std::min(prev.size(), cur.size()); ++i)
                if (std::abs(cur[i] - prev[i]) > 1e-14 * cur[0]) stable = false;
            prev = std::move(cur);
        }
        used_degree = std::max(used_degree, n);
        std::vector<double> kept;
        for (double x : prev)
            if (x > 1e-300) kept.push_back(x);
        factors.push_back(std::move(kept));
    }
    // Top-k products over the box of available factor indices.
    std::vector<double> products{1.0};
    for (const auto& f : factors) {
        std::vector<double> next;
        for (double p : products)
            for (double x : f) next.push_back(p * x);
        std::sort(next.rbegin(), next.rend());
        if (next.size() > k) next.resize(k);
        products = std::move(next);
    }
    out.values = std::move(products);
    out.degree = used_degree;
    return out;
}

/// approx_numbers plus oracle values and the largest relative deviation.
inline ApproxReport approx_numbers_with_oracle(const AffineSymbol& sym, std::size_t k) {
    ApproxReport rep = approx_numbers(sym, k);
    const auto oracle = approx_oracle(sym, k);
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
        const double o = i < oracle.values.size() ? oracle.values[i] : 0.0;
        worst = std::max(worst, std::abs(o - rep.values[i]) / rep.values[i]);
    }
    rep.oracle_values = oracle.values;
    rep.oracle_degree = oracle.degree;
    rep.max_rel_delta = worst;
    return rep;
}

}  // namespace fockdyn
