#pragma once

// Finite partitions of subsets of N^p with a minimum in every part,
// invertible "Vandermonde on the torus" node sets, and a Kronecker scan.

#include "core.hpp"
#include "multi_index.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace fockdyn {

struct DicksonPart {
    MultiIndex minimum;
    std::vector<MultiIndex> members;
};

namespace detail {

inline void dickson_recurse(std::vector<MultiIndex> e, std::vector<bool> fixed, std::vector<DicksonPart>& out) {
    if (e.empty()) return;
    const std::size_t p = e.front().size();
    std::size_t free_count = 0;
    for (std::size_t j = 0; j < p; ++j)
        if (!fixed[j]) ++free_count;
    std::sort(e.begin(), e.end(), GradedLess{});
    if (free_count <= 1) {
        // Totally ordered by the single free coordinate.
        out.push_back({e.front(), e});
        return;
    }
    const MultiIndex beta = e.front();
    std::vector<MultiIndex> e0;
    std::vector<bool> taken(e.size(), false);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (beta.dominated_by(e[i])) {
            e0.push_back(e[i]);
            taken[i] = true;
        }
    out.push_back({beta, e0});
    for (std::size_t j = 0; j < p; ++j) {
        if (fixed[j]) continue;
        for (int k = 0; k < beta[j]; ++k) {
            std::vector<MultiIndex> ejk;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (!taken[i] && e[i][j] == k) {
                    ejk.push_back(e[i]);
                    taken[i] = true;
                }
            auto f = fixed;
            f[j] = true;
            dickson_recurse(std::move(ejk), std::move(f), out);
        }
    }
}

}  // namespace detail

/// Partition of e such that every part contains an element below all of its
/// members (componentwise).
inline std::vector<DicksonPart> dickson_partition(std::vector<MultiIndex> e) {
    std::vector<DicksonPart> out;
    if (e.empty()) return out;
    const std::size_t p = e.front().size();
    for (const auto& a : e) {
        if (a.size() != p) throw InvalidInput("multi-indices have different lengths");
        if (!a.nonnegative()) throw InvalidInput("multi-indices must be nonnegative");
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    detail::dickson_recurse(std::move(e), std::vector<bool>(p, false), out);
    return out;
}

// ---------------------------------------------------------------------------

struct UnimodularNodes {
    std::vector<ComplexVector> nodes;
    double det_modulus = 0.0;
    double condition = 0.0;
    int attempts = 0;
};

/// w(i)^{alpha(j)} for integer (possibly negative) exponent vectors.
inline ComplexMatrix torus_vandermonde(const std::vector<ComplexVector>& nodes, const std::vector<std::vector<int>>& alphas) {
    const auto n = static_cast<Eigen::Index>(alphas.size());
    ComplexMatrix m(static_cast<Eigen::Index>(nodes.size()), n);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            Complex v = 1.0;
            for (std::size_t k = 0; k < alphas[j].size(); ++k)
                v *= std::pow(nodes[i](static_cast<Eigen::Index>(k)), alphas[j][k]);
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    return m;
}

/// Random points w(1..n) on the torus with det(w(i)^{alpha(j)}) != 0.
inline UnimodularNodes unimodular_nodes(const std::vector<std::vector<int>>& alphas, std::uint64_t seed = 0,
                                        int max_attempts = 100) {
    if (alphas.empty()) throw InvalidInput("empty exponent list");
    const std::size_t d = alphas.front().size();
    for (const auto& a : alphas)
        if (a.size() != d) throw InvalidInput("exponent vectors have different lengths");
    if (std::set<std::vector<int>>(alphas.begin(), alphas.end()).size() != alphas.size())
        throw InvalidInput("exponent vectors must be pairwise distinct");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    UnimodularNodes out;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<ComplexVector> nodes(alphas.size(), ComplexVector(static_cast<Eigen::Index>(d)));
        for (auto& w : nodes)
            for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = std::polar(1.0, angle(rng));
        const ComplexMatrix m = torus_vandermonde(nodes, alphas);
        const double det = std::abs(m.partialPivLu().determinant());
        if (det > 1e-6) {
            Eigen::JacobiSVD<ComplexMatrix> svd(m);
            const auto& s = svd.singularValues();
            out.nodes = std::move(nodes);
            out.det_modulus = det;
            out.condition = s(0) / s(s.size() - 1);
            out.attempts = attempt;
            return out;
        }
    }
    throw NumericalFailure("no invertible node set found in " + std::to_string(max_attempts) + " attempts", 0.0);
}

// ---------------------------------------------------------------------------

struct KroneckerResult {
    long long best_n = 0;
    double best_error = 0.0;
};

/// min over 0 <= n <= n_max of max_j |e^{i n theta_j} - target_j|.
inline KroneckerResult kronecker_density_demo(const std::vector<double>& thetas, const std::vector<Complex>& target,
                                              long long n_max) {
    if (thetas.size() != target.size()) throw InvalidInput("thetas and target differ in length");
    if (n_max < 0) throw InvalidInput("n_max must be nonnegative");
    KroneckerResult best{0, std::numeric_limits<double>::infinity()};
    for (long long n = 0; n <= n_max; ++n) {
        double err = 0.0;
        for (std::size_t j = 0; j < thetas.size() && err < best.best_error; ++j) {
            const double phase = std::fmod(static_cast<double>(n) * thetas[j], 2.0 * kPi);
            err = std::max(err, std::abs(std::polar(1.0, phase) - target[j]));
        }
        if (err < best.best_error) best = {n, err};
    }
    return best;
}

}  // namespace fockdyn
