#pragma once

// Graded monomial basis {z^alpha : |alpha| <= N} with Fock norms
// ||z^alpha||^2 = 2^|alpha| * prod alpha_j!.

#include "core.hpp"
#include "multi_index.hpp"
#include "polynomial.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

namespace fockdyn {

inline constexpr std::size_t kBasisBudget = 50000;

/// 2^|alpha| * prod alpha_j! as an exact integer.
inline boost::multiprecision::cpp_int monomial_norm_squared_exact(const MultiIndex& alpha) {
    if (!alpha.nonnegative()) throw InvalidInput("monomial exponents must be nonnegative");
    boost::multiprecision::cpp_int r = 1;
    for (std::size_t j = 0; j < alpha.size(); ++j)
        for (int k = 2; k <= alpha[j]; ++k) r *= k;
    r <<= static_cast<unsigned>(alpha.degree());
    return r;
}

/// ||z^alpha||.
inline double monomial_norm(const MultiIndex& alpha) {
    const auto sq = monomial_norm_squared_exact(alpha);
    if (boost::multiprecision::msb(sq) >= 1022)
        throw BudgetExceeded("monomial norm too large for double precision (degree " + std::to_string(alpha.degree()) +
                             ")");
    return std::sqrt(sq.convert_to<double>());
}

class GradedBasis {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    GradedBasis() = default;
    GradedBasis(std::size_t d, int max_degree) : d_(d), n_(max_degree) {
        if (d < 1) throw InvalidInput("basis dimension must be positive");
        if (max_degree < 0) throw InvalidInput("basis degree must be nonnegative");
        const std::size_t m = count_up_to(d, max_degree);
        if (m > kBasisBudget)
            throw BudgetExceeded("basis size " + std::to_string(m) + " exceeds budget " + std::to_string(kBasisBudget));
        indices_ = indices_up_to(d, max_degree);
        norms_.reserve(indices_.size());
        for (std::size_t i = 0; i < indices_.size(); ++i) {
            pos_.emplace(indices_[i], i);
            norms_.push_back(monomial_norm(indices_[i]));
        }
        up_.assign(indices_.size() * d, npos);
        for (std::size_t i = 0; i < indices_.size(); ++i) {
            if (indices_[i].degree() == max_degree) continue;
            for (std::size_t k = 0; k < d; ++k) up_[i * d + k] = pos_.at(indices_[i] + MultiIndex::unit(d, k));
        }
    }

    std::size_t dimension() const { return d_; }
    int max_degree() const { return n_; }
    std::size_t size() const { return indices_.size(); }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    const MultiIndex& index(std::size_t i) const { return indices_.at(i); }
    double norm(std::size_t i) const { return norms_.at(i); }

    std::optional<std::size_t> find(const MultiIndex& alpha) const {
        auto it = pos_.find(alpha);
        if (it == pos_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t position(const MultiIndex& alpha) const {
        auto p = find(alpha);
        if (!p) throw InvalidInput("multi-index outside the truncated basis");
        return *p;
    }
    /// Position of index(i) + e_k, or npos when that exceeds the degree.
    std::size_t up(std::size_t i, std::size_t k) const { return up_[i * d_ + k]; }

    /// Orthonormal coordinates x_alpha = f_alpha * ||z^alpha||.
    ComplexVector to_orthonormal(const Polynomial& f) const {
        if (f.dimension() != d_) throw InvalidInput("polynomial dimension does not match basis");
        ComplexVector x = ComplexVector::Zero(static_cast<Eigen::Index>(size()));
        for (const auto& [a, c] : f.terms()) {
            auto p = find(a);
            if (!p) throw InvalidInput("polynomial degree exceeds the truncation degree");
            x(static_cast<Eigen::Index>(*p)) = c * norms_[*p];
        }
        return x;
    }
    Polynomial from_orthonormal(const ComplexVector& x) const {
        if (static_cast<std::size_t>(x.size()) != size()) throw InvalidInput("coordinate vector has wrong length");
        Polynomial f(d_);
        for (std::size_t i = 0; i < size(); ++i) f.add(indices_[i], x(static_cast<Eigen::Index>(i)) / norms_[i]);
        return f;
    }

private:
    std::size_t d_ = 0;
    int n_ = 0;
    std::vector<MultiIndex> indices_;
    std::vector<double> norms_;
    std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> pos_;
    std::vector<std::size_t> up_;
};

}  // namespace fockdyn
