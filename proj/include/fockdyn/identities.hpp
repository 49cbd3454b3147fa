#pragma once

// Finite identity checks: the adjoint pairing <C_phi z^alpha, z^beta> =
// <z^alpha, k_b (A^* z)^beta>, and the coefficient bound for iterates of
// sums of L^alpha along a Jordan chain.

#include "basis.hpp"
#include "core.hpp"
#include "multi_index.hpp"
#include "polynomial.hpp"
#include "projection.hpp"
#include "spectral.hpp"
#include "symbol.hpp"

#include <utility>
#include <vector>

namespace fockdyn {

struct PairingValues {
    Complex lhs;
    Complex rhs;
};

inline PairingValues adjoint_pairing_check(const AffineSymbol& sym, const MultiIndex& alpha, const MultiIndex& beta) {
    if (!check_boundedness(sym).bounded) throw Refused("C_phi is unbounded for this symbol");
    const auto d = static_cast<std::size_t>(sym.dimension());
    if (alpha.size() != d || beta.size() != d) throw InvalidInput("multi-index length does not match the symbol");
    if (!alpha.nonnegative() || !beta.nonnegative()) throw InvalidInput("multi-indices must be nonnegative");

    const double nb = monomial_norm(beta), na = monomial_norm(alpha);
    // <(Az+b)^alpha, z^beta> = coefficient of z^beta times ||z^beta||^2
    const Complex lhs = Polynomial::monomial(alpha).compose_affine(sym.a, sym.b).coefficient(beta) * nb * nb;

    // Coefficient of z^alpha in k_b (A^* z)^beta, k_b = sum_gamma prod (conj(b_j)/2)^gamma_j / gamma_j! z^gamma.
    const Polynomial adj = Polynomial::monomial(beta).compose_affine(sym.a.adjoint(), ComplexVector::Zero(sym.dimension()));
    Complex coeff = 0.0;
    for (const auto& [delta, c] : adj.terms()) {
        if (!delta.dominated_by(alpha)) continue;
        const MultiIndex gamma = alpha - delta;
        Complex k = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            const Complex bj = std::conj(sym.b(static_cast<Eigen::Index>(j))) / 2.0;
            for (int t = 1; t <= gamma[j]; ++t) k *= bj / double(t);
        }
        coeff += k * c;
    }
    const Complex rhs = std::conj(coeff) * na * na;
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------

namespace detail {

inline void require_bound_hypotheses(const LinearFormBasis& basis) {
    const auto d = basis.dimension();
    for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(basis.eigenvalues[static_cast<std::size_t>(i)]) >= 1.0)
            throw Refused("coefficient bound needs all eigenvalues inside the unit disc");
        if (basis.chain_flags[static_cast<std::size_t>(i)] && i != d - 1)
            throw Refused("coefficient bound needs the only Jordan chain in the last two slots");
    }
}

}  // namespace detail

/// max |c(alpha, D, j)| where C_phi^j (sum_{alpha in D} L^alpha) = sum c L^alpha.
inline double jordan_coefficient_bound_check(const LinearFormBasis& basis, const std::vector<MultiIndex>& subset, int j) {
    detail::require_bound_hypotheses(basis);
    if (j < 0) throw InvalidInput("iterate index must be nonnegative");
    const auto d = basis.dimension();
    Polynomial g(static_cast<std::size_t>(d));
    for (const auto& a : subset) {
        if (static_cast<Eigen::Index>(a.size()) != d) throw InvalidInput("multi-index length does not match the basis");
        g.add(a, 1.0);
    }
    ComplexMatrix mj = ComplexMatrix::Identity(d, d);
    const ComplexMatrix m = basis.action_matrix();
    for (int t = 0; t < j; ++t) mj = mj * m;
    return g.compose_affine(mj, ComplexVector::Zero(d)).max_abs_coefficient();
}

inline double jordan_coefficient_bound_check(const AffineSymbol& sym, const LinearFormBasis& basis,
                                             const std::vector<MultiIndex>& subset, int j) {
    sym.validate();
    if (basis.dimension() != sym.dimension()) throw InvalidInput("basis dimension does not match the symbol");
    return jordan_coefficient_bound_check(basis, subset, j);
}

struct BoundThreshold {
    int threshold_j = -1;  // smallest J with the bound for all J <= j <= j_max; -1 if none
    std::vector<double> maxima;  // index j = 0..j_max
};

inline BoundThreshold find_bound_threshold(const LinearFormBasis& basis, const std::vector<MultiIndex>& subset,
                                           int j_max, double slack = 1e-12) {
    detail::require_bound_hypotheses(basis);
    BoundThreshold out;
    const auto d = basis.dimension();
    Polynomial g(static_cast<std::size_t>(d));
    for (const auto& a : subset) g.add(a, 1.0);
    const ComplexMatrix m = basis.action_matrix();
    ComplexMatrix mj = ComplexMatrix::Identity(d, d);
    for (int j = 0; j <= j_max; ++j) {
        out.maxima.push_back(g.compose_affine(mj, ComplexVector::Zero(d)).max_abs_coefficient());
        mj = mj * m;
    }
    int j = j_max;
    while (j >= 0 && out.maxima[static_cast<std::size_t>(j)] <= 1.0 + slack) --j;
    out.threshold_j = j == j_max ? -1 : j + 1;
    return out;
}

}  // namespace fockdyn
