#pragma once

// Homogeneous projections P_N around a point xi, expansion in the L basis
// f = sum f_alpha L^alpha, and coefficient masks.

#include "core.hpp"
#include "multi_index.hpp"
#include "polynomial.hpp"
#include "spectral.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace fockdyn {

inline constexpr int kPolynomialDegreeCap = 128;

enum class ProjectionMode { Recentering, Quadrature };

inline ProjectionMode parse_projection_mode(const std::string& s) {
    if (s == "recentering") return ProjectionMode::Recentering;
    if (s == "quadrature") return ProjectionMode::Quadrature;
    throw InvalidInput("unknown projection mode '" + s + "' (expected recentering or quadrature)");
}

/// Part of f that is homogeneous of degree n in (z - xi), returned in
/// monomial coefficients of z.
inline Polynomial project_homogeneous(const Polynomial& f, const ComplexVector& xi, int n,
                                      ProjectionMode mode = ProjectionMode::Recentering) {
    const auto d = f.dimension();
    if (static_cast<std::size_t>(xi.size()) != d) throw InvalidInput("center has wrong dimension");
    if (n < 0) throw InvalidInput("projection degree must be nonnegative");
    if (f.degree() > kPolynomialDegreeCap) throw InvalidInput("polynomial degree exceeds the supported cap");
    const auto dd = static_cast<Eigen::Index>(d);
    const ComplexMatrix id = ComplexMatrix::Identity(dd, dd);
    if (f.degree() < n) return Polynomial(d);

    if (mode == ProjectionMode::Recentering) {
        const Polynomial g = f.compose_affine(id, xi).homogeneous_part(n);
        return g.compose_affine(id, -xi);
    }
    // (1/M) sum_m f(e^{i t_m}(z - xi) + xi) e^{-i n t_m}, t_m = 2 pi m / M.
    const int nodes = std::max(f.degree(), 0) + n + 1;
    Polynomial acc(d);
    for (int m = 0; m < nodes; ++m) {
        const double t = 2.0 * kPi * m / nodes;
        const Complex w = std::polar(1.0, t);
        acc += f.compose_affine(w * id, (Complex(1.0) - w) * xi) * (std::polar(1.0, -n * t) / double(nodes));
    }
    return acc;
}

/// Coefficients g_alpha with f = sum g_alpha L^alpha, |alpha| <= degree.
inline Polynomial expand_in_L_basis(const Polynomial& f, const LinearFormBasis& basis, int degree) {
    const auto d = basis.dimension();
    if (static_cast<Eigen::Index>(f.dimension()) != d) throw InvalidInput("polynomial dimension does not match basis");
    if (f.degree() > kPolynomialDegreeCap) throw InvalidInput("polynomial degree exceeds the supported cap");
    Eigen::JacobiSVD<ComplexMatrix> svd(basis.rows);
    const auto& s = svd.singularValues();
    const double cond = s(d - 1) > 0 ? s(0) / s(d - 1) : std::numeric_limits<double>::infinity();
    if (cond > 1e8) throw NumericalFailure("L basis is too ill-conditioned (condition " + std::to_string(cond) + ")", cond);
    const ComplexMatrix rinv = basis.rows.inverse();
    // g(u) = f(R^{-1} u + xi)
    const Polynomial g = f.compose_affine(rinv, basis.xi);
    return g.filtered([degree](const MultiIndex& a) { return a.degree() <= degree; });
}

/// Inverse of expand_in_L_basis: f(z) = g(R (z - xi)).
inline Polynomial from_L_basis(const Polynomial& g, const LinearFormBasis& basis) {
    if (static_cast<Eigen::Index>(g.dimension()) != basis.dimension())
        throw InvalidInput("polynomial dimension does not match basis");
    return g.compose_affine(basis.rows, -(basis.rows * basis.xi));
}

/// C_phi written on L-basis coefficients: g(u) -> g(M u), M = action matrix.
inline Polynomial apply_in_L_basis(const Polynomial& g, const LinearFormBasis& basis) {
    const auto d = basis.dimension();
    return g.compose_affine(basis.action_matrix(), ComplexVector::Zero(d));
}

using IndexPredicate = std::function<bool(const MultiIndex&)>;

inline Polynomial mask_coefficients(const Polynomial& f, const IndexPredicate& keep) { return f.filtered(keep); }

inline IndexPredicate degree_equals(int n) {
    return [n](const MultiIndex& a) { return a.degree() == n; };
}

/// alpha vanishes outside the union of the slot groups and
/// sum_{j in groups[i]} alpha_j = degrees[i] for every i.
inline IndexPredicate group_degree_mask(std::vector<std::vector<std::size_t>> groups, std::vector<int> degrees) {
    if (groups.size() != degrees.size()) throw InvalidInput("group and degree lists differ in length");
    return [groups = std::move(groups), degrees = std::move(degrees)](const MultiIndex& a) {
        std::vector<bool> covered(a.size(), false);
        for (std::size_t i = 0; i < groups.size(); ++i) {
            int s = 0;
            for (auto j : groups[i]) {
                if (j >= a.size()) return false;
                covered[j] = true;
                s += a[j];
            }
            if (s != degrees[i]) return false;
        }
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!covered[j] && a[j] != 0) return false;
        return true;
    };
}

}  // namespace fockdyn
