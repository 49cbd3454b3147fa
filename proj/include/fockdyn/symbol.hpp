#pragma once

// Affine symbols phi(z) = A z + b and the elementary facts about C_phi that
// depend only on (A, b): boundedness, compactness, fixed points, kernels and
// the adjoint data.

#include "core.hpp"
#include "exact.hpp"

#include <optional>

namespace fockdyn {

struct AffineSymbol {
    ComplexMatrix a;
    ComplexVector b;
    std::optional<ExactPolarSpec> exact;
    double tol = 1e-10;

    AffineSymbol() = default;
    AffineSymbol(ComplexMatrix a_, ComplexVector b_, double tol_ = 1e-10)
        : a(std::move(a_)), b(std::move(b_)), tol(tol_) {
        validate();
    }

    Eigen::Index dimension() const { return a.rows(); }

    void validate() const {
        if (a.rows() < 1 || a.rows() != a.cols()) throw InvalidInput("A must be a non-empty square matrix");
        if (b.size() != a.rows()) throw InvalidInput("dimensions of A and b disagree");
        if (!all_finite(a) || !all_finite(b)) throw InvalidInput("symbol has non-finite entries");
        if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidInput("tol must be positive");
        if (exact) exact->validate();
    }
};

struct BoundednessReport {
    bool bounded = false;
    bool compact = false;
    double operator_norm_of_A = 0.0;
    int isometric_subspace_dim = 0;
    std::optional<ComplexVector> violation_witness;
};

/// Boundedness criterion: ||A|| <= 1 and <Av, b> = 0 on the isometric
/// subspace {v : |Av| = |v|}; compact iff ||A|| < 1.
inline BoundednessReport check_boundedness(const AffineSymbol& sym) {
    sym.validate();
    const double tol = sym.tol;
    Eigen::JacobiSVD<ComplexMatrix> svd(sym.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    BoundednessReport rep;
    rep.operator_norm_of_A = s(0);
    rep.compact = s(0) < 1.0 - tol;
    const bool norm_ok = s(0) <= 1.0 + tol;

    const double bnorm = sym.b.norm();
    bool orth_ok = true;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) < 1.0 - 10.0 * tol) continue;
        ++rep.isometric_subspace_dim;
        ComplexVector v = svd.matrixV().col(i);
        const Complex pairing = inner(sym.a * v, sym.b);
        if (std::abs(pairing) > tol * bnorm * v.norm() && orth_ok) {
            orth_ok = false;
            rep.violation_witness = fix_phase(v);
        }
    }
    rep.bounded = norm_ok && orth_ok;
    if (!norm_ok) rep.compact = false;
    return rep;
}

/// Minimum-norm solution of (I - A) xi = b.
inline ComplexVector fixed_point(const AffineSymbol& sym) {
    sym.validate();
    const auto d = sym.dimension();
    const ComplexMatrix m = ComplexMatrix::Identity(d, d) - sym.a;
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const double cut = 10.0 * sym.tol * std::max(1.0, s(0));
    ComplexVector ub = svd.matrixU().adjoint() * sym.b;
    for (Eigen::Index i = 0; i < d; ++i) ub(i) = s(i) > cut ? ub(i) / s(i) : Complex(0.0);
    ComplexVector xi = svd.matrixV() * ub;
    const double residual = (m * xi - sym.b).norm();
    if (residual > sym.tol * (1.0 + sym.b.norm()))
        throw NoFixedPoint("no fixed point: b is not in Ran(I - A) (residual " + std::to_string(residual) + ")",
                           residual);
    return xi;
}

/// phi^n(z).
inline ComplexVector iterate_point(const AffineSymbol& sym, ComplexVector z, unsigned n) {
    sym.validate();
    if (z.size() != sym.dimension()) throw InvalidInput("point has wrong dimension");
    for (unsigned k = 0; k < n; ++k) z = sym.a * z + sym.b;
    return z;
}

/// k_w(z) = exp(<z, w> / 2).
inline Complex kernel_value(const ComplexVector& w, const ComplexVector& z) {
    if (w.size() != z.size()) throw InvalidInput("kernel arguments have different lengths");
    return std::exp(inner(z, w) / 2.0);
}

/// ||k_w|| = exp(|w|^2 / 4).
inline double kernel_norm(const ComplexVector& w) { return std::exp(w.squaredNorm() / 4.0); }

/// C_phi^* = W_{k_b, A^* z}: returns the weight point b and the matrix A^*.
struct AdjointData {
    ComplexVector weight_point;
    ComplexMatrix adjoint_matrix;
};

inline AdjointData adjoint_data(const AffineSymbol& sym) {
    sym.validate();
    return {sym.b, sym.a.adjoint()};
}

}  // namespace fockdyn
