#pragma once

// Rank of span{Proj C_phi^j f : 0 <= j < J} computed in the truncated matrix
// representation. Iterates are renormalized each step (|lambda|^{jN}
// underflows quickly); span and rank do not depend on the scaling.

#include "core.hpp"
#include "projection.hpp"
#include "spectral.hpp"
#include "truncation.hpp"

#include <optional>

namespace fockdyn {

struct OrbitProjector {
    enum class Kind { None, Homogeneous, LMask } kind = Kind::None;
    int degree = 0;        // Homogeneous: P_degree around the fixed point
    IndexPredicate mask;   // LMask: predicate on L-basis multi-indices

    static OrbitProjector none() { return {}; }
    static OrbitProjector homogeneous(int n) { return {Kind::Homogeneous, n, {}}; }
    static OrbitProjector l_mask(IndexPredicate p) { return {Kind::LMask, 0, std::move(p)}; }
};

struct OrbitRankResult {
    int rank = 0;
    double threshold = 0.0;
    RealVector singular_values;
    int columns = 0;
};

/// Matrix of the projector in the orthonormal coordinates of op's basis.
inline ComplexMatrix projector_matrix(const TruncatedOperator& op, const OrbitProjector& proj) {
    const auto m = static_cast<Eigen::Index>(op.basis.size());
    if (proj.kind == OrbitProjector::Kind::None) return ComplexMatrix::Identity(m, m);
    ComplexMatrix p(m, m);
    const ComplexVector xi = fixed_point(op.symbol);
    std::optional<LinearFormBasis> lb;
    if (proj.kind == OrbitProjector::Kind::LMask)
        lb = linear_form_basis(op.symbol, eigen_decompose(op.symbol.a));
    for (Eigen::Index c = 0; c < m; ++c) {
        const Polynomial e = Polynomial::monomial(op.basis.index(static_cast<std::size_t>(c)),
                                                  1.0 / op.basis.norm(static_cast<std::size_t>(c)));
        Polynomial img(op.basis.dimension());
        if (proj.kind == OrbitProjector::Kind::Homogeneous) {
            img = project_homogeneous(e, xi, proj.degree);
        } else {
            img = from_L_basis(mask_coefficients(expand_in_L_basis(e, *lb, op.basis.max_degree()), proj.mask), *lb);
        }
        // drop rounding residue outside the truncation (cannot occur in exact arithmetic)
        img = img.filtered([&](const MultiIndex& a) { return a.degree() <= op.basis.max_degree(); });
        p.col(c) = op.basis.to_orthonormal(img);
    }
    return p;
}

inline OrbitRankResult orbit_krylov_rank(const AffineSymbol& sym, const Polynomial& f, int degree, int steps,
                                         const OrbitProjector& proj = OrbitProjector::none(), bool renormalize = true,
                                         double rel_threshold = 1e-8) {
    if (steps <= 0) throw InvalidInput("orbit needs at least one step");
    if (static_cast<Eigen::Index>(f.dimension()) != sym.dimension()) throw InvalidInput("function dimension does not match symbol");
    if (f.degree() > degree) throw InvalidInput("function degree exceeds the truncation degree");
    const TruncatedOperator op = assemble_truncated(sym, degree);
    const ComplexMatrix p = projector_matrix(op, proj);
    const auto m = static_cast<Eigen::Index>(op.basis.size());
    ComplexMatrix cols(m, steps);
    ComplexVector x = op.basis.to_orthonormal(f);
    for (int j = 0; j < steps; ++j) {
        ComplexVector y = p * x;
        if (renormalize && y.norm() > 0) y /= y.norm();
        cols.col(j) = y;
        x = op.matrix * x;
        if (renormalize && x.norm() > 0) x /= x.norm();
    }
    const auto nr = numerical_rank(cols, rel_threshold);
    return {nr.rank, nr.threshold, nr.singular_values, steps};
}

}  // namespace fockdyn
