#pragma once

// Exact restriction of C_phi to polynomials of degree <= N, written in the
// orthonormal basis e_alpha = z^alpha / ||z^alpha||.

#include "basis.hpp"
#include "core.hpp"
#include "symbol.hpp"

#include <algorithm>
#include <vector>

namespace fockdyn {

struct TruncatedOperator {
    GradedBasis basis;
    ComplexMatrix matrix;
    AffineSymbol symbol;

    ComplexVector apply(const ComplexVector& x) const { return matrix * x; }
    Polynomial apply(const Polynomial& f) const { return basis.from_orthonormal(matrix * basis.to_orthonormal(f)); }
};

/// Coefficients of (Az + b)^alpha for every alpha in the basis, column by
/// column (unnormalized monomial coordinates).
inline ComplexMatrix expansion_table(const AffineSymbol& sym, const GradedBasis& basis) {
    const auto d = basis.dimension();
    const auto m = basis.size();
    ComplexMatrix c = ComplexMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    c(0, 0) = 1.0;
    std::size_t prev_count = 1;  // rows that can be nonzero in the parent column
    int prev_degree = 0;
    for (std::size_t i = 1; i < m; ++i) {
        const MultiIndex& alpha = basis.index(i);
        if (alpha.degree() != prev_degree) {
            prev_count = count_up_to(d, alpha.degree() - 1);
            prev_degree = alpha.degree();
        }
        std::size_t j = 0;
        while (alpha[j] == 0) ++j;
        const auto parent = static_cast<Eigen::Index>(basis.position(alpha - MultiIndex::unit(d, j)));
        const auto col = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        for (std::size_t r = 0; r < prev_count; ++r) {
            const Complex v = c(static_cast<Eigen::Index>(r), parent);
            if (v == Complex(0.0)) continue;
            c(static_cast<Eigen::Index>(r), col) += v * sym.b(jj);
            for (std::size_t k = 0; k < d; ++k)
                c(static_cast<Eigen::Index>(basis.up(r, k)), col) += v * sym.a(jj, static_cast<Eigen::Index>(k));
        }
    }
    return c;
}

inline TruncatedOperator assemble_truncated(const AffineSymbol& sym, int n) {
    if (!check_boundedness(sym).bounded) throw Refused("C_phi is unbounded for this symbol");
    TruncatedOperator op{GradedBasis(static_cast<std::size_t>(sym.dimension()), n), ComplexMatrix(), sym};
    op.matrix = expansion_table(sym, op.basis);
    const auto m = static_cast<Eigen::Index>(op.basis.size());
    for (Eigen::Index col = 0; col < m; ++col) {
        const double inv = 1.0 / op.basis.norm(static_cast<std::size_t>(col));
        for (Eigen::Index r = 0; r < m; ++r)
            if (op.matrix(r, col) != Complex(0.0)) op.matrix(r, col) *= op.basis.norm(static_cast<std::size_t>(r)) * inv;
    }
    return op;
}

/// Eigenvalues of the truncated matrix. Composition never raises degree, so
/// the matrix is block upper triangular in the grading and the spectrum is
/// the union of the spectra of the homogeneous diagonal blocks.
inline std::vector<Complex> truncated_spectrum(const TruncatedOperator& op) {
    std::vector<Complex> out;
    const auto d = op.basis.dimension();
    std::size_t start = 0;
    for (int k = 0; k <= op.basis.max_degree(); ++k) {
        const std::size_t end = count_up_to(d, k);
        const auto len = static_cast<Eigen::Index>(end - start);
        const ComplexMatrix block = op.matrix.block(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(start), len, len);
        Eigen::ComplexEigenSolver<ComplexMatrix> es(block, false);
        for (Eigen::Index i = 0; i < len; ++i) out.push_back(es.eigenvalues()(i));
        start = end;
    }
    return out;
}

/// Largest k singular values of the truncated matrix, descending.
inline std::vector<double> truncated_singular_values(const TruncatedOperator& op, std::size_t k) {
    Eigen::BDCSVD<ComplexMatrix> svd(op.matrix);
    const RealVector& s = svd.singularValues();
    std::vector<double> out;
    for (Eigen::Index i = 0; i < s.size() && out.size() < k; ++i) out.push_back(s(i));
    return out;
}

}  // namespace fockdyn
