#pragma once

// Eigenstructure of A: clustered eigenvalues with Jordan block sizes (from
// numerical rank sequences), the reordered Schur form that separates the
// contractive part from the unimodular part, and the degree-one polynomials
// L_j(z) = v_j . (z - xi) built from Jordan chains of A^T.

#include "core.hpp"
#include "symbol.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace fockdyn {

struct EigenvalueInfo {
    Complex value;
    int algebraic_mult = 1;
    int geometric_mult = 1;
    std::vector<int> block_sizes;  // descending
};

struct SpectralData {
    std::vector<EigenvalueInfo> eigenvalues;
    bool diagonalizable = true;
    double cluster_radius = 1e-7;
    double rank_tol = 1e-10;
    /// Set when two clusters sit within 2 * cluster_radius, or when the rank
    /// sequence of some cluster was inconsistent with its size.
    bool ill_conditioned = false;

    int jordan_block_count() const {
        int n = 0;
        for (const auto& e : eigenvalues) n += static_cast<int>(e.block_sizes.size());
        return n;
    }
    int largest_block() const {
        int m = 0;
        for (const auto& e : eigenvalues)
            for (int b : e.block_sizes) m = std::max(m, b);
        return m;
    }
};

namespace detail {

inline ComplexMatrix matrix_power(const ComplexMatrix& m, int k) {
    ComplexMatrix r = ComplexMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

inline int nullity(const ComplexMatrix& m, double abs_threshold) {
    return static_cast<int>(m.rows()) - absolute_rank(m, abs_threshold);
}

// Orthonormal basis (columns) of the span of the right singular vectors of m
// belonging to its `dim` smallest singular values.
inline ComplexMatrix smallest_right_singular_space(const ComplexMatrix& m, int dim) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(dim);
}

// Orthonormal basis of the column span of w (columns assumed independent).
inline ComplexMatrix orthonormal_columns(const ComplexMatrix& w) {
    if (w.cols() == 0) return w;
    Eigen::HouseholderQR<ComplexMatrix> qr(w);
    return qr.householderQ() * ComplexMatrix::Identity(w.rows(), w.cols());
}

// Column-reduced echelon form of a set of independent columns: a canonical
// basis of their span (identity columns for coordinate subspaces).
inline ComplexMatrix canonical_column_basis(ComplexMatrix v) {
    const Eigen::Index rows = v.rows(), cols = v.cols();
    Eigen::Index col = 0;
    for (Eigen::Index r = 0; r < rows && col < cols; ++r) {
        Eigen::Index best = col;
        for (Eigen::Index c = col; c < cols; ++c)
            if (std::abs(v(r, c)) > std::abs(v(r, best))) best = c;
        if (std::abs(v(r, best)) < 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff())) continue;
        v.col(col).swap(v.col(best));
        v.col(col) /= v(r, col);
        for (Eigen::Index c = 0; c < cols; ++c)
            if (c != col) v.col(c) -= v(r, c) * v.col(col);
        ++col;
    }
    return v;
}

}  // namespace detail

/// Eigenvalues of `a` with algebraic/geometric multiplicities and Jordan block
/// sizes. Eigenvalues within cluster_radius are merged; wider clusters of the
/// size expected from a perturbed Jordan block are merged only when the rank
/// sequence of (A - mu I)^k confirms a defective eigenvalue.
inline SpectralData eigen_decompose(const ComplexMatrix& a, double cluster_radius = 1e-7, double rank_tol = 1e-10) {
    if (a.rows() < 1 || a.rows() != a.cols()) throw InvalidInput("eigen_decompose needs a square matrix");
    if (!all_finite(a)) throw InvalidInput("matrix has non-finite entries");
    if (!(cluster_radius > 0)) throw InvalidInput("cluster_radius must be positive");
    const auto d = a.rows();
    const double scale = std::max(1.0, spectral_norm(a));
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);

    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
    const ComplexVector raw = es.eigenvalues();

    // Stage 1: single linkage at cluster_radius.
    std::vector<std::vector<Eigen::Index>> clusters;
    {
        std::vector<int> owner(static_cast<std::size_t>(d), -1);
        for (Eigen::Index i = 0; i < d; ++i) {
            if (owner[static_cast<std::size_t>(i)] >= 0) continue;
            const int id_ = static_cast<int>(clusters.size());
            clusters.push_back({i});
            owner[static_cast<std::size_t>(i)] = id_;
            for (std::size_t q = 0; q < clusters.back().size(); ++q) {
                const Eigen::Index cur = clusters.back()[q];
                for (Eigen::Index j = 0; j < d; ++j)
                    if (owner[static_cast<std::size_t>(j)] < 0 && std::abs(raw(cur) - raw(j)) <= cluster_radius) {
                        owner[static_cast<std::size_t>(j)] = id_;
                        clusters.back().push_back(j);
                    }
            }
        }
    }
    auto centroid = [&](const std::vector<Eigen::Index>& c) {
        Complex s = 0.0;
        for (auto i : c) s += raw(i);
        return s / static_cast<double>(c.size());
    };
    auto rank_threshold = [&](int k) { return rank_tol * std::pow(scale, k); };

    // Stage 2: defect-aware merging.
    constexpr double kDefectEps = 1e-11;
    bool merged = true;
    while (merged && clusters.size() > 1) {
        merged = false;
        std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> pairs;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j)
                pairs.push_back({std::abs(centroid(clusters[i]) - centroid(clusters[j])), {i, j}});
        std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [dist, ij] : pairs) {
            std::vector<Eigen::Index> uni = clusters[ij.first];
            uni.insert(uni.end(), clusters[ij.second].begin(), clusters[ij.second].end());
            const int m = static_cast<int>(uni.size());
            const double radius = std::pow(kDefectEps, 1.0 / m) * scale;
            const Complex mu = centroid(uni);
            double spread = 0.0;
            for (auto i : uni) spread = std::max(spread, std::abs(raw(i) - mu));
            if (spread > radius) continue;
            const ComplexMatrix shifted = a - mu * id;
            if (detail::nullity(shifted, rank_threshold(1)) < 1) continue;
            if (detail::nullity(detail::matrix_power(shifted, m), rank_threshold(m)) != m) continue;
            clusters[ij.first] = std::move(uni);
            clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(ij.second));
            merged = true;
            break;
        }
    }

    SpectralData out;
    out.cluster_radius = cluster_radius;
    out.rank_tol = rank_tol;
    std::vector<Complex> centers;
    for (const auto& c : clusters) {
        EigenvalueInfo info;
        info.value = centroid(c);
        info.algebraic_mult = static_cast<int>(c.size());
        const int m = info.algebraic_mult;
        const ComplexMatrix shifted = a - info.value * id;
        std::vector<int> ranks(static_cast<std::size_t>(m) + 2, 0);
        ranks[0] = static_cast<int>(d);
        ComplexMatrix pw = id;
        for (int k = 1; k <= m + 1; ++k) {
            pw = pw * shifted;
            ranks[static_cast<std::size_t>(k)] = absolute_rank(pw, rank_threshold(k));
        }
        // number of blocks of size >= k
        std::vector<int> at_least(static_cast<std::size_t>(m) + 2, 0);
        for (int k = 1; k <= m + 1; ++k)
            at_least[static_cast<std::size_t>(k)] =
                std::max(0, ranks[static_cast<std::size_t>(k) - 1] - ranks[static_cast<std::size_t>(k)]);
        for (int k = m; k >= 1; --k) {
            const int exactly = std::max(0, at_least[static_cast<std::size_t>(k)] - at_least[static_cast<std::size_t>(k) + 1]);
            for (int t = 0; t < exactly; ++t) info.block_sizes.push_back(k);
        }
        const int total = std::accumulate(info.block_sizes.begin(), info.block_sizes.end(), 0);
        if (total != m || info.block_sizes.empty()) {
            out.ill_conditioned = true;
            info.block_sizes.assign(static_cast<std::size_t>(m), 1);
        }
        info.geometric_mult = static_cast<int>(info.block_sizes.size());
        if (info.geometric_mult != m) out.diagonalizable = false;
        centers.push_back(info.value);
        out.eigenvalues.push_back(std::move(info));
    }
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (std::abs(centers[i] - centers[j]) <= 2.0 * cluster_radius) out.ill_conditioned = true;

    // Deterministic order: by the position of the largest entry of an
    // eigenvector (diagonal input keeps its order), then by value.
    std::vector<std::pair<Eigen::Index, std::size_t>> keys;
    for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
        Eigen::JacobiSVD<ComplexMatrix> svd(a - out.eigenvalues[i].value * id, Eigen::ComputeFullV);
        Eigen::Index arg = 0;
        svd.matrixV().col(d - 1).cwiseAbs().maxCoeff(&arg);
        keys.push_back({arg, i});
    }
    std::stable_sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        const Complex u = out.eigenvalues[x.second].value, v = out.eigenvalues[y.second].value;
        return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
    });
    std::vector<EigenvalueInfo> sorted;
    for (const auto& k : keys) sorted.push_back(out.eigenvalues[k.second]);
    out.eigenvalues = std::move(sorted);
    return out;
}

/// Eigenvalues repeated once per Jordan block (geometric multiplicity).
inline std::vector<Complex> geometric_eigenvalue_list(const SpectralData& spec) {
    std::vector<Complex> out;
    for (const auto& e : spec.eigenvalues)
        for (std::size_t k = 0; k < e.block_sizes.size(); ++k) out.push_back(e.value);
    return out;
}

/// Eigenvalues repeated by algebraic multiplicity.
inline std::vector<Complex> algebraic_eigenvalue_list(const SpectralData& spec) {
    std::vector<Complex> out;
    for (const auto& e : spec.eigenvalues)
        for (int k = 0; k < e.algebraic_mult; ++k) out.push_back(e.value);
    return out;
}

// ---------------------------------------------------------------------------

struct SchurBlockForm {
    ComplexMatrix s;          // P^* A P, upper triangular
    ComplexMatrix p_unitary;  // P
    ComplexVector v;          // P^* b
    int split_index = 0;      // number of eigenvalues with |lambda| < 1
};

/// Schur form of A reordered so that eigenvalues of modulus < 1 come first.
inline SchurBlockForm schur_block_form(const AffineSymbol& sym) {
    const auto rep = check_boundedness(sym);
    if (!rep.bounded) throw Refused("schur_block_form needs a bounded composition operator");
    const auto d = sym.dimension();
    Eigen::ComplexSchur<ComplexMatrix> schur(sym.a);
    ComplexMatrix t = schur.matrixT();
    ComplexMatrix p = schur.matrixU();
    const double band = 1.0 - 10.0 * sym.tol;
    auto contractive = [&](Eigen::Index k) { return std::abs(t(k, k)) < band; };

    // Bubble contractive diagonal entries to the front with 2x2 unitary swaps.
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (Eigen::Index k = 0; k + 1 < d; ++k) {
            if (contractive(k) || !contractive(k + 1)) continue;
            const Complex a11 = t(k, k), a22 = t(k + 1, k + 1), r = t(k, k + 1);
            // eigenvector of the 2x2 block for a22
            Eigen::Vector2cd x(r, a22 - a11);
            const double nx = x.norm();
            Eigen::Matrix2cd g;
            if (nx == 0.0) {
                g << 0, 1, 1, 0;
            } else {
                x /= nx;
                g << x(0), -std::conj(x(1)), x(1), std::conj(x(0));
            }
            t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
            t.middleCols(k, 2) = t.middleCols(k, 2) * g;
            p.middleCols(k, 2) = p.middleCols(k, 2) * g;
            t(k + 1, k) = 0.0;
            swapped = true;
        }
    }
    SchurBlockForm out;
    out.s = t.triangularView<Eigen::Upper>();
    out.p_unitary = p;
    out.v = p.adjoint() * sym.b;
    out.split_index = 0;
    for (Eigen::Index k = 0; k < d; ++k)
        if (contractive(k)) ++out.split_index;
    return out;
}

// ---------------------------------------------------------------------------

struct LinearFormBasis {
    /// Row j holds the coefficients of L_j: L_j(z) = sum_k rows(j,k) (z_k - xi_k).
    ComplexMatrix rows;
    /// chain_flags[j]: C_phi L_j = lambda_j L_j + L_{j-1} (otherwise = lambda_j L_j).
    std::vector<bool> chain_flags;
    std::vector<Complex> eigenvalues;
    ComplexVector xi;

    Eigen::Index dimension() const { return rows.rows(); }

    /// Matrix M with C_phi L_i = sum_k M(i,k) L_k.
    ComplexMatrix action_matrix() const {
        const auto d = rows.rows();
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            m(j, j) = eigenvalues[static_cast<std::size_t>(j)];
            if (chain_flags[static_cast<std::size_t>(j)]) m(j, j - 1) = 1.0;
        }
        return m;
    }

    /// Basis with rows permuted: new row i = old row perm[i]. Chains must stay
    /// contiguous and in order for the flags to remain meaningful.
    LinearFormBasis permuted(const std::vector<int>& perm) const {
        LinearFormBasis out;
        const auto d = rows.rows();
        out.rows.resize(d, d);
        out.xi = xi;
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto src = perm[static_cast<std::size_t>(i)];
            out.rows.row(i) = rows.row(src);
            out.chain_flags.push_back(chain_flags[static_cast<std::size_t>(src)]);
            out.eigenvalues.push_back(eigenvalues[static_cast<std::size_t>(src)]);
        }
        return out;
    }
};

namespace detail {

// Jordan chains of a nilpotent matrix n with the given block sizes. Each
// chain is [n^{k-1} h, ..., n h, h].
inline std::vector<std::vector<ComplexVector>> jordan_chains(const ComplexMatrix& n, const std::vector<int>& blocks) {
    const auto m = n.rows();
    const int top = blocks.empty() ? 0 : *std::max_element(blocks.begin(), blocks.end());
    auto kernel_dim = [&](int k) {
        int s = 0;
        for (int b : blocks) s += std::min(b, k);
        return s;
    };
    std::vector<ComplexMatrix> kernels(static_cast<std::size_t>(top) + 1);
    kernels[0] = ComplexMatrix::Zero(m, 0);
    for (int k = 1; k <= top; ++k)
        kernels[static_cast<std::size_t>(k)] = smallest_right_singular_space(matrix_power(n, k), kernel_dim(k));

    std::vector<std::vector<ComplexVector>> level(static_cast<std::size_t>(top) + 1);
    std::vector<std::vector<ComplexVector>> chains;
    for (int k = top; k >= 1; --k) {
        const int need = static_cast<int>(std::count(blocks.begin(), blocks.end(), k));
        if (need == 0) continue;
        const ComplexMatrix& below = kernels[static_cast<std::size_t>(k) - 1];
        const auto& existing = level[static_cast<std::size_t>(k)];
        ComplexMatrix w(m, below.cols() + static_cast<Eigen::Index>(existing.size()));
        w.leftCols(below.cols()) = below;
        for (std::size_t i = 0; i < existing.size(); ++i) w.col(below.cols() + static_cast<Eigen::Index>(i)) = existing[i];
        const ComplexMatrix q = orthonormal_columns(w);
        const ComplexMatrix& kk = kernels[static_cast<std::size_t>(k)];
        const ComplexMatrix comp = kk - q * (q.adjoint() * kk);
        Eigen::JacobiSVD<ComplexMatrix> svd(comp, Eigen::ComputeFullV);
        ComplexMatrix heads = kk * svd.matrixV().leftCols(need);
        for (int i = 0; i < need; ++i) {
            ComplexVector h = heads.col(i);
            std::vector<ComplexVector> chain(static_cast<std::size_t>(k));
            chain[static_cast<std::size_t>(k) - 1] = h;
            for (int t = k - 2; t >= 0; --t) chain[static_cast<std::size_t>(t)] = n * chain[static_cast<std::size_t>(t) + 1];
            for (int t = 0; t < k; ++t) level[static_cast<std::size_t>(t) + 1].push_back(chain[static_cast<std::size_t>(t)]);
            chains.push_back(std::move(chain));
        }
    }
    return chains;
}

}  // namespace detail

/// Degree-one polynomials L_j with C_phi L_j = lambda_j L_j (+ L_{j-1}),
/// centered at the (minimum-norm) fixed point.
inline LinearFormBasis linear_form_basis(const AffineSymbol& sym, const SpectralData& spec) {
    sym.validate();
    const auto d = sym.dimension();
    const ComplexMatrix at = sym.a.transpose();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const double scale = std::max(1.0, spectral_norm(sym.a));

    struct Chain {
        std::vector<ComplexVector> vecs;
        Complex lambda;
        Eigen::Index key;
        std::size_t order;
    };
    std::vector<Chain> all;
    for (const auto& ev : spec.eigenvalues) {
        const int m = ev.algebraic_mult;
        const ComplexMatrix shifted = at - ev.value * id;
        const ComplexMatrix gb = detail::smallest_right_singular_space(detail::matrix_power(shifted, m), m);
        const ComplexMatrix nil = gb.adjoint() * shifted * gb;
        auto chains = detail::jordan_chains(nil, ev.block_sizes);

        // Canonicalize heads of equal length chains (same level) jointly.
        std::vector<std::vector<ComplexVector>> mapped;
        for (auto& ch : chains) {
            std::vector<ComplexVector> v;
            for (auto& w : ch) v.push_back(gb * w);
            mapped.push_back(std::move(v));
        }
        std::vector<bool> done(mapped.size(), false);
        for (std::size_t i = 0; i < mapped.size(); ++i) {
            if (done[i]) continue;
            std::vector<std::size_t> group;
            for (std::size_t j = i; j < mapped.size(); ++j)
                if (!done[j] && mapped[j].size() == mapped[i].size()) group.push_back(j);
            ComplexMatrix heads(d, static_cast<Eigen::Index>(group.size()));
            for (std::size_t g = 0; g < group.size(); ++g) heads.col(static_cast<Eigen::Index>(g)) = mapped[group[g]].back();
            ComplexMatrix canon;
            if (group.size() == 1) {
                canon = fix_phase(heads.col(0).normalized());
            } else {
                canon = detail::canonical_column_basis(heads);
            }
            const ComplexMatrix shifted_t = shifted;  // (A^T - lambda I)
            for (std::size_t g = 0; g < group.size(); ++g) {
                const std::size_t len = mapped[group[g]].size();
                std::vector<ComplexVector> ch(len);
                ch[len - 1] = canon.col(static_cast<Eigen::Index>(g));
                for (std::size_t t = len - 1; t-- > 0;) ch[t] = shifted_t * ch[t + 1];
                Eigen::Index key = 0;
                ch[0].cwiseAbs().maxCoeff(&key);
                all.push_back({std::move(ch), ev.value, key, all.size()});
                done[group[g]] = true;
            }
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const Chain& x, const Chain& y) {
        return x.key != y.key ? x.key < y.key : x.order < y.order;
    });

    LinearFormBasis out;
    out.xi = fixed_point(sym);
    out.rows.resize(d, d);
    Eigen::Index r = 0;
    for (const auto& ch : all) {
        for (std::size_t t = 0; t < ch.vecs.size(); ++t) {
            if (r >= d) throw NumericalFailure("Jordan chains exceed the dimension", 0.0);
            out.rows.row(r++) = ch.vecs[t].transpose();
            out.chain_flags.push_back(t > 0);
            out.eigenvalues.push_back(ch.lambda);
        }
    }
    if (r != d) throw NumericalFailure("Jordan chains do not span C^d", 0.0);

    // Verify A^T v_j = lambda_j v_j (+ v_{j-1}).
    double worst = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        const ComplexVector v = out.rows.row(j).transpose();
        ComplexVector res = at * v - out.eigenvalues[static_cast<std::size_t>(j)] * v;
        if (out.chain_flags[static_cast<std::size_t>(j)]) res -= out.rows.row(j - 1).transpose();
        worst = std::max(worst, res.norm() / std::max(1e-300, v.norm()));
    }
    if (worst > std::sqrt(sym.tol) * scale)
        throw NumericalFailure("defective Jordan chain failed verification (residual " + std::to_string(worst) + ")", worst);
    Eigen::JacobiSVD<ComplexMatrix> svd(out.rows);
    const auto& s = svd.singularValues();
    if (s(d - 1) <= 1e-14 * s(0)) throw NumericalFailure("linear forms are not independent", s(d - 1));
    return out;
}

}  // namespace fockdyn
