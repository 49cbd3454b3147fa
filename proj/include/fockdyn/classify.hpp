#pragma once

// Cyclicity verdicts for bounded C_phi. C_phi is cyclic iff A is invertible,
// its Jordan form has either no nontrivial block or exactly one block of
// size 2, and the eigenvalue list counted by geometric multiplicity admits
// no multiplicative relation lambda^alpha = 1.

#include "core.hpp"
#include "multi_index.hpp"
#include "polynomial.hpp"
#include "projection.hpp"
#include "relations.hpp"
#include "spectral.hpp"
#include "symbol.hpp"
#include "truncation.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fockdyn {

enum class VerdictStatus { Cyclic, NotCyclic, Undecided };

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Cyclic: return "cyclic";
        case VerdictStatus::NotCyclic: return "not_cyclic";
        case VerdictStatus::Undecided: return "undecided";
    }
    return "?";
}

struct VerdictReason {
    std::string code;
    std::optional<IntVector> alpha;
    std::string text;
};

struct CyclicityVerdict {
    VerdictStatus status = VerdictStatus::Undecided;
    std::vector<VerdictReason> reasons;
    std::optional<int> search_height;
    std::optional<double> relation_residual;
    bool exact_mode = false;

    bool has_reason(const std::string& code) const {
        for (const auto& r : reasons)
            if (r.code == code) return true;
        return false;
    }
};

struct ClassifyOptions {
    int height = 10;
    double relation_tol = 1e-9;
    double cluster_radius = 1e-7;
};

namespace detail {

inline std::string format_complex(Complex z) {
    std::ostringstream os;
    os.precision(6);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

// Exact entries matched one-to-one with the numeric list by nearest point.
inline ExactPolarSpec pair_exact_entries(const ExactPolarSpec& exact, const std::vector<Complex>& lambdas,
                                         double radius) {
    ExactPolarSpec out;
    out.tag_values = exact.tag_values;
    if (exact.eigenvalues.size() == lambdas.size() && lambdas.size() == 1) {
        out.eigenvalues = exact.eigenvalues;
        return out;
    }
    std::vector<Complex> values;
    for (std::size_t i = 0; i < exact.eigenvalues.size(); ++i) {
        auto v = exact.numeric_value(i);
        if (!v) throw InvalidInput("exact eigenvalue " + std::to_string(i) + " uses a tag without a value in tag_values");
        values.push_back(*v);
    }
    std::vector<bool> used(values.size(), false);
    for (const Complex& l : lambdas) {
        std::size_t best = values.size();
        double best_dist = radius;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double dist = std::abs(values[i] - l);
            if (!used[i] && dist <= best_dist) {
                best = i;
                best_dist = dist;
            }
        }
        if (best == values.size())
            throw InvalidInput("no exact eigenvalue within cluster_radius of computed eigenvalue " + format_complex(l));
        used[best] = true;
        out.eigenvalues.push_back(exact.eigenvalues[best]);
    }
    return out;
}

inline std::string alpha_text(const IntVector& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

}  // namespace detail

inline CyclicityVerdict classify_cyclicity(const AffineSymbol& sym, const ClassifyOptions& opt = {}) {
    const auto rep = check_boundedness(sym);
    if (!rep.bounded) throw Refused("C_phi is unbounded for this symbol; cyclicity is not defined");
    CyclicityVerdict v;
    v.exact_mode = sym.exact.has_value();

    Eigen::JacobiSVD<ComplexMatrix> svd(sym.a);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= sym.tol) {
        v.status = VerdictStatus::NotCyclic;
        v.reasons.push_back({"NOT_INVERTIBLE", std::nullopt, "A is singular, so the range of C_phi is not dense"});
        return v;
    }

    const SpectralData spec = eigen_decompose(sym.a, opt.cluster_radius, sym.tol);
    int size_two = 0, larger = 0;
    for (const auto& e : spec.eigenvalues)
        for (int b : e.block_sizes) {
            if (b == 2) ++size_two;
            if (b >= 3) ++larger;
        }
    if (larger > 0 || size_two > 1) {
        v.status = VerdictStatus::NotCyclic;
        v.reasons.push_back({"BAD_JORDAN", std::nullopt,
                             larger > 0 ? "A has a Jordan block of size at least 3"
                                        : "A has two Jordan blocks of size 2"});
        return v;
    }

    const std::vector<Complex> lhat = geometric_eigenvalue_list(spec);
    for (std::size_t i = 0; i < lhat.size(); ++i)
        for (std::size_t j = i + 1; j < lhat.size(); ++j)
            if (std::abs(lhat[i] - lhat[j]) <= opt.cluster_radius) {
                IntVector alpha(lhat.size(), 0);
                alpha[i] = 1;
                alpha[j] = -1;
                v.status = VerdictStatus::NotCyclic;
                v.reasons.push_back({"RELATION_FOUND", canonical_sign(alpha),
                                     "eigenvalue " + detail::format_complex(lhat[i]) +
                                         " has geometric multiplicity at least 2"});
                return v;
            }

    if (sym.exact) {
        const ExactPolarSpec paired = detail::pair_exact_entries(*sym.exact, lhat, opt.cluster_radius);
        const RelationResult r = exact_relation_decide(paired);
        if (r.status == RelationStatus::Found) {
            v.status = VerdictStatus::NotCyclic;
            v.reasons.push_back({"RELATION_FOUND", r.alpha,
                                 "exact multiplicative relation lambda^" + detail::alpha_text(r.alpha) + " = 1"});
        } else {
            v.status = VerdictStatus::Cyclic;
            v.reasons.push_back({"EXACT_NO_RELATION", std::nullopt,
                                 "A is invertible, its Jordan structure is admissible and the exact eigenvalue data "
                                 "admit no multiplicative relation"});
        }
        return v;
    }

    const RelationResult r = numeric_relation_search(lhat, opt.height, opt.relation_tol);
    if (r.status == RelationStatus::Found) {
        v.status = VerdictStatus::NotCyclic;
        v.relation_residual = r.residual;
        v.reasons.push_back({"RELATION_FOUND", r.alpha,
                             "numeric multiplicative relation lambda^" + detail::alpha_text(r.alpha) + " = 1"});
    } else {
        v.status = VerdictStatus::Undecided;
        v.search_height = opt.height;
        v.reasons.push_back({"NO_RELATION_UP_TO_HEIGHT", std::nullopt,
                             "no relation with |alpha|_inf <= " + std::to_string(opt.height) +
                                 "; floating-point data cannot prove independence"});
    }
    return v;
}

// ---------------------------------------------------------------------------

struct CyclicVectorReport {
    bool verdict = false;
    std::vector<MultiIndex> failing_indices;
    std::string basis_order_note;
    int degree_checked = 0;
    std::vector<int> permutation;  // L slot i holds linear_form_basis row permutation[i]
    Polynomial l_coefficients;
};

/// Coefficient test in the L basis: every f_alpha (case 2: every f_alpha
/// with alpha vanishing at the eigenvector slot of the Jordan chain), |alpha|
/// <= degree, must be nonzero.
inline CyclicVectorReport cyclic_vector_test(const AffineSymbol& sym, const Polynomial& f, int degree,
                                             const ClassifyOptions& opt = {}) {
    if (degree < 0) throw InvalidInput("degree must be nonnegative");
    if (static_cast<Eigen::Index>(f.dimension()) != sym.dimension()) throw InvalidInput("function dimension does not match symbol");
    const auto rep = check_boundedness(sym);
    if (!rep.compact) throw Refused("cyclic-vector test covers compact operators only (||A|| < 1)");
    const auto verdict = classify_cyclicity(sym, opt);
    if (verdict.status != VerdictStatus::Cyclic)
        throw Refused(std::string("operator is not established as cyclic (") + to_string(verdict.status) + ", " +
                      verdict.reasons.front().code + ")");

    const SpectralData spec = eigen_decompose(sym.a, opt.cluster_radius, sym.tol);
    const LinearFormBasis raw = linear_form_basis(sym, spec);
    const auto d = raw.dimension();
    std::vector<int> perm;
    int chain_end = -1;
    for (Eigen::Index i = 0; i < d; ++i)
        if (raw.chain_flags[static_cast<std::size_t>(i)]) chain_end = static_cast<int>(i);
    for (int i = 0; i < d; ++i)
        if (chain_end < 0 || (i != chain_end && i != chain_end - 1)) perm.push_back(i);
    if (chain_end >= 0) {
        perm.push_back(chain_end - 1);
        perm.push_back(chain_end);
    }
    const LinearFormBasis basis = raw.permuted(perm);

    CyclicVectorReport out;
    out.permutation = perm;
    out.degree_checked = degree;
    out.basis_order_note = chain_end < 0
                               ? "diagonalizable: every L_j is an eigenvector; all coefficients checked"
                               : "Jordan chain moved to the last two slots (eigenvector, then generalized "
                                 "eigenvector); coefficients with a nonzero exponent on the eigenvector slot are "
                                 "not checked";
    out.l_coefficients = expand_in_L_basis(f, basis, degree);

    // Coefficient scale: the largest coefficient of f in either basis, which
    // bounds the rounding error of the change of basis.
    const auto dd = static_cast<std::size_t>(d);
    const double scale = std::max(out.l_coefficients.max_abs_coefficient(), f.max_abs_coefficient());
    for (const auto& a : indices_up_to(dd, degree)) {
        if (chain_end >= 0 && a[dd - 2] != 0) continue;
        const double c = std::abs(out.l_coefficients.coefficient(a));
        if (c <= sym.tol * scale) out.failing_indices.push_back(a);
    }
    out.verdict = out.failing_indices.empty();
    return out;
}

/// sum_k weights[k] (C_phi^{powers[k]} f)(xi), evaluated through the
/// truncated matrix. For every convex combination this equals f(xi).
inline Complex convex_obstruction_value(const AffineSymbol& sym, const Polynomial& f, const std::vector<double>& weights,
                                        const std::vector<int>& powers) {
    if (weights.size() != powers.size() || weights.empty()) throw InvalidInput("weights and powers must be nonempty and of equal length");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidInput("weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > sym.tol) throw InvalidInput("weights do not sum to 1");
    int max_power = 0;
    for (int p : powers) {
        if (p < 0) throw InvalidInput("powers must be nonnegative");
        max_power = std::max(max_power, p);
    }
    if (static_cast<Eigen::Index>(f.dimension()) != sym.dimension()) throw InvalidInput("function dimension does not match symbol");
    const ComplexVector xi = fixed_point(sym);
    const TruncatedOperator op = assemble_truncated(sym, std::max(f.degree(), 0));
    std::vector<Complex> values;
    ComplexVector x = op.basis.to_orthonormal(f);
    for (int k = 0; k <= max_power; ++k) {
        values.push_back(op.basis.from_orthonormal(x).evaluate(xi));
        x = op.matrix * x;
    }
    Complex acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) acc += weights[k] * values[static_cast<std::size_t>(powers[k])];
    return acc;
}

}  // namespace fockdyn
