#pragma once

// Shared scalar/matrix aliases, error types and small numerical helpers.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace fockdyn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (dimension mismatch, NaN, bad weights ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A declared size or search budget would be exceeded.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// The operation's preconditions on the operator are not met
/// (unbounded symbol, non-compact operator, non-cyclic operator, ...).
class Refused : public Error {
public:
    using Error::Error;
};

/// (I - A) xi = b has no solution within tolerance.
class NoFixedPoint : public Error {
public:
    NoFixedPoint(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// A numerical construction failed its own verification.
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Input is well-formed but outside what the implementation supports.
class Unsupported : public Error {
public:
    using Error::Error;
};

inline bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

inline bool all_finite(const ComplexVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    }
    return true;
}

/// Fock/Euclidean inner product <x, y> = sum x_j conj(y_j).
inline Complex inner(const ComplexVector& x, const ComplexVector& y) {
    // Eigen's dot conjugates its left operand.
    return y.dot(x);
}

inline double spectral_norm(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues()(0);
}

/// Number of singular values >= rel_threshold * sigma_max.
struct NumericalRank {
    int rank = 0;
    double threshold = 0.0;
    RealVector singular_values;
};

inline NumericalRank numerical_rank(const ComplexMatrix& m, double rel_threshold) {
    NumericalRank out;
    if (m.size() == 0) return out;
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    out.singular_values = svd.singularValues();
    const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
    out.threshold = rel_threshold * smax;
    if (smax == 0.0) return out;
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
        if (out.singular_values(i) >= out.threshold) ++out.rank;
    return out;
}

/// Rank with an absolute singular-value threshold.
inline int absolute_rank(const ComplexMatrix& m, double abs_threshold) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > abs_threshold) ++r;
    return r;
}

/// Worker count for internally parallel loops. FOCK_DYNAMICS_THREADS caps it;
/// 0 or unset means hardware concurrency.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FOCK_DYNAMICS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, hw));
    }
    return hw;
}

/// Multiply the vector by a unit scalar so that its largest-modulus entry is
/// real and positive. Used to canonicalize singular/eigen vectors.
inline ComplexVector fix_phase(ComplexVector v) {
    if (v.size() == 0) return v;
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const double m = std::abs(v(imax));
    if (m > 0) v *= std::conj(v(imax)) / m;
    return v;
}

}  // namespace fockdyn
