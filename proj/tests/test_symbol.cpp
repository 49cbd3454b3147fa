#include "fockdyn_suite/oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace fockdyn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

AffineSymbol scalar(Complex a, Complex b) {
    ComplexMatrix m(1, 1);
    m(0, 0) = a;
    ComplexVector v(1);
    v(0) = b;
    return AffineSymbol(m, v);
}

AffineSymbol diag2(Complex a, Complex b, Complex b0, Complex b1) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    ComplexVector v(2);
    v << b0, b1;
    return AffineSymbol(m, v);
}

}  // namespace

TEST_CASE("symbol validation", "[symbol]") {
    CHECK_THROWS_AS(AffineSymbol(ComplexMatrix::Zero(2, 3), ComplexVector::Zero(2)), InvalidInput);
    CHECK_THROWS_AS(AffineSymbol(ComplexMatrix::Zero(2, 2), ComplexVector::Zero(3)), InvalidInput);
    ComplexMatrix bad = ComplexMatrix::Zero(1, 1);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(AffineSymbol(bad, ComplexVector::Zero(1)), InvalidInput);
    CHECK_THROWS_AS(AffineSymbol(ComplexMatrix::Zero(1, 1), ComplexVector::Zero(1), 0.0), InvalidInput);
}

TEST_CASE("boundedness examples", "[symbol]") {
    const auto unit_shift = check_boundedness(scalar(1.0, 0.5));
    CHECK_FALSE(unit_shift.bounded);
    REQUIRE(unit_shift.violation_witness);
    CHECK_THAT(std::abs((*unit_shift.violation_witness)(0)), WithinRel(1.0, 1e-12));

    const auto contraction = check_boundedness(scalar(0.5, Complex(7, 3)));
    CHECK(contraction.bounded);
    CHECK(contraction.compact);

    const auto mixed = check_boundedness(diag2(1.0, 0.5, 0.0, 5.0));
    CHECK(mixed.bounded);
    CHECK_FALSE(mixed.compact);
    CHECK(mixed.isometric_subspace_dim == 1);

    CHECK_FALSE(check_boundedness(scalar(1.2, 0.0)).bounded);
}

TEST_CASE("boundedness is invariant under unitary conjugation", "[symbol]") {
    suite::Rng rng(21);
    for (int t = 0; t < 40; ++t) {
        const int d = suite::uniform_int(rng, 1, 3);
        ComplexMatrix a;
        ComplexVector b = suite::gaussian_vector(rng, d);
        switch (t % 3) {
            case 0: a = suite::random_compact_symbol(rng, d).a; break;
            case 1: a = suite::random_unitary(rng, d); break;
            default: {
                // one isometric direction, b either orthogonal to it or not
                ComplexMatrix m = ComplexMatrix::Zero(d, d);
                m(0, 0) = std::polar(1.0, suite::uniform(rng, 0, 6));
                for (int j = 1; j < d; ++j) m(j, j) = 0.5;
                a = m;
                if (t % 2) b(0) = 0.0;
            }
        }
        const AffineSymbol s(a, b);
        const ComplexMatrix p = suite::random_unitary(rng, d);
        const AffineSymbol c(p * a * p.adjoint(), p * b);
        const auto r1 = check_boundedness(s), r2 = check_boundedness(c);
        CHECK(r1.bounded == r2.bounded);
        CHECK(r1.compact == r2.compact);
        if (r1.compact) CHECK(r1.bounded);
    }
}

TEST_CASE("fixed points", "[symbol]") {
    CHECK_THAT(std::abs(fixed_point(scalar(0.5, 1.0))(0) - 2.0), WithinAbs(0.0, 1e-14));
    const ComplexVector xi = fixed_point(diag2(1.0, 0.5, 0.0, 1.0));
    CHECK(std::abs(xi(0)) < 1e-14);
    CHECK_THAT(std::abs(xi(1) - 2.0), WithinAbs(0.0, 1e-14));
    CHECK(fixed_point(diag2(0.3, Complex(0, 0.2), 0, 0)).norm() == 0.0);
    CHECK_THROWS_AS(fixed_point(scalar(1.0, 1.0)), NoFixedPoint);
}

TEST_CASE("fixed point residual and orbit invariance", "[symbol]") {
    suite::Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        const auto s = suite::random_compact_symbol(rng, suite::uniform_int(rng, 1, 3), 0.95, 3.0);
        const ComplexVector xi = fixed_point(s);
        const auto d = s.dimension();
        CHECK(((ComplexMatrix::Identity(d, d) - s.a) * xi - s.b).norm() <= s.tol * (1.0 + s.b.norm()));
        for (unsigned n : {0u, 1u, 10u, 100u})
            CHECK((iterate_point(s, xi, n) - xi).norm() <= std::max(1u, n) * s.tol * (1.0 + xi.norm()));
    }
}

TEST_CASE("iterates", "[symbol]") {
    ComplexVector z = ComplexVector::Zero(1);
    CHECK(iterate_point(scalar(0.5, 1.0), z, 0) == z);
    CHECK_THAT(std::abs(iterate_point(scalar(0.5, 1.0), z, 2)(0) - 1.5), WithinAbs(0.0, 1e-15));
}

TEST_CASE("reproducing kernels", "[symbol]") {
    ComplexVector w(1), z(1);
    w << 2.0;
    z << 2.0;
    CHECK_THAT(kernel_value(w, z).real(), WithinRel(std::exp(2.0), 1e-14));
    CHECK(kernel_value(ComplexVector::Zero(2), ComplexVector::Ones(2)) == Complex(1.0));
    ComplexVector w2(2);
    w2 << 2.0, 0.0;
    CHECK_THAT(kernel_norm(w2), WithinRel(std::exp(1.0), 1e-14));

    suite::Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        const ComplexVector a = suite::gaussian_vector(rng, 3), b = suite::gaussian_vector(rng, 3);
        CHECK(std::abs(kernel_value(a, b) - std::conj(kernel_value(b, a))) < 1e-12 * std::abs(kernel_value(a, b)));
        const double re = inner(b, a).real();
        CHECK_THAT(std::abs(kernel_value(a, b) * kernel_value(b, a)), WithinRel(std::exp(re), 1e-12));
    }
}

TEST_CASE("adjoint data", "[symbol]") {
    const auto ad = adjoint_data(scalar(Complex(0, 0.5), 1.0));
    CHECK(ad.weight_point(0) == Complex(1.0));
    CHECK(ad.adjoint_matrix(0, 0) == Complex(0, -0.5));
    const auto real_diag = adjoint_data(diag2(0.3, 0.7, 0, 0));
    CHECK(real_diag.adjoint_matrix == diag2(0.3, 0.7, 0, 0).a);
    CHECK(real_diag.weight_point.norm() == 0.0);
}
