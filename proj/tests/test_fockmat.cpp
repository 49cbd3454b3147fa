#include "fockdyn_suite/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace fockdyn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

AffineSymbol diag_symbol(std::vector<Complex> l, ComplexVector b = {}) {
    const auto d = static_cast<Eigen::Index>(l.size());
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) a(i, i) = l[static_cast<std::size_t>(i)];
    if (b.size() == 0) b = ComplexVector::Zero(d);
    return AffineSymbol(a, b);
}

ComplexMatrix jordan_a1() {
    ComplexMatrix m(2, 2);
    m << 0.5, 0.25, 0.0, 0.5;
    return m;
}

ComplexMatrix jordan_a2() {
    ComplexMatrix m(3, 3);
    m << 0.5, 0.25, 0.0, 0.0, 0.5, 0.25, 0.0, 0.0, 0.5;
    return m;
}

}  // namespace

// --- truncation -------------------------------------------------------------

TEST_CASE("truncated matrix examples", "[fockmat]") {
    const auto op = assemble_truncated(diag_symbol({0.5}), 2);
    ComplexMatrix want = ComplexMatrix::Zero(3, 3);
    want.diagonal() << 1.0, 0.5, 0.25;
    CHECK((op.matrix - want).norm() < 1e-15);

    ComplexVector one(1);
    one << 1.0;
    const auto shifted = assemble_truncated(diag_symbol({0.5}, one), 1);
    CHECK_THAT(std::abs(shifted.matrix(0, 0) - 1.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(shifted.matrix(1, 1) - 0.5), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(shifted.matrix(0, 1) - 1.0 / std::sqrt(2.0)), WithinAbs(0.0, 1e-15));
    CHECK(std::abs(shifted.matrix(1, 0)) == 0.0);

    const auto unitary = assemble_truncated(diag_symbol({std::polar(1.0, 0.3), std::polar(1.0, -1.1)}), 3);
    for (Eigen::Index i = 0; i < unitary.matrix.rows(); ++i) CHECK_THAT(std::abs(unitary.matrix(i, i)), WithinAbs(1.0, 1e-14));
    CHECK((unitary.matrix * unitary.matrix.adjoint() - ComplexMatrix::Identity(10, 10)).norm() < 1e-13);
    CHECK_THROWS_AS(assemble_truncated(AffineSymbol(ComplexMatrix::Identity(1, 1) * 2.0, ComplexVector::Zero(1)), 2), Refused);
}

TEST_CASE("truncated matrix is the exact restriction", "[fockmat]") {
    suite::Rng rng(51);
    for (int t = 0; t < 25; ++t) {
        const int d = suite::uniform_int(rng, 1, 3);
        const int n = suite::uniform_int(rng, 0, 5);
        const auto sym = suite::random_compact_symbol(rng, d, 0.95, 2.0);
        const auto op = assemble_truncated(sym, n);
        const Polynomial f = suite::random_polynomial(rng, static_cast<std::size_t>(d), n);
        const Polynomial direct = f.compose_affine(sym.a, sym.b);
        const Polynomial via = op.apply(f);
        const double scale = std::max(1.0, direct.max_abs_coefficient());
        CHECK(via.max_abs_diff(direct) <= 1e-12 * scale);
        // composition never raises the degree: block upper triangular
        for (std::size_t c = 0; c < op.basis.size(); ++c)
            for (std::size_t r = 0; r < op.basis.size(); ++r)
                if (op.basis.index(r).degree() > op.basis.index(c).degree())
                    CHECK(op.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) == Complex(0.0));
    }
}

TEST_CASE("truncated spectrum examples", "[fockmat]") {
    auto sorted = [](std::vector<Complex> v) {
        std::sort(v.begin(), v.end(), [](Complex a, Complex b) { return a.real() > b.real(); });
        return v;
    };
    const auto s1 = sorted(truncated_spectrum(assemble_truncated(diag_symbol({0.5, 0.3}), 1)));
    REQUIRE(s1.size() == 3);
    CHECK(std::abs(s1[0] - 1.0) < 1e-14);
    CHECK(std::abs(s1[1] - 0.5) < 1e-14);
    CHECK(std::abs(s1[2] - 0.3) < 1e-14);
    const auto s2 = sorted(truncated_spectrum(assemble_truncated(diag_symbol({0.5, 0.3}), 2)));
    const std::vector<double> want{1, 0.5, 0.3, 0.25, 0.15, 0.09};
    REQUIRE(s2.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(s2[i] - want[i]) < 1e-14);
}

TEST_CASE("truncated spectrum of a Jordan symbol", "[fockmat]") {
    const auto op = assemble_truncated(AffineSymbol(jordan_a2(), ComplexVector::Zero(3)), 3);
    std::vector<Complex> expected;
    for (const auto& a : indices_up_to(3, 3)) expected.push_back(std::pow(0.5, a.degree()));
    // defective blocks spread eigenvalues by roughly eps^(1/size)
    const auto m = suite::match_multisets(expected, truncated_spectrum(op), 1e-2);
    CHECK(m.unmatched == 0);
}

TEST_CASE("truncated singular values", "[fockmat]") {
    const auto sv = truncated_singular_values(assemble_truncated(diag_symbol({0.5}), 5), 6);
    for (int n = 0; n <= 5; ++n) CHECK_THAT(sv[static_cast<std::size_t>(n)], WithinRel(std::pow(0.5, n), 1e-14));
    const auto u = truncated_singular_values(assemble_truncated(diag_symbol({Complex(0, 1), std::polar(1.0, 2.0)}), 3), 10);
    for (double s : u) CHECK_THAT(s, WithinAbs(1.0, 1e-13));
}

TEST_CASE("truncated singular values grow with the degree", "[fockmat]") {
    suite::Rng rng(61);
    for (int t = 0; t < 8; ++t) {
        const int d = suite::uniform_int(rng, 1, 2);
        const auto sym = suite::random_compact_symbol(rng, d, 0.8, 2.0);
        std::vector<double> prev;
        for (int n = 2; n <= 12; n += 2) {
            const auto cur = truncated_singular_values(assemble_truncated(sym, n), 5);
            for (std::size_t i = 1; i < cur.size(); ++i) CHECK(cur[i] <= cur[i - 1] * (1 + 1e-12));
            for (std::size_t i = 0; i < prev.size() && i < cur.size(); ++i) CHECK(cur[i] >= prev[i] * (1 - 1e-10));
            prev = cur;
        }
    }
}

// --- approximation numbers ---------------------------------------------------

TEST_CASE("enumeration examples", "[fockmat]") {
    const auto a = enumerate_lambda_desc({0.5}, 4);
    REQUIRE(a.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(a[static_cast<std::size_t>(i)].first == MultiIndex{i});
        CHECK_THAT(a[static_cast<std::size_t>(i)].second, WithinRel(std::pow(0.5, i), 1e-15));
    }
    const auto b = enumerate_lambda_desc({0.5, 1.0 / 3.0}, 7);
    const std::vector<MultiIndex> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {3, 0}, {0, 2}};
    REQUIRE(b.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(b[i].first == want[i]);
    const auto c = enumerate_lambda_desc({0.3, 0.7, 0.1}, 1);
    REQUIRE(c.size() == 1);
    CHECK(c[0].first == MultiIndex(3));
    CHECK(c[0].second == 1.0);
}

TEST_CASE("enumeration agrees with brute force", "[fockmat]") {
    suite::Rng rng(71);
    for (int t = 0; t < 40; ++t) {
        const int d = suite::uniform_int(rng, 1, 3);
        std::vector<double> l;
        for (int j = 0; j < d; ++j) l.push_back(suite::uniform(rng, 0.05, 0.95));
        if (t % 4 == 0 && d > 1) l[1] = l[0];  // ties
        const std::size_t k = static_cast<std::size_t>(suite::uniform_int(rng, 1, 200));
        const auto got = enumerate_lambda_desc(l, k);
        // box guaranteed to hold the top-k: lambda_max^m below the k-th value
        const double kth = got.back().second;
        const double lmax = *std::max_element(l.begin(), l.end());
        const int box = static_cast<int>(std::ceil(std::log(kth) / std::log(lmax))) + 1;
        const auto brute = suite::brute_force_lambda_values(l, box);
        REQUIRE(brute.size() >= k);
        for (std::size_t i = 0; i < k; ++i) CHECK_THAT(got[i].second, WithinRel(brute[i], 1e-12));
        for (std::size_t i = 1; i < k; ++i) CHECK(got[i].second <= got[i - 1].second * (1 + 1e-12));
    }
}

TEST_CASE("approximation number examples", "[fockmat]") {
    const auto a = approx_numbers(diag_symbol({0.5}), 10);
    for (std::size_t n = 0; n < 10; ++n) CHECK_THAT(a.values[n], WithinRel(std::pow(0.5, static_cast<double>(n)), 1e-14));
    CHECK_THAT(a.closed_form_sum, WithinRel(2.0, 1e-14));

    ComplexVector half(1);
    half << 0.5;
    const auto b = approx_numbers_with_oracle(diag_symbol({0.5}, half), 10);
    CHECK_THAT(b.prefactor, WithinRel(std::exp(1.0 / 12.0), 1e-13));
    CHECK_THAT(b.values[0], WithinRel(std::exp(1.0 / 12.0), 1e-13));
    REQUIRE(b.max_rel_delta);
    CHECK(*b.max_rel_delta <= 1e-8);

    const auto c = approx_numbers(diag_symbol({0.5, 0.5}), 10);
    const std::vector<double> want{1, 0.5, 0.5, 0.25, 0.25, 0.25, 0.125, 0.125, 0.125, 0.125};
    for (std::size_t n = 0; n < 10; ++n) CHECK_THAT(c.values[n], WithinRel(want[n], 1e-14));

    CHECK_THROWS_AS(approx_numbers(diag_symbol({1.0}), 3), Refused);
}

TEST_CASE("approximation numbers match the SVD oracle", "[fockmat]") {
    suite::Rng rng(81);
    for (int t = 0; t < 8; ++t) {
        const auto sym = suite::random_compact_symbol(rng, suite::uniform_int(rng, 1, 3), 0.8, 2.0);
        const auto rep = approx_numbers_with_oracle(sym, 8);
        CHECK(*rep.max_rel_delta <= 1e-6);
        double prod = rep.prefactor;
        for (double l : rep.lambdas) prod /= 1.0 - l;
        CHECK_THAT(rep.closed_form_sum, WithinRel(prod, 1e-12));
        for (std::size_t i = 1; i < rep.values.size(); ++i) CHECK(rep.values[i] <= rep.values[i - 1]);
    }
}

TEST_CASE("approximation numbers with a singular A drop the null directions", "[fockmat]") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 0.5;
    const auto rep = approx_numbers_with_oracle(AffineSymbol(a, ComplexVector::Zero(2)), 5);
    CHECK(rep.lambdas.size() == 1);
    CHECK(*rep.max_rel_delta <= 1e-8);
}

// --- projections -------------------------------------------------------------

TEST_CASE("projection examples", "[fockmat]") {
    const Polynomial f = Polynomial::monomial(MultiIndex{2});
    const ComplexVector zero = ComplexVector::Zero(1);
    CHECK(project_homogeneous(f, zero, 2).max_abs_diff(f) == 0.0);
    CHECK(project_homogeneous(f, zero, 1).max_abs_coefficient() == 0.0);
    const ComplexVector one = ComplexVector::Ones(1);
    for (auto mode : {ProjectionMode::Recentering, ProjectionMode::Quadrature}) {
        const Polynomial p = project_homogeneous(f, one, 1, mode);  // 2(z - 1)
        CHECK(std::abs(p.coefficient(MultiIndex{1}) - 2.0) < 1e-13);
        CHECK(std::abs(p.coefficient(MultiIndex{0}) + 2.0) < 1e-13);
    }
    CHECK(parse_projection_mode("quadrature") == ProjectionMode::Quadrature);
    CHECK_THROWS_AS(parse_projection_mode("fft"), InvalidInput);
}

TEST_CASE("projections are complete, idempotent and orthogonal", "[fockmat]") {
    suite::Rng rng(91);
    for (int t = 0; t < 20; ++t) {
        const auto d = static_cast<std::size_t>(suite::uniform_int(rng, 1, 3));
        const Polynomial f = suite::random_polynomial(rng, d, 5);
        const ComplexVector xi = suite::gaussian_vector(rng, static_cast<Eigen::Index>(d));
        Polynomial sum(d);
        for (int n = 0; n <= 5; ++n) {
            const Polynomial p = project_homogeneous(f, xi, n);
            sum += p;
            CHECK(project_homogeneous(p, xi, n).max_abs_diff(p) < 1e-11);
            CHECK(project_homogeneous(p, xi, (n + 1) % 6).max_abs_coefficient() < 1e-11);
        }
        CHECK(sum.max_abs_diff(f) < 1e-11);
    }
}

TEST_CASE("L-basis expansion", "[fockmat]") {
    const AffineSymbol id_sym = diag_symbol({0.5, Complex(0, 0.4)});
    const auto basis = linear_form_basis(id_sym, eigen_decompose(id_sym.a));
    suite::Rng rng(5);
    const Polynomial f = suite::random_polynomial(rng, 2, 3);
    CHECK(expand_in_L_basis(f, basis, 3).max_abs_diff(f) < 1e-14);

    ComplexVector one(1);
    one << 1.0;
    const AffineSymbol shift = diag_symbol({0.5}, one);
    const auto b1 = linear_form_basis(shift, eigen_decompose(shift.a));
    const Polynomial g = expand_in_L_basis(Polynomial::monomial(MultiIndex{1}), b1, 1);  // z = L + 2
    CHECK(std::abs(g.coefficient(MultiIndex{0}) - 2.0) < 1e-14);
    CHECK(std::abs(g.coefficient(MultiIndex{1}) - 1.0) < 1e-14);

    for (int t = 0; t < 15; ++t) {
        const int d = suite::uniform_int(rng, 1, 3);
        const auto sym = suite::random_compact_symbol(rng, d, 0.9, 1.0);
        const auto lb = linear_form_basis(sym, eigen_decompose(sym.a));
        const Polynomial h = suite::random_polynomial(rng, static_cast<std::size_t>(d), 3);
        const Polynomial round = from_L_basis(expand_in_L_basis(h, lb, 3), lb);
        CHECK(round.max_abs_diff(h) < 1e-9 * std::max(1.0, h.max_abs_coefficient()));
    }
}

TEST_CASE("degree masks agree with homogeneous projections", "[fockmat]") {
    suite::Rng rng(15);
    for (int t = 0; t < 10; ++t) {
        const int d = suite::uniform_int(rng, 1, 3);
        const auto sym = suite::random_compact_symbol(rng, d, 0.9, 1.0);
        const auto lb = linear_form_basis(sym, eigen_decompose(sym.a));
        const Polynomial f = suite::random_polynomial(rng, static_cast<std::size_t>(d), 4);
        const Polynomial g = expand_in_L_basis(f, lb, 4);
        for (int n = 0; n <= 4; ++n) {
            const Polynomial masked = from_L_basis(mask_coefficients(g, degree_equals(n)), lb);
            CHECK(masked.max_abs_diff(project_homogeneous(f, lb.xi, n)) < 1e-9);
        }
        // masks are idempotent and commute
        const auto m1 = degree_equals(2);
        const auto m2 = group_degree_mask({{0}}, {1});
        CHECK(mask_coefficients(mask_coefficients(g, m1), m1).max_abs_diff(mask_coefficients(g, m1)) == 0.0);
        CHECK(mask_coefficients(mask_coefficients(g, m1), m2).max_abs_diff(mask_coefficients(mask_coefficients(g, m2), m1)) == 0.0);
        CHECK(mask_coefficients(g, [](const MultiIndex&) { return true; }).max_abs_diff(g) == 0.0);
    }
}

TEST_CASE("masks commute with the operator action for Jordan symbols", "[fockmat]") {
    for (const ComplexMatrix& a : {jordan_a1(), jordan_a2()}) {
        const AffineSymbol sym(a, ComplexVector::Zero(a.rows()));
        const auto lb = linear_form_basis(sym, eigen_decompose(a));
        const auto d = static_cast<std::size_t>(a.rows());
        // the whole space is one chain, so only the total degree is masked
        std::vector<std::size_t> chain;
        for (std::size_t j = 0; j < d; ++j) chain.push_back(j);
        for (const auto& alpha : indices_up_to(d, 4)) {
            const Polynomial e = Polynomial::monomial(alpha);
            for (int n = 0; n <= 4; ++n) {
                const auto mask = group_degree_mask({chain}, {n});
                const Polynomial lhs = mask_coefficients(apply_in_L_basis(e, lb), mask);
                const Polynomial rhs = apply_in_L_basis(mask_coefficients(e, mask), lb);
                CHECK(lhs.max_abs_diff(rhs) < 1e-10);
            }
        }
    }
}

// --- orbits ------------------------------------------------------------------

TEST_CASE("orbit rank for Jordan blocks", "[fockmat]") {
    const AffineSymbol a2(jordan_a2(), ComplexVector::Zero(3));
    suite::Rng rng(0);
    for (int t = 0; t < 3; ++t) {
        const Polynomial f = suite::random_polynomial(rng, 3, 4);
        CHECK(orbit_krylov_rank(a2, f, 4, 40, OrbitProjector::homogeneous(4)).rank <= 9);
    }
    const AffineSymbol a1(jordan_a1(), ComplexVector::Zero(2));
    Polynomial f(2);
    for (int k = 0; k <= 3; ++k) f.add(MultiIndex{k, 3 - k}, 1.0);
    CHECK(orbit_krylov_rank(a1, f, 3, 12, OrbitProjector::homogeneous(3)).rank == 4);
}

TEST_CASE("orbit rank of a cyclic diagonal example fills the space", "[fockmat]") {
    ComplexVector b(2);
    b << 0.4, -0.2;
    const AffineSymbol sym = diag_symbol({std::exp(-1.0), std::exp(-std::sqrt(2.0))}, b);
    suite::Rng rng(2);
    const Polynomial f = suite::random_polynomial(rng, 2, 2);
    CHECK(orbit_krylov_rank(sym, f, 2, 6).rank == 6);
}

TEST_CASE("orbit rank does not depend on renormalization", "[fockmat]") {
    suite::Rng rng(101);
    for (int t = 0; t < 15; ++t) {
        const int d = suite::uniform_int(rng, 1, 2);
        const auto sym = suite::random_compact_symbol(rng, d, 0.95, 1.0);
        const Polynomial f = suite::random_polynomial(rng, static_cast<std::size_t>(d), 2, 0.3);
        const int steps = suite::uniform_int(rng, 2, 6);
        const auto r1 = orbit_krylov_rank(sym, f, 2, steps, OrbitProjector::none(), true);
        const auto r2 = orbit_krylov_rank(sym, f, 2, steps, OrbitProjector::none(), false);
        CHECK(r1.rank == r2.rank);
    }
}

// --- identities and combinatorics ---------------------------------------------

TEST_CASE("adjoint pairing examples", "[fockmat]") {
    const auto p = adjoint_pairing_check(diag_symbol({0.5}), MultiIndex{1}, MultiIndex{1});
    CHECK(std::abs(p.lhs - 1.0) < 1e-14);
    CHECK(std::abs(p.rhs - 1.0) < 1e-14);
    const auto q = adjoint_pairing_check(diag_symbol({0.5, 0.3}), MultiIndex{1, 1}, MultiIndex{2, 0});
    CHECK(std::abs(q.lhs) == 0.0);
    CHECK(std::abs(q.rhs) == 0.0);
    ComplexVector one(1);
    one << 1.0;
    const auto r = adjoint_pairing_check(diag_symbol({0.5}, one), MultiIndex{1}, MultiIndex{0});
    CHECK(std::abs(r.lhs - 1.0) < 1e-14);
    CHECK(std::abs(r.rhs - 1.0) < 1e-14);
}

TEST_CASE("coefficient bound along a Jordan chain", "[fockmat]") {
    const AffineSymbol diag = diag_symbol({0.5, Complex(0, 0.3)});
    const auto db = linear_form_basis(diag, eigen_decompose(diag.a));
    for (int j : {0, 1, 5, 30}) CHECK(jordan_coefficient_bound_check(db, homogeneous_indices(2, 3), j) <= 1.0 + 1e-12);

    const AffineSymbol jor(jordan_a1(), ComplexVector::Zero(2));
    const auto jb = linear_form_basis(jor, eigen_decompose(jor.a));
    CHECK(jordan_coefficient_bound_check(jor, jb, homogeneous_indices(2, 3), 20) <= 1.0);
    const auto th = find_bound_threshold(jb, homogeneous_indices(2, 3), 200);
    CHECK(th.threshold_j >= 0);
    CHECK(th.maxima.size() == 201);
    CHECK_THROWS_AS(jordan_coefficient_bound_check(db, homogeneous_indices(2, 3), -1), InvalidInput);
}

TEST_CASE("partitions with minima", "[fockmat]") {
    const auto one = dickson_partition({MultiIndex{0, 0}});
    REQUIRE(one.size() == 1);
    CHECK(one[0].minimum == MultiIndex{0, 0});
    CHECK(dickson_partition({MultiIndex{1, 0}, MultiIndex{0, 1}}).size() == 2);
    suite::Rng rng(111);
    std::set<MultiIndex> e;
    while (e.size() < 40)
        e.insert(MultiIndex{suite::uniform_int(rng, 0, 5), suite::uniform_int(rng, 0, 5), suite::uniform_int(rng, 0, 5)});
    std::size_t covered = 0;
    for (const auto& part : dickson_partition({e.begin(), e.end()})) {
        for (const auto& m : part.members) CHECK(part.minimum.dominated_by(m));
        covered += part.members.size();
    }
    CHECK(covered == 40);
}

TEST_CASE("torus nodes", "[fockmat]") {
    const auto a = unimodular_nodes({{3}});
    CHECK_THAT(a.det_modulus, WithinAbs(1.0, 1e-12));
    const auto b = unimodular_nodes({{0}, {1}});
    CHECK(b.det_modulus > 1e-6);
    for (const auto& w : b.nodes) CHECK_THAT(std::abs(w(0)), WithinAbs(1.0, 1e-14));
    const auto c = unimodular_nodes({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-2, 1}, {3, -1}}, 4);
    CHECK(c.attempts <= 100);
    CHECK(std::abs(torus_vandermonde(c.nodes, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-2, 1}, {3, -1}}).determinant()) > 1e-6);
    CHECK(std::isfinite(c.condition));
    CHECK_THROWS(unimodular_nodes({{1}, {1}}));
}

TEST_CASE("torus accumulation demo", "[fockmat]") {
    const auto a = kronecker_density_demo({2 * kPi / 3}, {std::polar(1.0, 2 * kPi / 3)}, 10);
    CHECK(a.best_n == 1);
    CHECK(a.best_error < 1e-14);
    CHECK(kronecker_density_demo({1.0}, {-1.0}, 100000).best_error <= 0.01);
    suite::Rng rng(7);
    const std::vector<Complex> target{std::polar(1.0, suite::uniform(rng, 0, 6)), std::polar(1.0, suite::uniform(rng, 0, 6))};
    CHECK(kronecker_density_demo({1.0, std::sqrt(2.0)}, target, 1000000).best_error <= 0.05);
}

// --- convex combinations ------------------------------------------------------

TEST_CASE("convex combinations keep the value at the fixed point", "[fockmat]") {
    ComplexVector one(1);
    one << 1.0;
    const AffineSymbol s = diag_symbol({0.5}, one);
    suite::Rng rng(3);
    const Polynomial f = suite::random_polynomial(rng, 1, 3);
    const ComplexVector xi = fixed_point(s);
    CHECK(std::abs(convex_obstruction_value(s, f, {1.0}, {0}) - f.evaluate(xi)) < 1e-13);
    const Polynomial c = Polynomial::constant(1, Complex(2, -1));
    CHECK(std::abs(convex_obstruction_value(s, c, {0.25, 0.75}, {3, 1}) - Complex(2, -1)) < 1e-14);
    CHECK_THROWS_AS(convex_obstruction_value(s, f, {0.5, 0.6}, {0, 1}), InvalidInput);
}
