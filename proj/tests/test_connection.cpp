#include <doctest.h>

#include <cmath>

#include "slantsub/connection.hpp"
#include "slantsub/scenario.hpp"
#include "support.hpp"

using namespace slantsub;
using slantsub::testing::vec;

TEST_CASE("christoffel: flat metric vanishes, Poincare disk matches closed form") {
    ModelPtr e = make_euclidean_model("e", 3);
    Point p = e->point(vec({0.1, 0.2, 0.3}));
    const auto flat = christoffel(e->metric(), p);
    for (const Mat& gk : flat.gamma) CHECK(gk.cwiseAbs().maxCoeff() <= 1e-9);

    // Conformal metric lam*delta with lam = 4/(1-r^2)^2:
    // Gamma^1_11 = d_1 lam / (2 lam) = 2x/(1-r^2) = 4/3 at (0.5, 0).
    ModelPtr disk = slantsub::testing::poincare_disk();
    Point q = disk->point(vec({0.5, 0.0}));
    const auto gam = christoffel(disk->metric(), q);
    CHECK(gam.at(0, 0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    // Torsion-free by construction.
    for (int k = 0; k < 2; ++k)
        CHECK((gam.gamma[k] - gam.gamma[k].transpose()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("christoffel: KIM metric at the origin") {
    // At x1 = x3 = 0: tau = 0, tau' = 1; the only nonzero coefficients are
    // Gamma^5_{ij} = -1 for i, j in {1, 3} (hand-evaluated Levi-Civita).
    Scenario kim = builtin_scenario("kim-r5");
    Point p = kim.structure.model().point(Vec::Zero(5));
    const auto gam = christoffel(kim.structure.metric(), p);
    for (int k = 0; k < 5; ++k)
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const bool special = k == 4 && (i == 0 || i == 2) && (j == 0 || j == 2);
                const double want = special ? -1.0 : 0.0;
                CHECK(gam.at(k, i, j) == doctest::Approx(want).epsilon(1e-6));
            }
}

TEST_CASE("covariant_derivative: constants, xi, and metric compatibility") {
    ModelPtr e = make_euclidean_model("e", 3);
    Point p = e->point(vec({0.2, -0.1, 0.3}));
    VectorField X = VectorField::constant(vec({1, 2, 3}));
    VectorField Y = VectorField::constant(vec({-1, 0, 2}));
    CHECK(covariant_derivative(e->metric(), X, Y, p).norm() <= 1e-12);

    // nabla_xi xi = 0 on the flat cosymplectic structure.
    Scenario o = builtin_scenario("r2n1-cosymplectic(2)");
    Point q = o.structure.model().point(Vec::Zero(5));
    CHECK(covariant_derivative(o.structure.metric(), o.structure.xi(), o.structure.xi(), q)
              .norm() <= 1e-12);

    // X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla_X Z) over random smooth fields.
    Scenario kim = builtin_scenario("kim-r5");
    const auto& g = kim.structure.metric();
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        Point s = sample_point(kim.structure.model(), rng);
        VectorField A = random_smooth_field(kim.structure.model(), rng);
        VectorField B = random_smooth_field(kim.structure.model(), rng);
        VectorField C = random_smooth_field(kim.structure.model(), rng);
        ScalarField gbc([&](const Point& r) { return B(r).dot(g(r) * C(r)); });
        const Vec a = A(s);
        double lhs = 0.0;
        for (int ax = 0; ax < 5; ++ax)
            if (a[ax] != 0.0) lhs += a[ax] * numeric_partial(gbc, s, ax, DiffScheme());
        const double rhs = covariant_derivative(g, A, B, s).dot(g(s) * C(s)) +
                           B(s).dot(g(s) * covariant_derivative(g, A, C, s));
        CHECK(std::abs(lhs - rhs) <= 1e-6);
    }
}

TEST_CASE("lie_bracket: coordinate fields, a linear field, exact antisymmetry") {
    ModelPtr e = make_euclidean_model("e", 2);
    Point p = e->point(vec({0.3, 0.4}));
    VectorField d1 = VectorField::constant(vec({1, 0}));
    VectorField d2 = VectorField::constant(vec({0, 1}));
    CHECK(lie_bracket(d1, d2, p).norm() == 0.0);

    // [x2 d1, d2] = -d1.
    VectorField x2d1([](const Point& q) { return vec({q.coord(1), 0.0}); });
    CHECK((lie_bracket(x2d1, d2, p) - vec({-1.0, 0.0})).norm() <= 1e-9);

    Rng rng(23);
    Scenario kim = builtin_scenario("kim-r5");
    for (int i = 0; i < 10; ++i) {
        Point q = sample_point(kim.structure.model(), rng);
        VectorField X = random_smooth_field(kim.structure.model(), rng);
        VectorField Y = random_smooth_field(kim.structure.model(), rng);
        const Vec ab = lie_bracket(X, Y, q);
        const Vec ba = lie_bracket(Y, X, q);
        CHECK((ab + ba).norm() == 0.0); // exact by construction

        // Torsion-freeness ties the bracket to the connection.
        const Vec t = covariant_derivative(kim.structure.metric(), X, Y, q) -
                      covariant_derivative(kim.structure.metric(), Y, X, q) - ab;
        CHECK(t.norm() <= 1e-6);
    }
}

TEST_CASE("riemann: flat space, Poincare disk, round sphere") {
    ModelPtr e = make_euclidean_model("e", 3);
    Point p = e->point(vec({0.1, 0.0, -0.2}));
    CHECK(riemann(e->metric(), p, vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})).norm() <=
          1e-12);

    ModelPtr disk = slantsub::testing::poincare_disk();
    Rng rng(31);
    for (int i = 0; i < 5; ++i) {
        Point q = sample_point(*disk, rng);
        CHECK(sectional_curvature(disk->metric(), q, vec({1, 0}), vec({0, 1})) ==
              doctest::Approx(-1.0).epsilon(1e-5));
    }

    ModelPtr sphere = slantsub::testing::sphere_chart();
    for (int i = 0; i < 5; ++i) {
        Point q = sample_point(*sphere, rng);
        CHECK(sectional_curvature(sphere->metric(), q, vec({1, 0}), vec({0, 1})) ==
              doctest::Approx(1.0).epsilon(1e-5));
    }

    // Order-4 connection differencing agrees and is at least as accurate.
    Point q = disk->point(vec({0.31, -0.17}));
    const double k2 = sectional_curvature(disk->metric(), q, vec({1, 0}), vec({0, 1}),
                                          DiffScheme(), DiffScheme(1e-4, 2));
    const double k4 = sectional_curvature(disk->metric(), q, vec({1, 0}), vec({0, 1}),
                                          DiffScheme(), DiffScheme(1e-4, 4));
    CHECK(std::abs(k2 - k4) <= 1e-6);
    CHECK(k4 == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("curvature sample satisfies the tensor symmetries") {
    for (const char* name : {"kim-r5", "hyperbolic-line(-1)"}) {
        Scenario sc = builtin_scenario(name);
        Rng rng(41);
        Point p = sample_point(sc.structure.model(), rng);
        const CurvatureSample R = curvature_sample(sc.structure.metric(), p);
        const int n = R.n;
        double aij = 0, akl = 0, pair = 0, bianchi = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        aij = std::max(aij, std::abs(R.at(i, j, k, l) + R.at(j, i, k, l)));
                        akl = std::max(akl, std::abs(R.at(i, j, k, l) + R.at(i, j, l, k)));
                        pair = std::max(pair, std::abs(R.at(i, j, k, l) - R.at(k, l, i, j)));
                        bianchi = std::max(bianchi,
                                           std::abs(R.at(i, j, k, l) + R.at(j, k, i, l) +
                                                    R.at(k, i, j, l)));
                    }
        CHECK(aij <= 1e-5);
        CHECK(akl <= 1e-5);
        CHECK(pair <= 1e-5);
        CHECK(bianchi <= 1e-5);
    }
}

TEST_CASE("riemann is tensorial: constant and linear extensions agree") {
    ModelPtr disk = slantsub::testing::poincare_disk();
    Rng rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        Point p = sample_point(*disk, rng);
        const Vec x = rng.uniform_vector(2, -1, 1);
        const Vec y = rng.uniform_vector(2, -1, 1);
        const Vec z = rng.uniform_vector(2, -1, 1);
        const Vec base = riemann(disk->metric(), p, x, y, z);

        auto linear_ext = [&](const Vec& v) {
            Mat L(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) L(i, j) = rng.uniform(-0.5, 0.5);
            const Vec at = p.coords();
            return VectorField([v, L, at](const Point& q) -> Vec {
                return v + L * (q.coords() - at);
            });
        };
        const Vec field_route =
            riemann_fields(disk->metric(), linear_ext(x), linear_ext(y), linear_ext(z), p);
        CHECK((base - field_route).norm() <= 2e-5);
    }
}

TEST_CASE("sectional_curvature: plane invariance and degenerate input") {
    // Any plane in flat space is flat.
    ModelPtr e = make_euclidean_model("e", 4);
    Rng rng(61);
    Point pe = sample_point(*e, rng);
    CHECK(std::abs(sectional_curvature(e->metric(), pe, rng.uniform_vector(4, -1, 1),
                                       rng.uniform_vector(4, -1, 1))) <= 1e-9);

    ModelPtr disk = slantsub::testing::poincare_disk();
    Point p = disk->point(vec({0.2, -0.1}));
    const double k1 = sectional_curvature(disk->metric(), p, vec({1, 0}), vec({0, 1}));
    const double k2 =
        sectional_curvature(disk->metric(), p, vec({2, 1}), vec({-0.5, 1.7}));
    CHECK(std::abs(k1 - k2) <= 1e-6);
    CHECK_THROWS_WITH_AS(
        (void)sectional_curvature(disk->metric(), p, vec({1, 1}), vec({2, 2})),
        doctest::Contains("DegeneratePlane"), Error);
}
