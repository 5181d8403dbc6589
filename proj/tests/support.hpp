#pragma once

#include <cmath>

#include "slantsub/almost_contact.hpp"
#include "slantsub/scenario.hpp"
#include "slantsub/submersion.hpp"

namespace slantsub::testing {

inline Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

/// Poincare disk: g = 4/(1-r^2)^2 delta, curvature -1. Chart kept away from
/// the rim.
inline ModelPtr poincare_disk() {
    return make_model("poincare-disk", 2, Box::centered(2, 0.62),
                      MetricField([](const Point& p) -> Mat {
                          const double r2 = p.coords().squaredNorm();
                          const double lam = 4.0 / ((1 - r2) * (1 - r2));
                          return lam * Mat::Identity(2, 2);
                      }));
}

/// Stereographic chart of the unit round sphere: g = 4/(1+r^2)^2 delta,
/// curvature +1.
inline ModelPtr sphere_chart() {
    return make_model("sphere-chart", 2, Box::centered(2, 0.9),
                      MetricField([](const Point& p) -> Mat {
                          const double r2 = p.coords().squaredNorm();
                          const double lam = 4.0 / ((1 + r2) * (1 + r2));
                          return lam * Mat::Identity(2, 2);
                      }));
}

/// Quotient of flat R^3 by a screw motion: F(x,y,z) = R_{-z}(x,y). Fibres are
/// helices (T != 0) and the horizontal 2-plane distribution is
/// non-integrable (A != 0), which no paper example exercises.
inline SubmersionMap screw_submersion() {
    ModelPtr source_model =
        make_model("screw-source", 3, Box::centered(3, 0.7), MetricField::euclidean());
    Mat phi = Mat::Zero(3, 3);
    phi(1, 0) = -1.0; // phi(d/dx) = -d/dy
    phi(0, 1) = 1.0;
    Vec xi = Vec::Unit(3, 2);
    AlmostContactStructure structure = AlmostContactStructure::make(
        source_model, EndomorphismField::constant(phi), VectorField::constant(xi),
        OneFormField::constant(xi));

    MetricField target_metric([](const Point& p) -> Mat {
        const Vec w = p.coords();
        return (Mat::Identity(2, 2) + w * w.transpose()) / (1.0 + w.squaredNorm());
    });
    ModelPtr target = make_model("screw-target", 2, Box::centered(2, 1.1), target_metric);

    auto map_fn = [](const Point& p) -> Vec {
        const double x = p.coord(0), y = p.coord(1), z = p.coord(2);
        const double c = std::cos(z), s = std::sin(z);
        Vec out(2);
        out << x * c + y * s, -x * s + y * c;
        return out;
    };
    auto jac_fn = [](const Point& p) -> Mat {
        const double x = p.coord(0), y = p.coord(1), z = p.coord(2);
        const double c = std::cos(z), s = std::sin(z);
        Mat J(2, 3);
        J << c, s, -x * s + y * c,
             -s, c, -x * c - y * s;
        return J;
    };
    return SubmersionMap{std::move(structure), target, map_fn, jac_fn};
}

/// Contact-type perturbation on R^3: eta = dz - y dx with the frame
/// {d/dx + y d/dz, d/dy, d/dz} declared orthonormal. Pointwise a valid almost
/// contact metric structure, but d(eta) != 0 and nabla xi != 0.
inline AlmostContactStructure sasakian_like_r3() {
    ModelPtr model = make_model("sasakian-like", 3, Box::centered(3, 0.9),
                                MetricField([](const Point& p) -> Mat {
                                    const double y = p.coord(1);
                                    Mat g(3, 3);
                                    g << 1 + y * y, 0, -y,
                                         0, 1, 0,
                                         -y, 0, 1;
                                    return g;
                                }));
    EndomorphismField phi([](const Point& p) -> Mat {
        const double y = p.coord(1);
        Mat m = Mat::Zero(3, 3);
        m(1, 0) = 1.0;          // phi(d/dx) = d/dy
        m(0, 1) = -1.0;         // phi(d/dy) = -d/dx - y d/dz
        m(2, 1) = -y;
        return m;
    });
    VectorField xi = VectorField::constant(Vec::Unit(3, 2));
    OneFormField eta([](const Point& p) -> Vec {
        Vec e(3);
        e << -p.coord(1), 0, 1;
        return e;
    });
    return AlmostContactStructure::make(model, phi, xi, eta);
}

/// Almost contact metric structure on R^5 whose fundamental 2-form and eta
/// are constant (hence closed) but whose phi is a y2-dependent shear of the
/// flat one: the Nijenhuis torsion does not vanish, so the structure is not
/// normal and not cosymplectic. Coordinates (x1, y1, x2, y2, z),
/// t = sin(y2)/2, phi(d/dx1) = e^{-2t} d/dy1, phi(d/dy1) = -e^{2t} d/dx1.
inline AlmostContactStructure sheared_r5() {
    ModelPtr model = make_model("sheared-r5", 5, Box::centered(5, 0.9),
                                MetricField([](const Point& p) -> Mat {
                                    const double t = 0.5 * std::sin(p.coord(3));
                                    Vec d(5);
                                    d << std::exp(-2 * t), std::exp(2 * t), 1, 1, 1;
                                    return d.asDiagonal();
                                }));
    EndomorphismField phi([](const Point& p) -> Mat {
        const double t = 0.5 * std::sin(p.coord(3));
        Mat m = Mat::Zero(5, 5);
        m(1, 0) = std::exp(-2 * t); // phi(d/dx1)
        m(0, 1) = -std::exp(2 * t); // phi(d/dy1)
        m(3, 2) = 1.0;              // phi(d/dx2) = d/dy2
        m(2, 3) = -1.0;             // phi(d/dy2) = -d/dx2
        return m;
    });
    VectorField xi = VectorField::constant(Vec::Unit(5, 4));
    return AlmostContactStructure::make(model, phi, xi, OneFormField::constant(Vec::Unit(5, 4)));
}

} // namespace slantsub::testing
