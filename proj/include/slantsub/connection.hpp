#pragma once

#include <vector>

#include "slantsub/geometry.hpp"

namespace slantsub {

/// Gamma^k_{ij} at a point; gamma[k](i,j) indexes the upper slot by k.
struct ChristoffelSample {
    Vec point;
    std::vector<Mat> gamma;

    double at(int k, int i, int j) const { return gamma[k](i, j); }
    /// (Gamma(x,y))^k = Gamma^k_{ij} x^i y^j
    Vec apply(const Vec& x, const Vec& y) const;
};

/// Levi-Civita connection coefficients from metric derivatives:
/// Gamma^k_{ij} = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
ChristoffelSample christoffel(const MetricField& g, const Point& p,
                              const DiffScheme& s = DiffScheme());

/// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_{ij} X^i Y^j, X used only through X(p).
Vec covariant_derivative(const MetricField& g, const VectorField& X, const VectorField& Y,
                         const Point& p, const DiffScheme& s = DiffScheme());
Vec covariant_derivative_along(const MetricField& g, const Vec& x, const VectorField& Y,
                               const Point& p, const DiffScheme& s = DiffScheme());
/// Same but with the Christoffel sample precomputed (hot loops).
Vec covariant_derivative_along(const ChristoffelSample& gamma, const Vec& x,
                               const VectorField& Y, const Point& p,
                               const DiffScheme& s = DiffScheme());

/// [X,Y]^k = X^i d_i Y^k - Y^i d_i X^k.
Vec lie_bracket(const VectorField& X, const VectorField& Y, const Point& p,
                const DiffScheme& s = DiffScheme());

/// Lowered curvature R_{ijkl} = g(R(d_i, d_j) d_k, d_l) with
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
struct CurvatureSample {
    Vec point;
    int n = 0;
    std::vector<double> lowered; // R_{ijkl}, row-major

    double at(int i, int j, int k, int l) const {
        return lowered[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    }
};

/// R^l_{ijk} so that R(d_i, d_j) d_k = R^l_{ijk} d_l. The connection is
/// differentiated with `outer`, the connection itself uses `inner`.
struct RiemannTensor {
    Vec point;
    int n = 0;
    std::vector<double> up; // R^l_{ijk}, index order (i,j,k,l)

    double at(int l, int i, int j, int k) const {
        return up[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    }
    Vec apply(const Vec& X, const Vec& Y, const Vec& Z) const;
};

RiemannTensor riemann_tensor(const MetricField& g, const Point& p,
                             const DiffScheme& inner = DiffScheme(),
                             const DiffScheme& outer = curvature_scheme());

CurvatureSample curvature_sample(const MetricField& g, const Point& p,
                                 const DiffScheme& inner = DiffScheme(),
                                 const DiffScheme& outer = curvature_scheme());

/// R(X,Y)Z for tangent vectors (coordinate-constant extension).
Vec riemann(const MetricField& g, const Point& p, const Vec& X, const Vec& Y, const Vec& Z,
            const DiffScheme& inner = DiffScheme(), const DiffScheme& outer = curvature_scheme());

/// g(R(X,Y)Z, W).
double riemann_lowered(const MetricField& g, const Point& p, const Vec& X, const Vec& Y,
                       const Vec& Z, const Vec& W, const DiffScheme& inner = DiffScheme(),
                       const DiffScheme& outer = curvature_scheme());

/// R(X,Y)Z computed through the field route (nested covariant derivatives of
/// arbitrary smooth extensions); exists so the tensoriality of `riemann` can be
/// checked against a second, independent evaluation path.
Vec riemann_fields(const MetricField& g, const VectorField& X, const VectorField& Y,
                   const VectorField& Z, const Point& p, const DiffScheme& inner = DiffScheme(),
                   const DiffScheme& outer = curvature_scheme());

/// K = g(R(U,V)V, U) / (|U|^2 |V|^2 - g(U,V)^2). Throws DegeneratePlane when
/// the Gram determinant vanishes to tolerance.
double sectional_curvature(const MetricField& g, const Point& p, const Vec& U, const Vec& V,
                           const DiffScheme& inner = DiffScheme(),
                           const DiffScheme& outer = curvature_scheme());
double sectional_curvature(const RiemannTensor& R, const Mat& G, const Vec& U, const Vec& V);

} // namespace slantsub
