#include "slantsub/connection.hpp"

#include <cmath>

namespace slantsub {

Vec ChristoffelSample::apply(const Vec& x, const Vec& y) const {
    const int n = static_cast<int>(gamma.size());
    Vec out(n);
    for (int k = 0; k < n; ++k) out[k] = x.dot(gamma[k] * y);
    return out;
}

ChristoffelSample christoffel(const MetricField& g, const Point& p, const DiffScheme& s) {
    const int n = p.dim();
    const Mat G = g(p);
    Eigen::LDLT<Mat> ldlt(G);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        fail("NonPositiveDefinite", "metric is not positive definite at the sample point");
    const Mat Ginv = ldlt.solve(Mat::Identity(n, n));

    std::vector<Mat> dg(n); // dg[a](i,j) = d_a g_ij
    for (int a = 0; a < n; ++a) dg[a] = numeric_partial(g, p, a, s);

    ChristoffelSample out;
    out.point = p.coords();
    out.gamma.assign(n, Mat::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                double v = 0.0;
                for (int l = 0; l < n; ++l)
                    v += Ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                v *= 0.5;
                out.gamma[k](i, j) = v;
                out.gamma[k](j, i) = v;
            }
    return out;
}

Vec covariant_derivative_along(const ChristoffelSample& gamma, const Vec& x,
                               const VectorField& Y, const Point& p, const DiffScheme& s) {
    const int n = p.dim();
    Vec out = gamma.apply(x, Y(p));
    for (int a = 0; a < n; ++a) {
        if (x[a] == 0.0) continue;
        out += x[a] * numeric_partial(Y, p, a, s);
    }
    return out;
}

Vec covariant_derivative_along(const MetricField& g, const Vec& x, const VectorField& Y,
                               const Point& p, const DiffScheme& s) {
    return covariant_derivative_along(christoffel(g, p, s), x, Y, p, s);
}

Vec covariant_derivative(const MetricField& g, const VectorField& X, const VectorField& Y,
                         const Point& p, const DiffScheme& s) {
    return covariant_derivative_along(g, X(p), Y, p, s);
}

Vec lie_bracket(const VectorField& X, const VectorField& Y, const Point& p,
                const DiffScheme& s) {
    const int n = p.dim();
    const Vec xv = X(p);
    const Vec yv = Y(p);
    // Accumulated separately so that [X,Y] = -[Y,X] holds bitwise.
    Vec dy = Vec::Zero(n);
    Vec dx = Vec::Zero(n);
    for (int a = 0; a < n; ++a) {
        if (xv[a] != 0.0) dy += xv[a] * numeric_partial(Y, p, a, s);
        if (yv[a] != 0.0) dx += yv[a] * numeric_partial(X, p, a, s);
    }
    return dy - dx;
}

RiemannTensor riemann_tensor(const MetricField& g, const Point& p, const DiffScheme& inner,
                             const DiffScheme& outer) {
    const int n = p.dim();
    const ChristoffelSample gam = christoffel(g, p, inner);

    // dG[a][k](i,j) = d_a Gamma^k_{ij}
    std::vector<std::vector<Mat>> dG(n);
    for (int a = 0; a < n; ++a) {
        const double h = outer.step;
        dG[a].resize(n);
        if (outer.order == 2) {
            ChristoffelSample gp = christoffel(g, p.shifted(a, h), inner);
            ChristoffelSample gm = christoffel(g, p.shifted(a, -h), inner);
            for (int k = 0; k < n; ++k) dG[a][k] = (gp.gamma[k] - gm.gamma[k]) / (2.0 * h);
        } else {
            ChristoffelSample g2p = christoffel(g, p.shifted(a, 2 * h), inner);
            ChristoffelSample g1p = christoffel(g, p.shifted(a, h), inner);
            ChristoffelSample g1m = christoffel(g, p.shifted(a, -h), inner);
            ChristoffelSample g2m = christoffel(g, p.shifted(a, -2 * h), inner);
            for (int k = 0; k < n; ++k)
                dG[a][k] = (-g2p.gamma[k] + 8.0 * g1p.gamma[k] - 8.0 * g1m.gamma[k] +
                            g2m.gamma[k]) /
                           (12.0 * h);
        }
    }

    RiemannTensor R;
    R.point = p.coords();
    R.n = n;
    R.up.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
    auto idx = [n](int i, int j, int k, int l) {
        return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
    };
    // R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
    //           + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = dG[i][l](j, k) - dG[j][l](i, k);
                    for (int m = 0; m < n; ++m)
                        v += gam.gamma[l](i, m) * gam.gamma[m](j, k) -
                             gam.gamma[l](j, m) * gam.gamma[m](i, k);
                    R.up[idx(i, j, k, l)] = v;
                    R.up[idx(j, i, k, l)] = -v;
                }
    return R;
}

Vec RiemannTensor::apply(const Vec& X, const Vec& Y, const Vec& Z) const {
    Vec out = Vec::Zero(n);
    auto idx = [this](int i, int j, int k, int l) {
        return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
    };
    for (int i = 0; i < n; ++i) {
        if (X[i] == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            if (Y[j] == 0.0) continue;
            const double xy = X[i] * Y[j];
            for (int k = 0; k < n; ++k) {
                if (Z[k] == 0.0) continue;
                const double c = xy * Z[k];
                for (int l = 0; l < n; ++l) out[l] += c * up[idx(i, j, k, l)];
            }
        }
    }
    return out;
}

CurvatureSample curvature_sample(const MetricField& g, const Point& p, const DiffScheme& inner,
                                 const DiffScheme& outer) {
    const RiemannTensor R = riemann_tensor(g, p, inner, outer);
    const Mat G = g(p);
    const int n = R.n;
    CurvatureSample out;
    out.point = p.coords();
    out.n = n;
    out.lowered.assign(R.up.size(), 0.0);
    auto idx = [n](int i, int j, int k, int l) {
        return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = 0.0;
                    for (int m = 0; m < n; ++m) v += G(l, m) * R.up[idx(i, j, k, m)];
                    out.lowered[idx(i, j, k, l)] = v;
                }
    return out;
}

Vec riemann(const MetricField& g, const Point& p, const Vec& X, const Vec& Y, const Vec& Z,
            const DiffScheme& inner, const DiffScheme& outer) {
    return riemann_tensor(g, p, inner, outer).apply(X, Y, Z);
}

double riemann_lowered(const MetricField& g, const Point& p, const Vec& X, const Vec& Y,
                       const Vec& Z, const Vec& W, const DiffScheme& inner,
                       const DiffScheme& outer) {
    return W.dot(g(p) * riemann(g, p, X, Y, Z, inner, outer));
}

Vec riemann_fields(const MetricField& g, const VectorField& X, const VectorField& Y,
                   const VectorField& Z, const Point& p, const DiffScheme& inner,
                   const DiffScheme& outer) {
    // nabla_Y Z and nabla_X Z as fields of their base point.
    auto covd_field = [&](const VectorField& A, const VectorField& B) {
        return VectorField([&g, &A, &B, inner](const Point& q) {
            return covariant_derivative_along(g, A(q), B, q, inner);
        });
    };
    VectorField nYZ = covd_field(Y, Z);
    VectorField nXZ = covd_field(X, Z);
    const Vec term1 = covariant_derivative_along(g, X(p), nYZ, p, outer);
    const Vec term2 = covariant_derivative_along(g, Y(p), nXZ, p, outer);
    const Vec br = lie_bracket(X, Y, p, inner);
    const Vec term3 = covariant_derivative_along(g, br, Z, p, inner);
    return term1 - term2 - term3;
}

double sectional_curvature(const RiemannTensor& R, const Mat& G, const Vec& U, const Vec& V) {
    const double uu = U.dot(G * U);
    const double vv = V.dot(G * V);
    const double uv = U.dot(G * V);
    const double gram = uu * vv - uv * uv;
    if (!(gram > 1e-12 * std::max(1.0, uu * vv)))
        fail("DegeneratePlane", "sectional curvature of a degenerate 2-plane");
    return U.dot(G * R.apply(U, V, V)) / gram;
}

double sectional_curvature(const MetricField& g, const Point& p, const Vec& U, const Vec& V,
                           const DiffScheme& inner, const DiffScheme& outer) {
    return sectional_curvature(riemann_tensor(g, p, inner, outer), g(p), U, V);
}

} // namespace slantsub
