#include "slantsub/slant.hpp"

#include <algorithm>
#include <cmath>

namespace slantsub {

std::string to_string(XiPosition pos) {
    switch (pos) {
        case XiPosition::Vertical: return "vertical";
        case XiPosition::Horizontal: return "horizontal";
        default: return "oblique";
    }
}

SlantOperators slant_operators(const SubmersionMap& F, const Point& p) {
    const auto sp = split(F, p);
    SlantOperators ops;
    ops.proj_v = sp.proj_v;
    ops.proj_h = sp.proj_h;
    ops.phi = F.source.phi()(p);
    ops.G = F.source.metric()(p);
    ops.xi = F.source.xi()(p);
    ops.eta = F.source.eta()(p);
    ops.psi = sp.proj_v * ops.phi * sp.proj_v;
    ops.omega = sp.proj_h * ops.phi * sp.proj_v;
    ops.B = sp.proj_v * ops.phi * sp.proj_h;
    ops.C = sp.proj_h * ops.phi * sp.proj_h;
    return ops;
}

namespace {

double gnorm(const Mat& G, const Vec& v) { return std::sqrt(std::max(0.0, v.dot(G * v))); }

void require_vertical(const SlantOperators& ops, const Vec& U) {
    const double total = gnorm(ops.G, U);
    if (total == 0.0 || gnorm(ops.G, ops.proj_h * U) > 1e-8 * total)
        fail("NotVertical", "vector has a horizontal component");
}

void require_horizontal(const SlantOperators& ops, const Vec& X) {
    const double total = gnorm(ops.G, X);
    if (total == 0.0 || gnorm(ops.G, ops.proj_v * X) > 1e-8 * total)
        fail("NotHorizontal", "vector has a vertical component");
}

// psi as a matrix field q -> V(q) phi(q) V(q); likewise the other blocks.
Mat psi_at(const SubmersionMap& F, const Point& q) {
    const Mat pv = vertical_projector(F, q);
    return pv * F.source.phi()(q) * pv;
}

Mat omega_at(const SubmersionMap& F, const Point& q) {
    const Mat pv = vertical_projector(F, q);
    const Mat phi = F.source.phi()(q);
    return phi * pv - pv * phi * pv;
}

XiPosition classify_xi(double vnorm, double hnorm) {
    if (hnorm <= 1e-8) return XiPosition::Vertical;
    if (vnorm <= 1e-8) return XiPosition::Horizontal;
    return XiPosition::Oblique;
}

// Random vertical unit vector, rejecting directions parallel to a vertical xi.
Vec random_admissible_vertical(const VerticalHorizontalSplit& sp, const SlantOperators& ops,
                               XiPosition pos, Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec v = Vec::Zero(ops.G.rows());
        for (const Vec& b : sp.vertical) v += rng.uniform(-1.0, 1.0) * b;
        const double n = gnorm(ops.G, v);
        if (n < 1e-6) continue;
        v /= n;
        if (pos == XiPosition::Vertical) {
            const Vec rest = v - ops.eta.dot(v) * ops.xi;
            if (gnorm(ops.G, rest) < 1e-10) continue;
        }
        return v;
    }
    fail("XiDirection", "could not draw a vertical direction off the xi line");
}

} // namespace

SlantDecomposition decompose_vertical(const SubmersionMap& F, const Point& p, const Vec& U) {
    const SlantOperators ops = slant_operators(F, p);
    require_vertical(ops, U);
    const Vec phiU = ops.phi * U;
    SlantDecomposition out;
    out.point = p.coords();
    out.input = U;
    out.psi = ops.proj_v * phiU;
    out.omega = ops.proj_h * phiU;
    return out;
}

HorizontalDecomposition decompose_horizontal(const SubmersionMap& F, const Point& p,
                                             const Vec& X) {
    const SlantOperators ops = slant_operators(F, p);
    require_horizontal(ops, X);
    const Vec phiX = ops.phi * X;
    HorizontalDecomposition out;
    out.point = p.coords();
    out.input = X;
    out.b = ops.proj_v * phiX;
    out.c = ops.proj_h * phiX;
    return out;
}

double slant_angle(const SubmersionMap& F, const Point& p, const Vec& U) {
    const SlantOperators ops = slant_operators(F, p);
    require_vertical(ops, U);
    const double xi_h = gnorm(ops.G, ops.proj_h * ops.xi);
    if (xi_h <= 1e-8 * gnorm(ops.G, ops.xi)) {
        const Vec rest = U - ops.eta.dot(U) * ops.xi;
        if (gnorm(ops.G, rest) < 1e-10 * gnorm(ops.G, U))
            fail("XiDirection", "slant angle is undefined along xi");
    }
    const Vec phiU = ops.phi * U;
    const double denom = gnorm(ops.G, phiU);
    if (denom < 1e-12) fail("ZeroPhi", "phi U vanishes");
    const double ratio = gnorm(ops.G, ops.proj_v * phiU) / denom;
    return std::acos(std::clamp(ratio, 0.0, 1.0));
}

XiPosition xi_position(const SubmersionMap& F, int samples, std::uint64_t seed) {
    constexpr std::size_t kWidth = 2;
    auto rows = sample_defect_matrix(
        samples, kWidth, seed, default_exec_mode(),
        [&](std::size_t, Rng& rng, std::span<double> out) {
            Point p = sample_point(F.source.model(), rng);
            const auto sp = split(F, p);
            const Mat G = F.source.metric()(p);
            const Vec xi = F.source.xi()(p);
            out[0] = gnorm(G, sp.project_v(xi));
            out[1] = gnorm(G, sp.project_h(xi));
        });
    return classify_xi(column_max(rows, kWidth, 0), column_max(rows, kWidth, 1));
}

SlantReport slant_constancy(const SubmersionMap& F, int samples, int directions,
                            std::uint64_t seed, double angle_tol) {
    if (samples < 1 || directions < 1) fail("UsageError", "samples and directions must be >= 1");
    const std::size_t width = static_cast<std::size_t>(directions) + 2;
    auto rows = sample_defect_matrix(
        samples, width, seed, default_exec_mode(),
        [&](std::size_t, Rng& rng, std::span<double> out) {
            Point p = sample_point(F.source.model(), rng);
            const auto sp = split(F, p);
            const SlantOperators ops = slant_operators(F, p);
            const double xiv = gnorm(ops.G, sp.project_v(ops.xi));
            const double xih = gnorm(ops.G, sp.project_h(ops.xi));
            const XiPosition pos = classify_xi(xiv, xih);
            for (int d = 0; d < directions; ++d) {
                const Vec U = random_admissible_vertical(sp, ops, pos, rng);
                const Vec phiU = ops.phi * U;
                const double denom = gnorm(ops.G, phiU);
                // phi U = 0 can only happen along xi, which was rejected.
                const double ratio = denom < 1e-12
                                         ? 0.0
                                         : gnorm(ops.G, ops.proj_v * phiU) / denom;
                out[d] = std::acos(std::clamp(ratio, 0.0, 1.0));
            }
            out[directions] = xiv;
            out[directions + 1] = xih;
        });

    double sum = 0.0;
    const std::size_t n_angles = static_cast<std::size_t>(samples) * directions;
    for (int i = 0; i < samples; ++i)
        for (int d = 0; d < directions; ++d) sum += rows[i * width + d];
    const double mean = sum / static_cast<double>(n_angles);
    double dev = 0.0;
    for (int i = 0; i < samples; ++i)
        for (int d = 0; d < directions; ++d)
            dev = std::max(dev, std::abs(rows[i * width + d] - mean));

    SlantReport rep;
    rep.xi_pos = classify_xi(column_max(rows, width, directions),
                             column_max(rows, width, directions + 1));
    rep.angles.reserve(n_angles);
    for (int i = 0; i < samples; ++i)
        for (int d = 0; d < directions; ++d) rep.angles.push_back(rows[i * width + d]);
    rep.theta_mean = mean;
    rep.theta_max_deviation = dev;
    rep.samples = samples;
    rep.directions = directions;
    rep.seed = seed;
    if (dev > angle_tol)
        rep.verdict = "not-slant";
    else if (mean <= angle_tol)
        rep.verdict = "invariant";
    else if (std::abs(mean - M_PI / 2.0) <= angle_tol)
        rep.verdict = "anti-invariant";
    else
        rep.verdict = "proper-slant";
    return rep;
}

double psi_square_residual(const SubmersionMap& F, const Point& p, const Vec& U, double theta,
                           XiPosition pos) {
    const SlantOperators ops = slant_operators(F, p);
    const Vec u = ops.proj_v * U;
    const Vec psi2 = ops.psi * (ops.psi * u);
    const double c2 = std::cos(theta) * std::cos(theta);
    Vec rhs = u;
    if (pos == XiPosition::Vertical) rhs -= ops.eta.dot(u) * ops.xi;
    return (psi2 + c2 * rhs).norm();
}

std::pair<double, double> norm_relation_residuals(const SubmersionMap& F, const Point& p,
                                                  const Vec& U, const Vec& V, double theta,
                                                  XiPosition pos) {
    const SlantOperators ops = slant_operators(F, p);
    const Vec u = ops.proj_v * U;
    const Vec v = ops.proj_v * V;
    double base = u.dot(ops.G * v);
    if (pos == XiPosition::Vertical) base -= ops.eta.dot(u) * ops.eta.dot(v);
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    const double lhs_psi = (ops.psi * u).dot(ops.G * (ops.psi * v));
    const double lhs_omega = (ops.omega * u).dot(ops.G * (ops.omega * v));
    return {std::abs(lhs_psi - c2 * base), std::abs(lhs_omega - s2 * base)};
}

std::vector<double> lemma_residuals(const SubmersionMap& F, const Point& p, const Vec& X,
                                    const Vec& U) {
    const SlantOperators ops = slant_operators(F, p);
    const Vec x = ops.proj_h * X;
    const Vec u = ops.proj_v * U;
    std::vector<double> r(5);
    // The eta term drops when xi is vertical (eta kills horizontal vectors).
    r[0] = (ops.omega * (ops.B * x) + ops.C * (ops.C * x) + x - ops.eta.dot(x) * ops.xi).norm();
    r[1] = (ops.psi * (ops.B * x) + ops.B * (ops.C * x)).norm();
    r[2] = (ops.phi * (ops.phi * u) - ops.psi * (ops.psi * u) - ops.B * (ops.omega * u)).norm();
    r[3] = (ops.omega * (ops.psi * u) + ops.C * (ops.omega * u)).norm();
    r[4] = std::abs((ops.C * x).dot(ops.G * (ops.phi * u)) +
                    (ops.B * x).dot(ops.G * (ops.psi * u)));
    return r;
}

std::vector<Vec> AdaptedFrame::all() const {
    std::vector<Vec> out = vertical;
    out.insert(out.end(), horizontal.begin(), horizontal.end());
    return out;
}

double AdaptedFrame::gram_defect(const Mat& G) const {
    const auto fs = all();
    double worst = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(fs[i].dot(G * fs[j]) - want));
        }
    return worst;
}

AdaptedFrame adapted_frame(const SubmersionMap& F, const Point& p, double theta, XiPosition pos,
                           const std::optional<Vec>& first_leg) {
    if (pos == XiPosition::Oblique)
        fail("WrongXiPosition", "adapted frames need xi vertical or horizontal");
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    if (ct < 1e-6 || st < 1e-6)
        fail("NotProperSlant", "adapted frames need a proper slant angle");

    const auto sp = split(F, p);
    const SlantOperators ops = slant_operators(F, p);
    const int dim_v = sp.vertical_dim();
    const bool xi_vertical = pos == XiPosition::Vertical;
    if (xi_vertical ? dim_v % 2 == 0 : dim_v % 2 == 1)
        fail("DimensionMismatch",
             "vertical dimension " + std::to_string(dim_v) + " is incompatible with a " +
                 to_string(pos) + " xi");
    const int k = xi_vertical ? (dim_v - 1) / 2 : dim_v / 2;

    AdaptedFrame frame;
    frame.point = p.coords();
    frame.theta = theta;
    frame.xi_pos = pos;
    frame.pairs = k;

    std::vector<Vec> used;
    const Vec xi_unit = ops.xi / gnorm(ops.G, ops.xi);
    if (xi_vertical) used.push_back(xi_unit);

    auto project_out = [&](Vec v) {
        for (const Vec& u : used) v -= (u.dot(ops.G * v)) * u;
        for (const Vec& u : used) v -= (u.dot(ops.G * v)) * u;
        return v;
    };

    for (int pair = 0; pair < k; ++pair) {
        Vec e;
        if (pair == 0 && first_leg) {
            Vec r = project_out(*first_leg);
            const double n = gnorm(ops.G, r);
            if (n < 1e-8) fail("DimensionMismatch", "preferred first leg is degenerate");
            e = r / n;
        } else {
            Vec best;
            double best_norm = -1.0;
            for (const Vec& cand : sp.vertical) {
                Vec r = project_out(cand);
                const double n = gnorm(ops.G, r);
                if (n > best_norm) {
                    best_norm = n;
                    best = r;
                }
            }
            if (best_norm < 1e-8)
                fail("DimensionMismatch", "ran out of independent vertical legs");
            e = best / best_norm;
        }
        const Vec f = (1.0 / ct) * (ops.psi * e); // sec(theta) psi e
        frame.vertical.push_back(e);
        frame.vertical.push_back(f);
        frame.vertical_labels.push_back("e" + std::to_string(2 * pair + 1));
        frame.vertical_labels.push_back("sec(theta) psi e" + std::to_string(2 * pair + 1));
        used.push_back(e);
        used.push_back(f);
    }
    if (xi_vertical) {
        frame.vertical.push_back(xi_unit);
        frame.vertical_labels.push_back("xi");
    }

    for (int i = 0; i < 2 * k; ++i) {
        frame.horizontal.push_back((1.0 / st) * (ops.omega * frame.vertical[i]));
        frame.horizontal_labels.push_back("csc(theta) omega " + frame.vertical_labels[i]);
    }
    // mu: complement of omega(ker) (and the xi line, when horizontal) inside
    // the horizontal space.
    std::vector<Vec> constraints = sp.vertical;
    constraints.insert(constraints.end(), frame.horizontal.begin(), frame.horizontal.end());
    if (!xi_vertical) constraints.push_back(xi_unit);
    const int mu_dim = F.source_dim() - static_cast<int>(constraints.size());
    if (mu_dim > 0) {
        std::vector<Vec> mu = orthogonal_complement(F.source.metric(), p, constraints);
        for (std::size_t i = 0; i < mu.size(); ++i) {
            frame.horizontal.push_back(mu[i]);
            frame.horizontal_labels.push_back("mu" + std::to_string(i + 1));
        }
    }
    if (!xi_vertical) {
        frame.horizontal.push_back(xi_unit);
        frame.horizontal_labels.push_back("xi");
    }

    if (static_cast<int>(frame.vertical.size()) != dim_v ||
        static_cast<int>(frame.horizontal.size()) != sp.horizontal_dim())
        fail("DimensionMismatch", "adapted frame does not fill the tangent space");
    return frame;
}

MuReport mu_distribution(const SubmersionMap& F, const Point& p, double theta, XiPosition pos) {
    if (pos == XiPosition::Oblique)
        fail("WrongXiPosition", "mu needs xi vertical or horizontal");
    const auto sp = split(F, p);
    const SlantOperators ops = slant_operators(F, p);

    // omega-images of the vertical space (xi drops out since phi xi = 0).
    std::vector<Vec> constraints = sp.vertical;
    for (const Vec& v : sp.vertical) {
        Vec w = ops.omega * v;
        // keep only independent images
        Vec r = w;
        for (const Vec& u : constraints) {
            const double uu = u.dot(ops.G * u);
            r -= (u.dot(ops.G * r)) / uu * u;
        }
        if (gnorm(ops.G, r) > 1e-8 * std::max(1.0, gnorm(ops.G, w))) constraints.push_back(w);
    }
    if (pos == XiPosition::Horizontal) constraints.push_back(ops.xi);

    MuReport rep;
    const int m = (F.source_dim() - 1) / 2;
    const int n = F.target_dim();
    rep.expected_dim = pos == XiPosition::Vertical ? 2 * (n - m) : 2 * (n - m - 1);
    if (static_cast<int>(constraints.size()) < F.source_dim())
        rep.basis = orthogonal_complement(F.source.metric(), p, constraints);
    rep.dim = static_cast<int>(rep.basis.size());

    double defect = 0.0;
    for (const Vec& x : rep.basis) {
        Vec px = ops.phi * x;
        for (const Vec& mu : rep.basis) px -= (mu.dot(ops.G * px)) * mu;
        defect = std::max(defect, gnorm(ops.G, px));
    }
    rep.invariance_defect = defect;
    (void)theta;
    return rep;
}

namespace {

// Constant-projected vertical extension q -> P_V(q) v.
VectorField vertical_field(const SubmersionMap& F, Vec v) {
    return projected_vertical_field(F, std::move(v));
}

// q -> omega(q) P_V(q) v
VectorField omega_field(const SubmersionMap& F, Vec v) {
    return VectorField([F, v = std::move(v)](const Point& q) -> Vec {
        return omega_at(F, q) * (vertical_projector(F, q) * v);
    });
}

// q -> psi(q) P_V(q) v
VectorField psi_field(const SubmersionMap& F, Vec v) {
    return VectorField([F, v = std::move(v)](const Point& q) -> Vec {
        return psi_at(F, q) * (vertical_projector(F, q) * v);
    });
}

} // namespace

std::pair<Vec, Vec> omega_parallel_defect(const SubmersionMap& F, const Point& p, const Vec& U,
                                          const Vec& V, const DiffScheme& s) {
    const SlantOperators ops = slant_operators(F, p);
    const Vec u = ops.proj_v * U;
    const Vec v = ops.proj_v * V;
    const ChristoffelSample gam = christoffel(F.source.metric(), p, s);

    VectorField Vf = vertical_field(F, v);
    const Vec hat_nabla = ops.proj_v * covariant_derivative_along(gam, u, Vf, p, s);

    const Vec TUv = oneill_T(F, p, u, v, s);
    const Vec psi_v = ops.psi * v;
    const Vec omega_v = ops.omega * v;

    const Vec lhs_w =
        ops.proj_h * covariant_derivative_along(gam, u, omega_field(F, v), p, s) -
        ops.omega * hat_nabla;
    const Vec rhs_w = ops.C * TUv - oneill_T(F, p, u, psi_v, s);

    const Vec lhs_f =
        ops.proj_v * covariant_derivative_along(gam, u, psi_field(F, v), p, s) -
        ops.psi * hat_nabla;
    const Vec rhs_f = ops.B * TUv - oneill_T(F, p, u, omega_v, s);

    return {lhs_w - rhs_w, lhs_f - rhs_f};
}

double sec1_residual(const SubmersionMap& F, const Point& p, const Vec& U, double theta) {
    const SlantOperators ops = slant_operators(F, p);
    const Vec u = ops.proj_v * U;
    const Vec pu = ops.psi * u;
    const double c2 = std::cos(theta) * std::cos(theta);
    return (oneill_T(F, p, pu, pu) + c2 * oneill_T(F, p, u, u)).norm();
}

Vec check_nabla_Q(const SubmersionMap& F, const Point& p, const Vec& U, const Vec& V,
                  const DiffScheme& s) {
    const SlantOperators ops = slant_operators(F, p);
    const Vec u = ops.proj_v * U;
    const Vec v = ops.proj_v * V;
    const ChristoffelSample gam = christoffel(F.source.metric(), p, s);

    VectorField Vf = vertical_field(F, v);
    VectorField QV([F, v](const Point& q) -> Vec {
        const Mat psi = psi_at(F, q);
        return psi * (psi * (vertical_projector(F, q) * v));
    });
    const Vec hat_nabla = ops.proj_v * covariant_derivative_along(gam, u, Vf, p, s);
    const Vec lhs = ops.proj_v * covariant_derivative_along(gam, u, QV, p, s);
    return lhs - ops.psi * (ops.psi * hat_nabla);
}

TotallyGeodesicReport totally_geodesic_criteria(const SubmersionMap& F, const Point& p) {
    const auto sp = split(F, p);
    const SlantOperators ops = slant_operators(F, p);
    const ChristoffelSample gam = christoffel(F.source.metric(), p);
    const Mat J = differential(F, p);
    const DiffScheme s;

    TotallyGeodesicReport rep;

    // Direct defects over frame pairs.
    for (const Vec& x : sp.horizontal)
        for (const Vec& y : sp.horizontal)
            rep.a_defect = std::max(rep.a_defect, oneill_A(F, p, x, y).norm());
    for (const Vec& u : sp.vertical)
        for (const Vec& v : sp.vertical)
            rep.t_defect = std::max(rep.t_defect, oneill_T(F, p, u, v).norm());
    for (const Vec& u : sp.vertical) {
        for (const Vec& v : sp.vertical)
            rep.sff_vertical =
                std::max(rep.sff_vertical, second_fundamental_form_map(F, p, u, v).norm());
        for (const Vec& x : sp.horizontal)
            rep.sff_mixed =
                std::max(rep.sff_mixed, second_fundamental_form_map(F, p, x, u).norm());
    }

    // Horizontal-foliation criterion, basic extensions for the horizontal slots:
    // g(H nabla_X Y, omega psi U) = g(A_X BY, omega U) + g(H nabla_X CY, omega U).
    for (const Vec& x : sp.horizontal)
        for (const Vec& y : sp.horizontal) {
            VectorField Yb = basic_field(F, J * y);
            VectorField CY([F, Yb](const Point& q) -> Vec {
                const Mat pv = vertical_projector(F, q);
                const Mat phi = F.source.phi()(q);
                const Vec yq = Yb(q);
                const Vec hy = yq - pv * yq;
                return phi * hy - pv * (phi * hy);
            });
            const Vec nXY = covariant_derivative_along(gam, x, Yb, p, s);
            const Vec nXCY = covariant_derivative_along(gam, x, CY, p, s);
            for (const Vec& u : sp.vertical) {
                const Vec omega_u = ops.omega * u;
                const Vec omega_psi_u = ops.omega * (ops.psi * u);
                const double lhs = (ops.proj_h * nXY).dot(ops.G * omega_psi_u);
                const double rhs = oneill_A(F, p, x, ops.B * y).dot(ops.G * omega_u) +
                                   (ops.proj_h * nXCY).dot(ops.G * omega_u);
                rep.horizontal_criterion = std::max(rep.horizontal_criterion,
                                                    std::abs(lhs - rhs));
            }
        }

    // Vertical-foliation criterion:
    // g(H nabla_U omega psi V, X) = g(T_U omega V, BX) + g(H nabla_U omega V, CX).
    for (const Vec& u : sp.vertical)
        for (const Vec& v : sp.vertical) {
            VectorField omega_psi_V([F, v](const Point& q) -> Vec {
                const Mat pv = vertical_projector(F, q);
                const Mat phi = F.source.phi()(q);
                const Mat psi = pv * phi * pv;
                const Vec pvv = pv * v;
                const Vec psiv = psi * pvv;
                return phi * psiv - pv * (phi * psiv);
            });
            const Vec nU_opsiV = covariant_derivative_along(gam, u, omega_psi_V, p, s);
            const Vec nU_oV = covariant_derivative_along(gam, u, omega_field(F, v), p, s);
            const Vec T_U_omegaV = oneill_T(F, p, u, ops.omega * v);
            for (const Vec& x : sp.horizontal) {
                const double lhs = (ops.proj_h * nU_opsiV).dot(ops.G * x);
                const double rhs = T_U_omegaV.dot(ops.G * (ops.B * x)) +
                                   (ops.proj_h * nU_oV).dot(ops.G * (ops.C * x));
                rep.vertical_criterion = std::max(rep.vertical_criterion, std::abs(lhs - rhs));
            }
        }

    // Mixed-slot criterion of the totally-geodesic-map theorem:
    // g(H nabla_Z omega psi U, X) = g(A_Z omega U, BX) + g(H nabla_Z omega U, CX).
    for (const Vec& z : sp.horizontal)
        for (const Vec& u : sp.vertical) {
            VectorField omega_psi_U([F, u](const Point& q) -> Vec {
                const Mat pv = vertical_projector(F, q);
                const Mat phi = F.source.phi()(q);
                const Mat psi = pv * phi * pv;
                const Vec pvu = pv * u;
                const Vec psiu = psi * pvu;
                return phi * psiu - pv * (phi * psiu);
            });
            const Vec nZ_opsiU = covariant_derivative_along(gam, z, omega_psi_U, p, s);
            const Vec nZ_oU = covariant_derivative_along(gam, z, omega_field(F, u), p, s);
            const Vec A_Z_omegaU = oneill_A(F, p, z, ops.omega * u);
            for (const Vec& x : sp.horizontal) {
                const double lhs = (ops.proj_h * nZ_opsiU).dot(ops.G * x);
                const double rhs = A_Z_omegaU.dot(ops.G * (ops.B * x)) +
                                   (ops.proj_h * nZ_oU).dot(ops.G * (ops.C * x));
                rep.map_criterion = std::max(rep.map_criterion, std::abs(lhs - rhs));
            }
        }

    return rep;
}

namespace {

double quarter_term(double c, double theta) {
    const double ct = std::cos(theta);
    return (c / 4.0) * (1.0 + 3.0 * ct * ct);
}

void fill_components(InequalityReport& rep, const std::vector<Mat>& tables,
                     const std::vector<int>& alpha_index, int legs) {
    for (std::size_t t = 0; t < tables.size(); ++t)
        for (int i = 0; i < legs; ++i)
            for (int j = i; j < legs; ++j)
                rep.components.emplace_back("T" + std::to_string(i + 1) + std::to_string(j + 1) +
                                                "^" + std::to_string(alpha_index[t]),
                                            tables[t](i, j));
}

} // namespace

InequalityReport inequality_vertical(const SubmersionMap& F, const Point& p, double c) {
    if (F.source_dim() != 5 || F.target_dim() != 2)
        fail("WrongDimensions", "the vertical-xi inequality needs a 5 -> 2 submersion");
    const auto sp = split(F, p);
    const SlantOperators ops = slant_operators(F, p);
    if (gnorm(ops.G, sp.project_h(ops.xi)) > 1e-8) fail("XiNotVertical", "xi is not vertical");

    Rng rng(0x51a7);
    const Vec probe = random_admissible_vertical(sp, ops, XiPosition::Vertical, rng);
    const double theta = slant_angle(F, p, probe);
    if (std::cos(theta) < 1e-6 || std::sin(theta) < 1e-6)
        fail("NotProperSlant", "the inequality needs a proper slant angle");

    AdaptedFrame frame = adapted_frame(F, p, theta, XiPosition::Vertical);
    const Vec H = mean_curvature(F, p);
    if (gnorm(ops.G, H) > 1e-10) {
        // Rotate the first leg so csc(theta) omega e1 lines up with H.
        const Vec& e1 = frame.vertical[0];
        const Vec& e2 = frame.vertical[1];
        const double a = H.dot(ops.G * frame.horizontal[0]);
        const double b = H.dot(ops.G * frame.horizontal[1]);
        const double rot = std::atan2(b, a);
        const Vec seed = std::cos(rot) * e1 + std::sin(rot) * e2;
        frame = adapted_frame(F, p, theta, XiPosition::Vertical, seed);
    }

    const Vec& e1 = frame.vertical[0];
    const Vec& e2 = frame.vertical[1];
    const Vec& e3 = frame.vertical[2]; // xi
    const Vec& e4 = frame.horizontal[0];
    const Vec& e5 = frame.horizontal[1];

    Mat T4 = Mat::Zero(3, 3), T5 = Mat::Zero(3, 3);
    const std::vector<Vec> legs = {e1, e2, e3};
    std::vector<std::vector<Vec>> T(3, std::vector<Vec>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j) {
            T[i][j] = oneill_T(F, p, legs[i], legs[j]);
            T[j][i] = T[i][j];
            T4(i, j) = T4(j, i) = T[i][j].dot(ops.G * e4);
            T5(i, j) = T5(j, i) = T[i][j].dot(ops.G * e5);
        }

    InequalityReport rep;
    rep.point = p.coords();
    rep.theta = theta;
    rep.c = c;
    rep.khat_frame = quarter_term(c, theta) + T4(0, 0) * T4(1, 1) + T5(0, 0) * T5(1, 1) -
                     T4(0, 1) * T4(0, 1) - T5(0, 1) * T5(0, 1);
    FibreChart chart(F, p);
    rep.khat_intrinsic = chart.sectional(e1, e2);

    // K-hat(e_i ^ xi) from the ambient curvature and the fibre relation.
    const RiemannTensor R = riemann_tensor(F.source.metric(), p);
    double kxi = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double K = sectional_curvature(R, ops.G, legs[i], e3);
        const double khat =
            K - T[i][2].dot(ops.G * T[i][2]) + T[i][i].dot(ops.G * T[2][2]);
        kxi = std::max(kxi, std::abs(khat));
    }
    rep.kxi_max = kxi;

    rep.tau_hat = rep.khat_frame; // plus the two K-hat(e_i ^ xi), reported as ~0
    const Vec Hm = mean_curvature(F, p);
    rep.H2 = Hm.dot(ops.G * Hm);
    rep.bound = (8.0 / 9.0) * (rep.tau_hat - quarter_term(c, theta));
    rep.slack = rep.H2 - rep.bound;
    rep.exchange_residual = std::abs(T4(1, 1) - T5(0, 1));

    const double ftol = 1e-5;
    rep.equality_flags = {
        {"T11^4 = 3 T22^4", std::abs(T4(0, 0) - 3.0 * T4(1, 1)) <= ftol},
        {"T12^4 = 0", std::abs(T4(0, 1)) <= ftol},
        {"T11^5 = 0", std::abs(T5(0, 0)) <= ftol},
    };
    rep.equality_flags_all = std::all_of(rep.equality_flags.begin(), rep.equality_flags.end(),
                                         [](const auto& f) { return f.second; });
    fill_components(rep, {T4, T5}, {4, 5}, 3);
    return rep;
}

InequalityReport inequality_horizontal(const SubmersionMap& F, const Point& p, double c) {
    if (F.source_dim() != 5 || F.target_dim() != 3)
        fail("WrongDimensions", "the horizontal-xi inequality needs a 5 -> 3 submersion");
    const auto sp = split(F, p);
    const SlantOperators ops = slant_operators(F, p);
    if (gnorm(ops.G, sp.project_v(ops.xi)) > 1e-8) fail("XiNotHorizontal", "xi is not horizontal");

    Rng rng(0x51a7);
    const Vec probe = random_admissible_vertical(sp, ops, XiPosition::Horizontal, rng);
    const double theta = slant_angle(F, p, probe);
    if (std::cos(theta) < 1e-6 || std::sin(theta) < 1e-6)
        fail("NotProperSlant", "the inequality needs a proper slant angle");

    AdaptedFrame frame = adapted_frame(F, p, theta, XiPosition::Horizontal);
    const Vec H = mean_curvature(F, p);
    if (gnorm(ops.G, H) > 1e-10) {
        const Vec& e1 = frame.vertical[0];
        const Vec& e2 = frame.vertical[1];
        const double a = H.dot(ops.G * frame.horizontal[0]);
        const double b = H.dot(ops.G * frame.horizontal[1]);
        // e4 = csc omega e2 tracks the rotation of e1 by the same angle.
        const double rot = std::atan2(a, b);
        const Vec seed = std::cos(rot) * e1 - std::sin(rot) * e2;
        frame = adapted_frame(F, p, theta, XiPosition::Horizontal, seed);
    }

    const Vec& e1 = frame.vertical[0];
    const Vec& e2 = frame.vertical[1];
    const Vec& e3 = frame.horizontal[0]; // csc omega e1
    const Vec& e4 = frame.horizontal[1]; // csc omega e2
    const Vec& e5 = frame.horizontal[2]; // xi

    Mat T3 = Mat::Zero(2, 2), T4 = Mat::Zero(2, 2), T5 = Mat::Zero(2, 2);
    const std::vector<Vec> legs = {e1, e2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j <= i; ++j) {
            const Vec t = oneill_T(F, p, legs[i], legs[j]);
            T3(i, j) = T3(j, i) = t.dot(ops.G * e3);
            T4(i, j) = T4(j, i) = t.dot(ops.G * e4);
            T5(i, j) = T5(j, i) = t.dot(ops.G * e5);
        }

    InequalityReport rep;
    rep.point = p.coords();
    rep.theta = theta;
    rep.c = c;
    rep.khat_frame = quarter_term(c, theta) + T3(0, 0) * T3(1, 1) + T4(0, 0) * T4(1, 1) -
                     T3(0, 1) * T3(0, 1) - T4(0, 1) * T4(0, 1);
    FibreChart chart(F, p);
    rep.khat_intrinsic = chart.sectional(e1, e2);
    rep.tau_hat = rep.khat_frame;
    const Vec Hm = mean_curvature(F, p);
    rep.H2 = Hm.dot(ops.G * Hm);
    rep.bound = 0.25 * (rep.tau_hat - quarter_term(c, theta));
    rep.slack = rep.H2 - rep.bound;
    rep.exchange_residual = std::abs(T3(1, 1) - T4(0, 1));
    rep.t5_row_max = T5.cwiseAbs().maxCoeff();

    const double ftol = 1e-5;
    rep.equality_flags = {
        {"T11^4 = -T22^4", std::abs(T4(0, 0) + T4(1, 1)) <= ftol},
        {"T11^3 = 0", std::abs(T3(0, 0)) <= ftol},
        {"T12^3 = 0", std::abs(T3(0, 1)) <= ftol},
        {"T22^3 = 0", std::abs(T3(1, 1)) <= ftol},
        {"T^5 = 0", rep.t5_row_max <= ftol},
    };
    rep.equality_flags_all = std::all_of(rep.equality_flags.begin(), rep.equality_flags.end(),
                                         [](const auto& f) { return f.second; });
    fill_components(rep, {T3, T4, T5}, {3, 4, 5}, 2);
    return rep;
}

InequalityReport inequality_vertical_synthetic(const Mat& T4, const Mat& T5, double theta,
                                               double c) {
    InequalityReport rep;
    rep.theta = theta;
    rep.c = c;
    const double mu = T4(0, 0), lam = T4(1, 1);
    rep.H2 = (mu + lam) * (mu + lam) / 9.0;
    rep.khat_frame = quarter_term(c, theta) + mu * lam - T5(0, 0) * T5(0, 0) -
                     T4(0, 1) * T4(0, 1) - lam * lam;
    rep.khat_intrinsic = rep.khat_frame;
    rep.tau_hat = rep.khat_frame;
    rep.bound = (8.0 / 9.0) * (rep.tau_hat - quarter_term(c, theta));
    rep.slack = rep.H2 - rep.bound;
    rep.exchange_residual = std::abs(T4(1, 1) - T5(0, 1));
    rep.equality_flags = {
        {"T11^4 = 3 T22^4", std::abs(mu - 3.0 * lam) <= 1e-12},
        {"T12^4 = 0", std::abs(T4(0, 1)) <= 1e-12},
        {"T11^5 = 0", std::abs(T5(0, 0)) <= 1e-12},
    };
    rep.equality_flags_all = std::all_of(rep.equality_flags.begin(), rep.equality_flags.end(),
                                         [](const auto& f) { return f.second; });
    fill_components(rep, {T4, T5}, {4, 5}, static_cast<int>(T4.rows()));
    return rep;
}

InequalityReport inequality_horizontal_synthetic(const Mat& T3, const Mat& T4, const Mat& T5,
                                                 double theta, double c) {
    InequalityReport rep;
    rep.theta = theta;
    rep.c = c;
    const double mu = T4(0, 0), lam = T4(1, 1);
    rep.H2 = 0.25 * (mu + lam) * (mu + lam);
    rep.khat_frame = quarter_term(c, theta) + mu * lam - T3(0, 0) * T3(0, 0) -
                     T3(0, 1) * T3(0, 1) - T3(1, 1) * T3(1, 1);
    rep.khat_intrinsic = rep.khat_frame;
    rep.tau_hat = rep.khat_frame;
    rep.bound = 0.25 * (rep.tau_hat - quarter_term(c, theta));
    rep.slack = rep.H2 - rep.bound;
    rep.exchange_residual = std::abs(T3(1, 1) - T4(0, 1));
    rep.t5_row_max = T5.cwiseAbs().maxCoeff();
    rep.equality_flags = {
        {"T11^4 = -T22^4", std::abs(mu + lam) <= 1e-12},
        {"T11^3 = 0", std::abs(T3(0, 0)) <= 1e-12},
        {"T12^3 = 0", std::abs(T3(0, 1)) <= 1e-12},
        {"T22^3 = 0", std::abs(T3(1, 1)) <= 1e-12},
        {"T^5 = 0", rep.t5_row_max <= 1e-12},
    };
    rep.equality_flags_all = std::all_of(rep.equality_flags.begin(), rep.equality_flags.end(),
                                         [](const auto& f) { return f.second; });
    fill_components(rep, {T3, T4, T5}, {3, 4, 5}, 2);
    return rep;
}

StructureReport anti_invariant_checks(const SubmersionMap& F, int samples, std::uint64_t seed,
                                      double tol_scale) {
    if (samples < 1) fail("UsageError", "samples must be >= 1");

    // Precondition: horizontal = phi(ker F_*) + {xi}, xi horizontal.
    {
        Rng rng(derive_stream(seed, 0xa11));
        for (int trial = 0; trial < 3; ++trial) {
            Point p = sample_point(F.source.model(), rng);
            const auto sp = split(F, p);
            const SlantOperators ops = slant_operators(F, p);
            double defect = gnorm(ops.G, sp.project_v(ops.xi));
            for (const Vec& v : sp.vertical)
                defect = std::max(defect, gnorm(ops.G, sp.project_v(ops.phi * v)));
            if (sp.horizontal_dim() != sp.vertical_dim() + 1) defect = 1.0;
            if (defect > 1e-8)
                fail("NotAntiInvariant",
                     "the horizontal space is not phi(ker F_*) + span{xi} (defect " +
                         std::to_string(defect) + ")");
        }
    }

    constexpr std::size_t kWidth = 7;
    auto rows = sample_defect_matrix(
        samples, kWidth, seed, default_exec_mode(),
        [&](std::size_t, Rng& rng, std::span<double> out) {
            Point p = sample_point(F.source.model(), rng);
            const auto sp = split(F, p);
            const SlantOperators ops = slant_operators(F, p);
            const int n = F.source_dim();

            const Vec E = rng.uniform_vector(n, -1.0, 1.0);
            Vec U = Vec::Zero(n);
            for (const Vec& b : sp.vertical) U += rng.uniform(-1.0, 1.0) * b;
            Vec X = Vec::Zero(n), Y = Vec::Zero(n);
            for (const Vec& b : sp.horizontal) {
                X += rng.uniform(-1.0, 1.0) * b;
                Y += rng.uniform(-1.0, 1.0) * b;
            }

            out[0] = (oneill_T(F, p, U, ops.phi * E) - ops.phi * oneill_T(F, p, U, E)).norm();
            out[1] = (oneill_A(F, p, X, ops.phi * E) - ops.phi * oneill_A(F, p, X, E)).norm();
            out[2] = (oneill_A(F, p, X, ops.phi * Y) + oneill_A(F, p, Y, ops.phi * X)).norm();
            double amax = 0.0;
            for (const Vec& x : sp.horizontal)
                for (const Vec& y : sp.horizontal)
                    amax = std::max(amax, oneill_A(F, p, x, y).norm());
            out[3] = amax;

            // Reduced mixed curvature relation (integrable horizontal, A = 0):
            // g(R(X,V)W, Y) = g((nabla_X T)(V,W), Y) - g(T_V X, T_W Y).
            {
                const RiemannTensor R = riemann_tensor(F.source.metric(), p);
                Vec V = Vec::Zero(n), W = Vec::Zero(n);
                for (const Vec& b : sp.vertical) {
                    V += rng.uniform(-1.0, 1.0) * b;
                    W += rng.uniform(-1.0, 1.0) * b;
                }
                const double lhs = Y.dot(ops.G * R.apply(X, V, W));
                const double rhs = Y.dot(ops.G * nabla_T(F, p, X, V, W)) -
                                   oneill_T(F, p, V, X).dot(ops.G * oneill_T(F, p, W, Y));
                out[4] = std::abs(lhs - rhs);
            }

            // phi-sectional reconstructions.
            {
                const double un = gnorm(ops.G, U);
                if (un > 1e-6) {
                    const Vec v = U / un;
                    const Vec pv = ops.phi * v;
                    const double hv = phi_sectional(F.source, p, v);
                    const double rhs = nabla_T(F, p, pv, v, v).dot(ops.G * pv) -
                                       oneill_T(F, p, v, v).dot(ops.G * oneill_T(F, p, v, v));
                    out[5] = std::abs(hv - rhs);

                    // X in phi(ker), unit: phi X is vertical.
                    const Vec x = pv;
                    const Vec px = ops.phi * x;
                    const double hx = phi_sectional(F.source, p, x);
                    const Vec TphiX_X = oneill_T(F, p, px, x);
                    const double rhs2 =
                        nabla_T(F, p, x, px, px).dot(ops.G * x) - TphiX_X.dot(ops.G * TphiX_X);
                    out[6] = std::abs(hx - rhs2);
                }
            }
        });

    StructureReport rep;
    rep.samples = samples;
    rep.seed = seed;
    const struct {
        const char* name;
        std::size_t col;
        double tol;
    } defs[] = {
        {"T-phi-commute", 0, 1e-7},   {"A-phi-commute", 1, 1e-7},
        {"A-phi-alternating", 2, 1e-7}, {"A-vanishes", 3, 1e-7},
        {"mixed-curvature-reduced", 4, 1e-4},
        {"phi-sectional-vertical", 5, 1e-6},
        {"phi-sectional-horizontal", 6, 1e-6},
    };
    for (const auto& d : defs)
        rep.checks.push_back(
            CheckRecord::make(d.name, column_max(rows, kWidth, d.col), d.tol * tol_scale));
    return rep;
}

} // namespace slantsub
