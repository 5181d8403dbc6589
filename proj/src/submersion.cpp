#include "slantsub/submersion.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace slantsub {

namespace {

Mat fd_jacobian(const SubmersionMap& F, const Point& p) {
    const int n = F.source_dim();
    const int t = F.target_dim();
    const DiffScheme s(1e-4, 4);
    Mat J(t, n);
    for (int a = 0; a < n; ++a) {
        const double h = s.step;
        const Vec f2p = F.map(p.shifted(a, 2 * h));
        const Vec f1p = F.map(p.shifted(a, h));
        const Vec f1m = F.map(p.shifted(a, -h));
        const Vec f2m = F.map(p.shifted(a, -2 * h));
        J.col(a) = (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
    }
    return J;
}

int numerical_rank(const Mat& M) {
    Eigen::JacobiSVD<Mat> svd(M);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > kRankTolerance * sv[0]) ++rank;
    return rank;
}

} // namespace

Mat differential_unchecked(const SubmersionMap& F, const Point& p) {
    if (F.jacobian) {
        Mat J = F.jacobian(p);
        if (J.rows() != F.target_dim() || J.cols() != F.source_dim())
            fail("ShapeMismatch", "analytic Jacobian has wrong dimensions");
        return J;
    }
    return fd_jacobian(F, p);
}

Mat differential(const SubmersionMap& F, const Point& p) {
    Mat J = differential_unchecked(F, p);
    if (numerical_rank(J) != F.target_dim())
        fail("RankDeficient", "differential does not have maximal rank at the sample point");
    return J;
}

Mat vertical_projector(const SubmersionMap& F, const Point& p) {
    const Mat J = differential(F, p);
    const Mat G = F.source.metric()(p);
    std::vector<Vec> vbasis = gram_schmidt(F.source.metric(), p, nullspace(J));
    const Mat V = columns(vbasis);
    return V * V.transpose() * G;
}

VerticalHorizontalSplit split(const SubmersionMap& F, const Point& p) {
    const Mat J = differential(F, p);
    const Mat G = F.source.metric()(p);
    const int n = F.source_dim();

    VerticalHorizontalSplit out;
    out.point = p.coords();
    out.vertical = gram_schmidt(F.source.metric(), p, nullspace(J));
    if (static_cast<int>(out.vertical.size()) != F.fibre_dim())
        fail("RankDeficient", "kernel dimension does not match source dim - target dim");

    // G^-1 J^T spans the g-orthogonal complement of ker J.
    const Mat H_raw = G.ldlt().solve(J.transpose());
    std::vector<Vec> hcols;
    hcols.reserve(F.target_dim());
    for (int a = 0; a < F.target_dim(); ++a) hcols.push_back(H_raw.col(a));
    out.horizontal = gram_schmidt(F.source.metric(), p, hcols);

    const Mat V = columns(out.vertical);
    out.proj_v = V * V.transpose() * G;
    out.proj_h = Mat::Identity(n, n) - out.proj_v;
    return out;
}

VectorField projected_vertical_field(const SubmersionMap& F, Vec v) {
    return VectorField([F, v = std::move(v)](const Point& q) -> Vec {
        return vertical_projector(F, q) * v;
    });
}

VectorField projected_horizontal_field(const SubmersionMap& F, Vec v) {
    return VectorField([F, v = std::move(v)](const Point& q) -> Vec {
        return v - vertical_projector(F, q) * v;
    });
}

VectorField basic_field(const SubmersionMap& F, Vec target_vector) {
    return VectorField([F, w = std::move(target_vector)](const Point& q) -> Vec {
        const Mat J = differential(F, q);
        const Mat G = F.source.metric()(q);
        const Mat GiJt = G.ldlt().solve(J.transpose());
        return GiJt * (J * GiJt).partialPivLu().solve(w);
    });
}

StructureReport check_axioms(const SubmersionMap& F, int samples, std::uint64_t seed,
                             double tol_scale) {
    if (samples < 1) fail("UsageError", "samples must be >= 1");
    constexpr std::size_t kWidth = 6;
    auto rows = sample_defect_matrix(
        samples, kWidth, seed, default_exec_mode(),
        [&](std::size_t, Rng& rng, std::span<double> out) {
            Point p = sample_point(F.source.model(), rng);
            const Mat J = differential_unchecked(F, p);
            const int rank = numerical_rank(J);
            out[0] = std::abs(rank - F.target_dim()); // S1
            if (rank != F.target_dim()) return;

            auto sp = split(F, p);
            const Mat G = F.source.metric()(p);
            const Mat GN = F.target->metric()(F.map_point(p));

            // S2: F_* is a linear isometry on the horizontal space.
            double iso = 0.0;
            const int h = sp.horizontal_dim();
            for (int i = 0; i < h; ++i)
                for (int j = 0; j <= i; ++j) {
                    const Vec xi = sp.horizontal[i];
                    const Vec xj = sp.horizontal[j];
                    const double lhs = (J * xi).dot(GN * (J * xj));
                    const double rhs = xi.dot(G * xj);
                    iso = std::max(iso, std::abs(lhs - rhs));
                }
            for (int extra = 0; extra < 2; ++extra) {
                Vec cx = rng.uniform_vector(h, -1.0, 1.0);
                Vec cy = rng.uniform_vector(h, -1.0, 1.0);
                Vec X = Vec::Zero(p.dim()), Y = Vec::Zero(p.dim());
                for (int i = 0; i < h; ++i) {
                    X += cx[i] * sp.horizontal[i];
                    Y += cy[i] * sp.horizontal[i];
                }
                iso = std::max(iso, std::abs((J * X).dot(GN * (J * Y)) - X.dot(G * Y)));
            }
            out[1] = iso;

            out[2] = (sp.proj_v * sp.proj_v - sp.proj_v).cwiseAbs().maxCoeff();
            out[3] = (G * sp.proj_v - sp.proj_v.transpose() * G).cwiseAbs().maxCoeff();
            double vfix = 0.0;
            for (const Vec& v : sp.vertical)
                vfix = std::max(vfix, (sp.proj_v * v - v).cwiseAbs().maxCoeff());
            out[4] = vfix;
            out[5] = std::abs(sp.vertical_dim() - F.fibre_dim());
        });

    StructureReport rep;
    rep.samples = samples;
    rep.seed = seed;
    rep.checks.push_back(CheckRecord::make("rank", column_max(rows, kWidth, 0), 0.0));
    rep.checks.push_back(
        CheckRecord::make("isometry", column_max(rows, kWidth, 1), 1e-10 * tol_scale));
    rep.checks.push_back(
        CheckRecord::make("projector-idempotent", column_max(rows, kWidth, 2), 1e-9 * tol_scale));
    rep.checks.push_back(CheckRecord::make("projector-self-adjoint",
                                           column_max(rows, kWidth, 3), 1e-9 * tol_scale));
    rep.checks.push_back(
        CheckRecord::make("projector-fixes-vertical", column_max(rows, kWidth, 4),
                          1e-9 * tol_scale));
    rep.checks.push_back(
        CheckRecord::make("fibre-dimension", column_max(rows, kWidth, 5), 0.0));
    return rep;
}

Vec oneill_T(const SubmersionMap& F, const Point& p, const Vec& E, const VectorField& G,
             const DiffScheme& s) {
    const auto sp = split(F, p);
    const Vec ve = sp.project_v(E);
    const ChristoffelSample gam = christoffel(F.source.metric(), p, s);
    VectorField VG([F, G](const Point& q) -> Vec { return vertical_projector(F, q) * G(q); });
    VectorField HG([F, G](const Point& q) -> Vec {
        const Vec g = G(q);
        return g - vertical_projector(F, q) * g;
    });
    return sp.project_h(covariant_derivative_along(gam, ve, VG, p, s)) +
           sp.project_v(covariant_derivative_along(gam, ve, HG, p, s));
}

Vec oneill_T(const SubmersionMap& F, const Point& p, const Vec& E, const Vec& G,
             const DiffScheme& s) {
    return oneill_T(F, p, E, VectorField::constant(G), s);
}

Vec oneill_A(const SubmersionMap& F, const Point& p, const Vec& E, const VectorField& G,
             const DiffScheme& s) {
    const auto sp = split(F, p);
    const Vec he = sp.project_h(E);
    const ChristoffelSample gam = christoffel(F.source.metric(), p, s);
    VectorField VG([F, G](const Point& q) -> Vec { return vertical_projector(F, q) * G(q); });
    VectorField HG([F, G](const Point& q) -> Vec {
        const Vec g = G(q);
        return g - vertical_projector(F, q) * g;
    });
    return sp.project_v(covariant_derivative_along(gam, he, HG, p, s)) +
           sp.project_h(covariant_derivative_along(gam, he, VG, p, s));
}

Vec oneill_A(const SubmersionMap& F, const Point& p, const Vec& E, const Vec& G,
             const DiffScheme& s) {
    return oneill_A(F, p, E, VectorField::constant(G), s);
}

ONeillSample oneill_sample(const SubmersionMap& F, const Point& p) {
    const auto sp = split(F, p);
    ONeillSample out;
    out.point = p.coords();
    out.vertical_frame = sp.vertical;
    out.horizontal_frame = sp.horizontal;
    const int k = sp.vertical_dim();
    const int h = sp.horizontal_dim();
    out.T.assign(k, std::vector<Vec>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            out.T[i][j] = oneill_T(F, p, sp.vertical[i], sp.vertical[j]);
    out.A.assign(h, std::vector<Vec>(h));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
            out.A[i][j] = oneill_A(F, p, sp.horizontal[i], sp.horizontal[j]);
    return out;
}

Vec mean_curvature(const SubmersionMap& F, const Point& p) {
    const auto sp = split(F, p);
    Vec H = Vec::Zero(F.source_dim());
    for (const Vec& u : sp.vertical) H += oneill_T(F, p, u, u);
    return H / static_cast<double>(sp.vertical_dim());
}

FibreChart::FibreChart(const SubmersionMap& F, const Point& p) : F_(&F), base_(p.coords()) {
    const auto sp = split(F, p);
    W_ = columns(sp.vertical);
    const int k = sp.vertical_dim();

    // The chart metric closure owns copies of everything it needs.
    SubmersionMap Fc = F;
    Mat W = W_;
    Vec base = base_;
    const Vec q0 = F.map(p);
    ModelPtr source_model = F.source.model_ptr();
    auto chart_point = [Fc, W, base, q0, source_model](const Vec& u) -> Vec {
        Vec x = base + W * u;
        for (int iter = 0; iter < 8; ++iter) {
            Point q = source_model->point(x);
            const Vec fx = Fc.map(q);
            Vec r(fx.size() + u.size());
            r.head(fx.size()) = fx - q0;
            r.tail(u.size()) = W.transpose() * (x - base) - u;
            if (r.norm() <= 1e-12) break;
            Mat Jac(x.size(), x.size());
            Jac.topRows(fx.size()) = differential_unchecked(Fc, q);
            Jac.bottomRows(u.size()) = W.transpose();
            x -= Jac.partialPivLu().solve(r);
        }
        return x;
    };
    MetricField chart_metric([Fc, W, chart_point, source_model](const Point& up) -> Mat {
        const Vec x = chart_point(up.coords());
        Point q = source_model->point(x);
        Mat Jac(x.size(), x.size());
        const Mat J = differential_unchecked(Fc, q);
        Jac.topRows(J.rows()) = J;
        Jac.bottomRows(W.cols()) = W.transpose();
        Mat rhs = Mat::Zero(x.size(), W.cols());
        rhs.bottomRows(W.cols()) = Mat::Identity(W.cols(), W.cols());
        const Mat D = Jac.partialPivLu().solve(rhs); // columns of d(chart)/du
        return D.transpose() * Fc.source.metric()(q) * D;
    });
    chart_ = make_model("fibre-chart", k, Box::centered(k, 0.02), std::move(chart_metric));
}

Vec FibreChart::chart_coords(const Vec& vertical_vector) const {
    return W_.transpose() * vertical_vector;
}

double FibreChart::sectional(const Vec& U, const Vec& V) const {
    if (!chart_curvature_) {
        Point zero = chart_->point(Vec::Zero(chart_->dim()));
        chart_curvature_ =
            riemann_tensor(chart_->metric(), zero, DiffScheme(1e-3, 2), DiffScheme(1e-3, 2));
        chart_metric_at_zero_ = chart_->metric()(zero);
    }
    return sectional_curvature(*chart_curvature_, chart_metric_at_zero_, chart_coords(U),
                               chart_coords(V));
}

double FibreChart::lowered_curvature(const Vec& S, const Vec& W, const Vec& V,
                                     const Vec& U) const {
    if (!chart_curvature_) {
        Point zero = chart_->point(Vec::Zero(chart_->dim()));
        chart_curvature_ =
            riemann_tensor(chart_->metric(), zero, DiffScheme(1e-3, 2), DiffScheme(1e-3, 2));
        chart_metric_at_zero_ = chart_->metric()(zero);
    }
    const Vec r = chart_curvature_->apply(chart_coords(S), chart_coords(W), chart_coords(V));
    return chart_coords(U).dot(chart_metric_at_zero_ * r);
}

FibreSample fibre_curvature(const SubmersionMap& F, const Point& p) {
    const auto sp = split(F, p);
    const int k = sp.vertical_dim();
    const Mat G = F.source.metric()(p);
    const Mat W = columns(sp.vertical);

    FibreSample out;
    out.point = p.coords();
    out.ghat = W.transpose() * G * W;
    out.khat_ambient = Mat::Zero(k, k);
    out.khat_intrinsic = Mat::Zero(k, k);
    out.tau_hat = 0.0;

    std::vector<std::vector<Vec>> T(k, std::vector<Vec>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= i; ++j) {
            T[i][j] = oneill_T(F, p, sp.vertical[i], sp.vertical[j]);
            T[j][i] = T[i][j];
        }
    Vec H = Vec::Zero(F.source_dim());
    for (int i = 0; i < k; ++i) H += T[i][i];
    out.mean_curv = H / static_cast<double>(k);

    if (k >= 2) {
        const RiemannTensor R = riemann_tensor(F.source.metric(), p);
        FibreChart chart(F, p);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < i; ++j) {
                const Vec& u = sp.vertical[i];
                const Vec& v = sp.vertical[j];
                const double K = sectional_curvature(R, G, u, v);
                // (4E) solved for the fibre curvature.
                const double ka =
                    K - T[i][j].dot(G * T[i][j]) + T[i][i].dot(G * T[j][j]);
                const double kb = chart.sectional(u, v);
                out.khat_ambient(i, j) = out.khat_ambient(j, i) = ka;
                out.khat_intrinsic(i, j) = out.khat_intrinsic(j, i) = kb;
                out.tau_hat += ka;
            }
    }
    return out;
}

Vec second_fundamental_form_map(const SubmersionMap& F, const Point& p, const Vec& X,
                                const Vec& Y, const DiffScheme& s) {
    const int n = F.source_dim();
    // s(q) = J(q) Y, the push-forward of the constant extension of Y; a section
    // of the pullback bundle, so it carries target components over source
    // points and is differenced by hand.
    auto push = [&F, &Y](const Point& q) -> Vec { return differential_unchecked(F, q) * Y; };
    Vec dterm = Vec::Zero(F.target_dim());
    for (int a = 0; a < n; ++a) {
        if (X[a] == 0.0) continue;
        const double h = s.step;
        Vec fp = push(p.shifted(a, h));
        Vec fm = push(p.shifted(a, -h));
        dterm += X[a] * (fp - fm) / (2.0 * h);
    }
    const Mat J = differential_unchecked(F, p);
    const Point fp = F.map_point(p);
    const ChristoffelSample gamN = christoffel(F.target->metric(), fp, s);
    const Vec pullback_term = gamN.apply(J * X, J * Y);
    const ChristoffelSample gamM = christoffel(F.source.metric(), p, s);
    return dterm + pullback_term - J * gamM.apply(X, Y);
}

Vec tension_field(const SubmersionMap& F, const Point& p, const std::vector<Vec>& frame) {
    Vec tau = Vec::Zero(F.target_dim());
    for (const Vec& e : frame) tau += second_fundamental_form_map(F, p, e, e);
    return tau;
}

Vec tension_field(const SubmersionMap& F, const Point& p) {
    const int n = F.source_dim();
    std::vector<Vec> basis;
    basis.reserve(n);
    for (int i = 0; i < n; ++i) basis.push_back(Vec::Unit(n, i));
    return tension_field(F, p, gram_schmidt(F.source.metric(), p, basis));
}

Vec nabla_T(const SubmersionMap& F, const Point& p, const Vec& X, const Vec& V, const Vec& W,
            const DiffScheme& s) {
    VectorField TVW([F, V, W](const Point& q) -> Vec { return oneill_T(F, q, V, W); });
    const ChristoffelSample gam = christoffel(F.source.metric(), p);
    const Vec term1 = covariant_derivative_along(gam, X, TVW, p, s);
    const Vec term2 = oneill_T(F, p, gam.apply(X, V), W);
    const Vec term3 = oneill_T(F, p, V, gam.apply(X, W));
    return term1 - term2 - term3;
}

Vec nabla_A(const SubmersionMap& F, const Point& p, const Vec& V, const Vec& X, const Vec& Y,
            const DiffScheme& s) {
    VectorField AXY([F, X, Y](const Point& q) -> Vec { return oneill_A(F, q, X, Y); });
    const ChristoffelSample gam = christoffel(F.source.metric(), p);
    const Vec term1 = covariant_derivative_along(gam, V, AXY, p, s);
    const Vec term2 = oneill_A(F, p, gam.apply(V, X), Y);
    const Vec term3 = oneill_A(F, p, X, gam.apply(V, Y));
    return term1 - term2 - term3;
}

StructureReport verify_curvature_identities(const SubmersionMap& F, int samples,
                                            std::uint64_t seed, double tol_scale) {
    if (samples < 1) fail("UsageError", "samples must be >= 1");
    const int n = F.source_dim();
    constexpr std::size_t kWidth = 11;
    auto rows = sample_defect_matrix(
        samples, kWidth, seed, default_exec_mode(),
        [&](std::size_t, Rng& rng, std::span<double> out) {
            Point p = sample_point(F.source.model(), rng);
            const auto sp = split(F, p);
            const Mat G = F.source.metric()(p);
            const int k = sp.vertical_dim();
            const int h = sp.horizontal_dim();

            auto random_combo = [&](const std::vector<Vec>& basis) -> Vec {
                Vec v = Vec::Zero(n);
                for (const Vec& b : basis) v += rng.uniform(-1.0, 1.0) * b;
                const double nn = std::sqrt(v.dot(G * v));
                return nn > 1e-8 ? Vec(v / nn) : basis.front();
            };

            const Vec D = rng.uniform_vector(n, -1.0, 1.0);
            const Vec E = rng.uniform_vector(n, -1.0, 1.0);
            const Vec Gv = rng.uniform_vector(n, -1.0, 1.0);

            // Skew-adjointness (two random triples suffice per sample).
            const Vec TDE = oneill_T(F, p, D, E);
            const Vec TDG = oneill_T(F, p, D, Gv);
            out[0] = std::abs(TDE.dot(G * Gv) + TDG.dot(G * E));
            const Vec ADE = oneill_A(F, p, D, E);
            const Vec ADG = oneill_A(F, p, D, Gv);
            out[1] = std::abs(ADE.dot(G * Gv) + ADG.dot(G * E));

            // T symmetry on vertical pairs.
            const Vec U = random_combo(sp.vertical);
            const Vec Wv = random_combo(sp.vertical);
            out[2] = (oneill_T(F, p, U, Wv) - oneill_T(F, p, Wv, U)).norm();

            // A alternation on horizontal pairs and the half-bracket identity
            // for basic fields.
            const Vec X = random_combo(sp.horizontal);
            const Vec Y = random_combo(sp.horizontal);
            out[3] = (oneill_A(F, p, X, Y) + oneill_A(F, p, Y, X)).norm();
            {
                const Mat J = differential(F, p);
                VectorField Xb = basic_field(F, J * X);
                VectorField Yb = basic_field(F, J * Y);
                const Vec br = lie_bracket(Xb, Yb, p);
                out[4] = (oneill_A(F, p, Xb(p), Yb(p)) - 0.5 * sp.project_v(br)).norm();
            }

            // Restrictions T_E = T_{VE}, A_E = A_{HE}.
            out[5] = (oneill_T(F, p, E, Gv) - oneill_T(F, p, sp.project_v(E), Gv)).norm();
            out[6] = (oneill_A(F, p, E, Gv) - oneill_A(F, p, sp.project_h(E), Gv)).norm();

            // Curvature relations.
            if (k >= 2) {
                const RiemannTensor R = riemann_tensor(F.source.metric(), p);
                FibreChart chart(F, p);
                const Vec S = random_combo(sp.vertical);
                const Vec V = random_combo(sp.vertical);
                const Vec TUW = oneill_T(F, p, U, Wv);
                const Vec TVS = oneill_T(F, p, V, S);
                const Vec TVW = oneill_T(F, p, V, Wv);
                const Vec TUS = oneill_T(F, p, U, S);
                const double lhs = U.dot(G * R.apply(S, Wv, V));
                const double rhs = chart.lowered_curvature(S, Wv, V, U) + TUW.dot(G * TVS) -
                                   TVW.dot(G * TUS);
                out[7] = std::abs(lhs - rhs);

                // (4E) on the first orthonormal vertical pair.
                const Vec& u1 = sp.vertical[0];
                const Vec& u2 = sp.vertical[1];
                const double K = sectional_curvature(R, G, u1, u2);
                const Vec T12 = oneill_T(F, p, u1, u2);
                const Vec T11 = oneill_T(F, p, u1, u1);
                const Vec T22 = oneill_T(F, p, u2, u2);
                const double khat = chart.sectional(u1, u2);
                out[8] = std::abs(K - (khat + T12.dot(G * T12) - T11.dot(G * T22)));

                // Mixed identity: g(R(X,V)W, Y) = g((nabla_X T)(V,W), Y)
                //   + g((nabla_V A)(X,Y), W) - g(T_V X, T_W Y) + g(A_X V, A_Y W).
                const double mixed_lhs = Y.dot(G * R.apply(X, V, Wv));
                const double mixed_rhs =
                    Y.dot(G * nabla_T(F, p, X, V, Wv)) + Wv.dot(G * nabla_A(F, p, V, X, Y)) -
                    oneill_T(F, p, V, X).dot(G * oneill_T(F, p, Wv, Y)) +
                    oneill_A(F, p, X, V).dot(G * oneill_A(F, p, Y, Wv));
                out[9] = std::abs(mixed_lhs - mixed_rhs);
            }

            // T_U xi = 0 whenever xi is vertical or horizontal.
            const Vec xi = F.source.xi()(p);
            const double vx = sp.project_v(xi).norm();
            const double hx = sp.project_h(xi).norm();
            if (vx < 1e-8 || hx < 1e-8) out[10] = oneill_T(F, p, U, xi).norm();
            (void)h;
        });

    StructureReport rep;
    rep.samples = samples;
    rep.seed = seed;
    const struct {
        const char* name;
        std::size_t col;
        double tol;
    } defs[] = {
        {"skew-adjoint-T", 0, 1e-6},  {"skew-adjoint-A", 1, 1e-6},
        {"T-symmetric", 2, 1e-6},     {"A-alternating", 3, 1e-6},
        {"A-half-bracket", 4, 1e-6},  {"T-vertical-restricted", 5, 1e-6},
        {"A-horizontal-restricted", 6, 1e-6},
        {"curvature-vertical", 7, 1e-4}, {"curvature-sectional", 8, 1e-4},
        {"curvature-mixed", 9, 1e-3}, {"T-xi", 10, 1e-7},
    };
    for (const auto& d : defs)
        rep.checks.push_back(
            CheckRecord::make(d.name, column_max(rows, kWidth, d.col), d.tol * tol_scale));
    return rep;
}

} // namespace slantsub
