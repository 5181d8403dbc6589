#include "slantsub/almost_contact.hpp"

#include <algorithm>
#include <cmath>

namespace slantsub {

bool StructureReport::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.pass; });
}

double StructureReport::defect(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c.max_defect;
    fail("UnknownCheck", "no check named '" + name + "'");
}

AlmostContactStructure::AlmostContactStructure(ModelPtr model, EndomorphismField phi,
                                               VectorField xi, OneFormField eta)
    : model_(std::move(model)), phi_(std::move(phi)), xi_(std::move(xi)), eta_(std::move(eta)) {
    if (model_->dim() % 2 == 0)
        fail("ShapeMismatch", "almost contact structures need odd dimension, got " +
                                  std::to_string(model_->dim()));
}

AlmostContactStructure AlmostContactStructure::make_unchecked(ModelPtr model,
                                                              EndomorphismField phi,
                                                              VectorField xi, OneFormField eta) {
    return AlmostContactStructure(std::move(model), std::move(phi), std::move(xi),
                                  std::move(eta));
}

AlmostContactStructure AlmostContactStructure::make(ModelPtr model, EndomorphismField phi,
                                                    VectorField xi, OneFormField eta) {
    AlmostContactStructure S(std::move(model), std::move(phi), std::move(xi), std::move(eta));
    StructureReport r = check_almost_contact(S, 32, 0x5eedULL);
    for (const auto& c : r.checks)
        if (c.max_defect > 1e-8)
            throw StructureInvalidError(
                r, "StructureInvalid: axiom '" + c.name + "' fails with defect " +
                       std::to_string(c.max_defect));
    return S;
}

VectorField AlmostContactStructure::phi_of(const VectorField& Y) const {
    return VectorField([phi = phi_, Y](const Point& q) -> Vec { return phi(q) * Y(q); });
}

StructureReport check_almost_contact(const AlmostContactStructure& S, int samples,
                                     std::uint64_t seed, double tol_scale) {
    if (samples < 1) fail("UsageError", "samples must be >= 1");
    const int n = S.model().dim();
    constexpr std::size_t kWidth = 7; // six axiom defects + resample count
    auto rows = sample_defect_matrix(
        samples, kWidth, seed, default_exec_mode(),
        [&](std::size_t, Rng& rng, std::span<double> out) {
            int resampled = 0;
            Point p = sample_point(S.model(), rng, &resampled);
            const Mat G = metric_eval(S.metric(), p);
            const Mat Phi = S.phi()(p);
            const Vec xi = S.xi()(p);
            const Vec eta = S.eta()(p);
            const Vec X = rng.uniform_vector(n, -1.0, 1.0);
            const Vec Y = rng.uniform_vector(n, -1.0, 1.0);

            const Vec phi2X = Phi * (Phi * X);
            out[0] = (phi2X + X - eta.dot(X) * xi).norm();          // phi^2 = -I + eta(x)xi
            out[1] = (Phi * xi).norm();                             // phi xi = 0
            out[2] = std::abs(eta.dot(Phi * X));                    // eta o phi = 0
            out[3] = std::abs(eta.dot(xi) - 1.0);                   // eta(xi) = 1
            const double lhs = (Phi * X).dot(G * (Phi * Y));
            const double rhs = X.dot(G * Y) - eta.dot(X) * eta.dot(Y);
            out[4] = std::abs(lhs - rhs);                           // metric compatibility
            out[5] = std::abs(eta.dot(X) - X.dot(G * xi));          // eta = g(., xi)
            out[6] = resampled;
        });

    StructureReport rep;
    rep.samples = samples;
    rep.seed = seed;
    rep.resampled = static_cast<int>(column_max(rows, kWidth, 6));
    const double tol = 1e-10 * tol_scale;
    const char* names[6] = {"phi-squared",      "phi-xi",     "eta-of-phi",
                            "eta-of-xi",        "metric-phi", "eta-duality"};
    for (int c = 0; c < 6; ++c)
        rep.checks.push_back(CheckRecord::make(names[c], column_max(rows, kWidth, c), tol));
    return rep;
}

double fundamental_two_form(const AlmostContactStructure& S, const Point& p, const Vec& X,
                            const Vec& Y) {
    return X.dot(S.metric()(p) * (S.phi()(p) * Y));
}

namespace {

// Coefficient matrix Phi_ij = g(d_i, phi d_j) = (G phi)_ij as a matrix field.
Mat two_form_matrix(const AlmostContactStructure& S, const Point& p) {
    return S.metric()(p) * S.phi()(p);
}

Mat two_form_partial(const AlmostContactStructure& S, const Point& p, int axis,
                     const DiffScheme& s) {
    const double h = s.step;
    if (s.order == 2)
        return (two_form_matrix(S, p.shifted(axis, h)) -
                two_form_matrix(S, p.shifted(axis, -h))) /
               (2.0 * h);
    return (-two_form_matrix(S, p.shifted(axis, 2 * h)) +
            8.0 * two_form_matrix(S, p.shifted(axis, h)) -
            8.0 * two_form_matrix(S, p.shifted(axis, -h)) +
            two_form_matrix(S, p.shifted(axis, -2 * h))) /
           (12.0 * h);
}

} // namespace

StructureReport check_closed(const AlmostContactStructure& S, int samples, std::uint64_t seed,
                             double tol_scale, const DiffScheme& s) {
    if (samples < 1) fail("UsageError", "samples must be >= 1");
    const int n = S.model().dim();
    constexpr std::size_t kWidth = 2;
    auto rows = sample_defect_matrix(
        samples, kWidth, seed, default_exec_mode(),
        [&](std::size_t, Rng& rng, std::span<double> out) {
            Point p = sample_point(S.model(), rng);
            // dPhi_{abc} = d_a Phi_bc - d_b Phi_ac + d_c Phi_ab over a < b < c
            std::vector<Mat> dPhi(n);
            std::vector<Vec> dEta(n);
            for (int a = 0; a < n; ++a) {
                dPhi[a] = two_form_partial(S, p, a, s);
                dEta[a] = numeric_partial(S.eta(), p, a, s);
            }
            double dphi_max = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c)
                        dphi_max = std::max(
                            dphi_max, std::abs(dPhi[a](b, c) - dPhi[b](a, c) + dPhi[c](a, b)));
            double deta_max = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    deta_max = std::max(deta_max, std::abs(dEta[a][b] - dEta[b][a]));
            out[0] = dphi_max;
            out[1] = deta_max;
        });

    StructureReport rep;
    rep.samples = samples;
    rep.seed = seed;
    const double tol = 1e-8 * tol_scale;
    rep.checks.push_back(CheckRecord::make("dPhi-closed", column_max(rows, kWidth, 0), tol));
    rep.checks.push_back(CheckRecord::make("deta-closed", column_max(rows, kWidth, 1), tol));
    return rep;
}

Vec nijenhuis_defect(const AlmostContactStructure& S, const Point& p, const VectorField& X,
                     const VectorField& Y, const DiffScheme& s) {
    const Mat Phi = S.phi()(p);
    const Vec xi = S.xi()(p);
    VectorField phiX = S.phi_of(X);
    VectorField phiY = S.phi_of(Y);

    const Vec xy = lie_bracket(X, Y, p, s);
    const Vec t1 = Phi * (Phi * xy);
    const Vec t2 = lie_bracket(phiX, phiY, p, s);
    const Vec t3 = Phi * lie_bracket(phiX, Y, p, s);
    const Vec t4 = Phi * lie_bracket(X, phiY, p, s);

    // 2 d(eta)(X,Y) = 2 ( X[eta(Y)] - Y[eta(X)] - eta([X,Y]) )
    ScalarField etaY([&S, &Y](const Point& q) { return S.eta()(q).dot(Y(q)); });
    ScalarField etaX([&S, &X](const Point& q) { return S.eta()(q).dot(X(q)); });
    const Vec xv = X(p);
    const Vec yv = Y(p);
    double XetaY = 0.0, YetaX = 0.0;
    for (int a = 0; a < p.dim(); ++a) {
        if (xv[a] != 0.0) XetaY += xv[a] * numeric_partial(etaY, p, a, s);
        if (yv[a] != 0.0) YetaX += yv[a] * numeric_partial(etaX, p, a, s);
    }
    const double deta = XetaY - YetaX - S.eta()(p).dot(xy);

    return t1 + t2 - t3 - t4 + deta * xi;
}

StructureReport check_cosymplectic(const AlmostContactStructure& S, int samples,
                                   std::uint64_t seed, double tol_scale, const DiffScheme& s) {
    if (samples < 1) fail("UsageError", "samples must be >= 1");
    constexpr std::size_t kWidth = 2;
    auto rows = sample_defect_matrix(
        samples, kWidth, seed, default_exec_mode(),
        [&](std::size_t, Rng& rng, std::span<double> out) {
            Point p = sample_point(S.model(), rng);
            VectorField E = random_smooth_field(S.model(), rng);
            VectorField G = random_smooth_field(S.model(), rng);
            const Vec e = E(p);
            const ChristoffelSample gam = christoffel(S.metric(), p, s);
            // (nabla_E phi)G = nabla_E(phi G) - phi(nabla_E G)
            const Vec lhs = covariant_derivative_along(gam, e, S.phi_of(G), p, s);
            const Vec rhs = S.phi()(p) * covariant_derivative_along(gam, e, G, p, s);
            out[0] = (lhs - rhs).norm();
            out[1] = covariant_derivative_along(gam, e, S.xi(), p, s).norm();
        });

    StructureReport rep;
    rep.samples = samples;
    rep.seed = seed;
    const double tol = 1e-6 * tol_scale;
    rep.checks.push_back(CheckRecord::make("nabla-phi", column_max(rows, kWidth, 0), tol));
    rep.checks.push_back(CheckRecord::make("nabla-xi", column_max(rows, kWidth, 1), tol));
    return rep;
}

double phi_sectional(const AlmostContactStructure& S, const Point& p, const Vec& E,
                     const DiffScheme& inner, const DiffScheme& outer) {
    const Mat G = S.metric()(p);
    const Vec xi = S.xi()(p);
    if (std::abs(E.dot(G * E) - 1.0) > 1e-8) fail("NotUnit", "phi_sectional needs a unit vector");
    if (std::abs(E.dot(G * xi)) > 1e-8)
        fail("NotOrthogonalToXi", "phi_sectional needs E orthogonal to xi");
    const Vec phiE = S.phi()(p) * E;
    return E.dot(G * riemann(S.metric(), p, E, phiE, phiE, inner, outer));
}

Vec space_form_curvature(double c, const AlmostContactStructure& S, const Point& p, const Vec& X,
                         const Vec& Y, const Vec& Z) {
    const Mat G = S.metric()(p);
    const Mat Phi = S.phi()(p);
    const Vec xi = S.xi()(p);
    const Vec eta = S.eta()(p);
    const Vec phiX = Phi * X;
    const Vec phiY = Phi * Y;
    const Vec phiZ = Phi * Z;
    const double eX = eta.dot(X), eY = eta.dot(Y), eZ = eta.dot(Z);
    const double gYZ = Y.dot(G * Z), gXZ = X.dot(G * Z);
    const double gphiYZ = phiY.dot(G * Z), gphiXZ = phiX.dot(G * Z), gphiXY = phiX.dot(G * Y);
    Vec R = gYZ * X - gXZ * Y + eX * eZ * Y - eY * eZ * X + gXZ * eY * xi - gYZ * eX * xi +
            gphiYZ * phiX - gphiXZ * phiY - 2.0 * gphiXY * phiZ;
    return (c / 4.0) * R;
}

VectorField random_smooth_field(const ManifoldModel& model, Rng& rng) {
    const int n = model.dim();
    const Vec a = rng.uniform_vector(n, -1.0, 1.0);
    Mat B(n, n);
    for (int i = 0; i < n; ++i) B.row(i) = rng.uniform_vector(n, -0.5, 0.5).transpose();
    const Vec c = rng.uniform_vector(n, -0.5, 0.5);
    std::vector<int> axis(n);
    for (int i = 0; i < n; ++i) axis[i] = static_cast<int>(rng.next_u64() % n);
    return VectorField([a, B, c, axis](const Point& q) -> Vec {
        Vec v = a + B * q.coords();
        for (int i = 0; i < v.size(); ++i) v[i] += c[i] * std::sin(q.coord(axis[i]));
        return v;
    });
}

} // namespace slantsub
