#include "slantsub/geometry.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace slantsub {

bool Box::contains(const Vec& x, double margin) const {
    if (x.size() != lo.size()) return false;
    for (int i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
    return true;
}

Box Box::centered(int n, double half) {
    Box b;
    b.lo = Vec::Constant(n, -half);
    b.hi = Vec::Constant(n, half);
    return b;
}

DiffScheme::DiffScheme(double s, int o) : step(s), order(o) {
    if (!(s > 0.0)) fail("InvalidScheme", "step must be positive");
    if (o != 2 && o != 4) fail("InvalidScheme", "order must be 2 or 4");
}

Point::Point(const ManifoldModel& model, Vec coords)
    : model_(&model), coords_(std::move(coords)) {
    if (coords_.size() != model.dim())
        fail("ShapeMismatch", "point has " + std::to_string(coords_.size()) +
                                  " coordinates, model '" + model.name() + "' has dimension " +
                                  std::to_string(model.dim()));
    if (!model.domain().contains(coords_))
        fail("PointOutOfDomain", "point outside the chart box of '" + model.name() + "'");
}

Point Point::shifted(int axis, double delta) const {
    Vec c = coords_;
    c[axis] += delta;
    if (!model_->domain().contains(c))
        fail("StencilOutOfDomain", "stencil point left the chart box of '" + model_->name() +
                                       "' on axis " + std::to_string(axis));
    return Point(*model_, std::move(c));
}

Vec VectorField::operator()(const Point& p) const {
    Vec v = fn_(p);
    if (v.size() != p.dim()) fail("ShapeMismatch", "vector field output has wrong dimension");
    return v;
}

VectorField VectorField::constant(Vec v) {
    return VectorField([v = std::move(v)](const Point&) { return v; });
}

Vec OneFormField::operator()(const Point& p) const {
    Vec v = fn_(p);
    if (v.size() != p.dim()) fail("ShapeMismatch", "one-form field output has wrong dimension");
    return v;
}

OneFormField OneFormField::constant(Vec v) {
    return OneFormField([v = std::move(v)](const Point&) { return v; });
}

Mat EndomorphismField::operator()(const Point& p) const {
    Mat m = fn_(p);
    if (m.rows() != p.dim() || m.cols() != p.dim())
        fail("ShapeMismatch", "endomorphism field output has wrong dimensions");
    return m;
}

EndomorphismField EndomorphismField::constant(Mat m) {
    return EndomorphismField([m = std::move(m)](const Point&) { return m; });
}

MetricField::MetricField(Fn fn)
    : fn_([inner = std::move(fn)](const Point& p) -> Mat {
          Mat m = inner(p);
          return 0.5 * (m + m.transpose());
      }) {}

Mat MetricField::operator()(const Point& p) const {
    Mat m = fn_(p);
    if (m.rows() != p.dim() || m.cols() != p.dim())
        fail("ShapeMismatch", "metric field output has wrong dimensions");
    return m;
}

MetricField MetricField::euclidean() {
    return MetricField([](const Point& p) { return Mat::Identity(p.dim(), p.dim()); });
}

ManifoldModel::ManifoldModel(std::string name, int dim, Box domain, MetricField metric)
    : name_(std::move(name)), dim_(dim), domain_(std::move(domain)), metric_(std::move(metric)) {
    if (dim_ <= 0) fail("ShapeMismatch", "model dimension must be positive");
    if (domain_.dim() != dim_) fail("ShapeMismatch", "domain box dimension mismatch");
    for (int i = 0; i < dim_; ++i)
        if (!(domain_.lo[i] < domain_.hi[i]))
            fail("ShapeMismatch", "domain box is empty on axis " + std::to_string(i));
}

ModelPtr make_model(std::string name, int dim, Box domain, MetricField metric) {
    return std::make_shared<const ManifoldModel>(std::move(name), dim, std::move(domain),
                                                 std::move(metric));
}

ModelPtr make_euclidean_model(std::string name, int dim, double half) {
    return make_model(std::move(name), dim, Box::centered(dim, half), MetricField::euclidean());
}

Mat metric_eval(const MetricField& g, const Point& p) {
    Mat m = g(p);
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues().minCoeff();
    const double emax = es.eigenvalues().maxCoeff();
    if (!(emin > 1e-12 * std::max(1.0, emax)))
        fail("NonPositiveDefinite",
             "metric eigenvalue " + std::to_string(emin) + " at a sampled point");
    return m;
}

namespace {

// Central differences, order 2 or 4, on an arbitrary point-evaluable.
template <class F>
auto central_diff(F&& eval, const Point& p, int axis, const DiffScheme& s)
    -> decltype(eval(p)) {
    const double h = s.step;
    if (s.order == 2) {
        auto fp = eval(p.shifted(axis, h));
        auto fm = eval(p.shifted(axis, -h));
        return (fp - fm) / (2.0 * h);
    }
    auto f2p = eval(p.shifted(axis, 2.0 * h));
    auto f1p = eval(p.shifted(axis, h));
    auto f1m = eval(p.shifted(axis, -h));
    auto f2m = eval(p.shifted(axis, -2.0 * h));
    return (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
}

} // namespace

double numeric_partial(const ScalarField& f, const Point& p, int axis, const DiffScheme& s) {
    // The scalar overload cannot use central_diff directly (double has no .eval()).
    const double h = s.step;
    if (s.order == 2)
        return (f(p.shifted(axis, h)) - f(p.shifted(axis, -h))) / (2.0 * h);
    return (-f(p.shifted(axis, 2.0 * h)) + 8.0 * f(p.shifted(axis, h)) -
            8.0 * f(p.shifted(axis, -h)) + f(p.shifted(axis, -2.0 * h))) /
           (12.0 * h);
}

Vec numeric_partial(const VectorField& f, const Point& p, int axis, const DiffScheme& s) {
    return central_diff([&](const Point& q) { return f(q); }, p, axis, s);
}

Vec numeric_partial(const OneFormField& f, const Point& p, int axis, const DiffScheme& s) {
    return central_diff([&](const Point& q) { return f(q); }, p, axis, s);
}

Mat numeric_partial(const MetricField& f, const Point& p, int axis, const DiffScheme& s) {
    return central_diff([&](const Point& q) { return f(q); }, p, axis, s);
}

Mat numeric_partial(const EndomorphismField& f, const Point& p, int axis, const DiffScheme& s) {
    return central_diff([&](const Point& q) { return f(q); }, p, axis, s);
}

std::vector<Vec> nullspace(const Mat& M, double tol) {
    const int n = static_cast<int>(M.cols());
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * smax) ++rank;
    std::vector<Vec> basis;
    basis.reserve(n - rank);
    for (int j = rank; j < n; ++j) basis.push_back(svd.matrixV().col(j));
    return basis;
}

std::vector<Vec> gram_schmidt(const MetricField& g, const Point& p, const std::vector<Vec>& vs) {
    const Mat G = g(p);
    std::vector<Vec> out;
    out.reserve(vs.size());
    for (const Vec& v : vs) {
        if (v.size() != G.rows()) fail("ShapeMismatch", "gram_schmidt input dimension mismatch");
        Vec w = v;
        for (const Vec& u : out) w -= (u.dot(G * w)) * u;
        // Second pass keeps orthogonality at 1e-15 even for ill-conditioned input.
        for (const Vec& u : out) w -= (u.dot(G * w)) * u;
        const double n2 = w.dot(G * w);
        const double v2 = v.dot(G * v);
        if (!(n2 > kRankTolerance * kRankTolerance * std::max(v2, 1e-300)) || v2 == 0.0)
            fail("RankDeficient", "gram_schmidt input is linearly dependent to tolerance");
        out.push_back(w / std::sqrt(n2));
    }
    return out;
}

std::vector<Vec> orthogonal_complement(const MetricField& g, const Point& p,
                                       const std::vector<Vec>& basis) {
    const Mat G = g(p);
    const int n = static_cast<int>(G.rows());
    if (basis.empty()) return gram_schmidt(g, p, nullspace(Mat::Zero(1, n)));
    Mat B(basis.size(), n);
    for (std::size_t i = 0; i < basis.size(); ++i) B.row(static_cast<int>(i)) = basis[i];
    // Rank check on the inputs themselves.
    Eigen::JacobiSVD<Mat> svd(B);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i)
        if (!(sv[i] > kRankTolerance * sv[0]))
            fail("RankDeficient", "orthogonal_complement input basis is dependent");
    // w is g-orthogonal to every basis vector iff (B G) w = 0.
    std::vector<Vec> raw = nullspace(B * G);
    return gram_schmidt(g, p, raw);
}

Mat columns(const std::vector<Vec>& vs) {
    if (vs.empty()) return Mat(0, 0);
    Mat m(vs[0].size(), vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<int>(j)) = vs[j];
    return m;
}

Point sample_point(const ManifoldModel& model, Rng& rng, int* resampled) {
    const Box& box = model.domain();
    const int n = model.dim();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Vec x(n);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            x[i] = rng.uniform(box.lo[i], box.hi[i]);
            const double m = kSampleMargin * (box.hi[i] - box.lo[i]);
            if (x[i] < box.lo[i] + m || x[i] > box.hi[i] - m) ok = false;
        }
        if (ok) return model.point(std::move(x));
        if (resampled) ++(*resampled);
    }
    fail("PointOutOfDomain", "could not sample an interior point of '" + model.name() + "'");
}

} // namespace slantsub
