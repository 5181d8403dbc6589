#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slantsub/errors.hpp"
#include "slantsub/sampling.hpp"

namespace slantsub {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Axis-aligned chart domain.
struct Box {
    Vec lo;
    Vec hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const Vec& x, double margin = 0.0) const;

    /// [-half, half]^n
    static Box centered(int n, double half);
};

struct DiffScheme {
    double step = 1e-5;
    int order = 2; // 2 or 4

    DiffScheme() = default;
    DiffScheme(double s, int o);

    /// How far the widest stencil reaches from the base point.
    double reach() const { return step * (order == 4 ? 2.0 : 1.0); }
};

/// Step used for curvature-level (nested) differentiation.
inline DiffScheme curvature_scheme() { return DiffScheme(1e-4, 2); }

class ManifoldModel;
class MetricField;

/// A chart point. Owns its coordinates; carries a non-owning reference to the
/// model whose chart it lives in (models outlive the points they produce).
class Point {
public:
    Point(const ManifoldModel& model, Vec coords);

    const Vec& coords() const { return coords_; }
    double coord(int i) const { return coords_[i]; }
    int dim() const { return static_cast<int>(coords_.size()); }
    const ManifoldModel& model() const { return *model_; }

    /// Same chart, coordinates displaced along one axis. Throws
    /// StencilOutOfDomain when the displaced point leaves the chart box.
    Point shifted(int axis, double delta) const;

private:
    const ManifoldModel* model_;
    Vec coords_;
};

class ScalarField {
public:
    using Fn = std::function<double(const Point&)>;
    ScalarField() = default;
    explicit ScalarField(Fn fn) : fn_(std::move(fn)) {}
    double operator()(const Point& p) const { return fn_(p); }

private:
    Fn fn_;
};

class VectorField {
public:
    using Fn = std::function<Vec(const Point&)>;
    VectorField() = default;
    explicit VectorField(Fn fn) : fn_(std::move(fn)) {}
    Vec operator()(const Point& p) const;

    /// Coordinate-constant extension of a tangent vector.
    static VectorField constant(Vec v);

private:
    Fn fn_;
};

/// Covector field; evaluates to the component row (eta_1, ..., eta_n).
class OneFormField {
public:
    using Fn = std::function<Vec(const Point&)>;
    OneFormField() = default;
    explicit OneFormField(Fn fn) : fn_(std::move(fn)) {}
    Vec operator()(const Point& p) const;
    double apply(const Point& p, const Vec& v) const { return (*this)(p).dot(v); }

    static OneFormField constant(Vec v);

private:
    Fn fn_;
};

/// (1,1)-tensor field as a coordinate matrix: column j holds the image of d/dx_j.
class EndomorphismField {
public:
    using Fn = std::function<Mat(const Point&)>;
    EndomorphismField() = default;
    explicit EndomorphismField(Fn fn) : fn_(std::move(fn)) {}
    Mat operator()(const Point& p) const;

    static EndomorphismField constant(Mat m);

private:
    Fn fn_;
};

/// Symmetric positive-definite metric. The constructor wraps the evaluator so
/// that every returned matrix is exactly symmetric.
class MetricField {
public:
    using Fn = std::function<Mat(const Point&)>;
    MetricField() = default;
    explicit MetricField(Fn fn);

    /// Symmetrized matrix, no definiteness check (hot path).
    Mat operator()(const Point& p) const;

    static MetricField euclidean();

private:
    Fn fn_;
};

class ManifoldModel {
public:
    ManifoldModel(std::string name, int dim, Box domain, MetricField metric);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const Box& domain() const { return domain_; }
    const MetricField& metric() const { return metric_; }

    Point point(Vec coords) const { return Point(*this, std::move(coords)); }

private:
    std::string name_;
    int dim_;
    Box domain_;
    MetricField metric_;
};

using ModelPtr = std::shared_ptr<const ManifoldModel>;

ModelPtr make_model(std::string name, int dim, Box domain, MetricField metric);
ModelPtr make_euclidean_model(std::string name, int dim, double half = 0.9);

/// Metric matrix at p, with the positive-definiteness contract enforced.
/// Throws NonPositiveDefinite when the smallest eigenvalue is not positive
/// to tolerance, PointOutOfDomain when p left the chart.
Mat metric_eval(const MetricField& g, const Point& p);

/// Central-difference partial derivative d f / d x_axis.
double numeric_partial(const ScalarField& f, const Point& p, int axis, const DiffScheme& s);
Vec numeric_partial(const VectorField& f, const Point& p, int axis, const DiffScheme& s);
Vec numeric_partial(const OneFormField& f, const Point& p, int axis, const DiffScheme& s);
Mat numeric_partial(const MetricField& f, const Point& p, int axis, const DiffScheme& s);
Mat numeric_partial(const EndomorphismField& f, const Point& p, int axis, const DiffScheme& s);

/// Singular values below tol * sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-8;

/// Orthonormal (Euclidean) basis of ker M. Empty result allowed.
std::vector<Vec> nullspace(const Mat& M, double tol = kRankTolerance);

/// g(p)-orthonormal basis with the span of vs, by modified Gram-Schmidt.
/// Throws RankDeficient when the input is dependent to tolerance.
std::vector<Vec> gram_schmidt(const MetricField& g, const Point& p, const std::vector<Vec>& vs);

/// g(p)-orthonormal basis of the g-orthogonal complement of span(basis).
std::vector<Vec> orthogonal_complement(const MetricField& g, const Point& p,
                                       const std::vector<Vec>& basis);

/// Columns of the returned matrix are the given vectors.
Mat columns(const std::vector<Vec>& vs);

/// Draws a point uniformly from the model box, rejecting points closer than
/// `margin` (as a fraction of each axis width) to the boundary so that
/// differentiation stencils stay inside. Rejections are counted.
inline constexpr double kSampleMargin = 0.025;
Point sample_point(const ManifoldModel& model, Rng& rng, int* resampled = nullptr);

} // namespace slantsub
