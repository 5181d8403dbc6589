#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "slantsub/almost_contact.hpp"
#include "slantsub/connection.hpp"
#include "slantsub/geometry.hpp"

namespace slantsub {

/// Smooth map from an almost contact metric source onto a Riemannian target.
/// The Jacobian evaluator is optional; finite differences are the fallback.
struct SubmersionMap {
    AlmostContactStructure source;
    ModelPtr target;
    std::function<Vec(const Point&)> map;
    std::function<Mat(const Point&)> jacobian; // may be null

    Point map_point(const Point& p) const { return target->point(map(p)); }
    int source_dim() const { return source.model().dim(); }
    int target_dim() const { return target->dim(); }
    int fibre_dim() const { return source_dim() - target_dim(); }
};

/// Jacobian at p. Analytic evaluator when present, otherwise order-4 central
/// differences. Throws RankDeficient unless rank equals the target dimension.
Mat differential(const SubmersionMap& F, const Point& p);
Mat differential_unchecked(const SubmersionMap& F, const Point& p);

/// Pointwise splitting of the tangent space: vertical = ker F_*, horizontal =
/// its g-orthogonal complement, both g-orthonormal, plus the g-orthogonal
/// projector matrices (V + H = I, idempotent, g-self-adjoint).
struct VerticalHorizontalSplit {
    Vec point;
    std::vector<Vec> vertical;
    std::vector<Vec> horizontal;
    Mat proj_v;
    Mat proj_h;

    int vertical_dim() const { return static_cast<int>(vertical.size()); }
    int horizontal_dim() const { return static_cast<int>(horizontal.size()); }
    Vec project_v(const Vec& x) const { return proj_v * x; }
    Vec project_h(const Vec& x) const { return proj_h * x; }
};

VerticalHorizontalSplit split(const SubmersionMap& F, const Point& p);

/// g-orthogonal projector onto ker F_* at p (basis-free, smooth in p).
Mat vertical_projector(const SubmersionMap& F, const Point& p);

/// The fields q -> P_V(q) v and q -> P_H(q) v for a fixed coordinate vector v:
/// the coordinate-constant extension projected onto the distribution.
VectorField projected_vertical_field(const SubmersionMap& F, Vec v);
VectorField projected_horizontal_field(const SubmersionMap& F, Vec v);

/// Basic (F-related to a constant target field) horizontal extension:
/// X(q) = G^-1 J^T (J G^-1 J^T)^-1 w, so F_* X = w everywhere.
VectorField basic_field(const SubmersionMap& F, Vec target_vector);

/// Axiom checks: S1 max rank, S2 isometry on horizontal vectors.
StructureReport check_axioms(const SubmersionMap& F, int samples, std::uint64_t seed,
                             double tol_scale = 1.0);

/// O'Neill tensors at p, for tangent vectors (coordinate-constant projected
/// extension) or explicit field arguments:
///   T_E G = H nabla_{VE} (VG) + V nabla_{VE} (HG)
///   A_E G = V nabla_{HE} (HG) + H nabla_{HE} (VG)
Vec oneill_T(const SubmersionMap& F, const Point& p, const Vec& E, const Vec& G,
             const DiffScheme& s = DiffScheme());
Vec oneill_T(const SubmersionMap& F, const Point& p, const Vec& E, const VectorField& G,
             const DiffScheme& s = DiffScheme());
Vec oneill_A(const SubmersionMap& F, const Point& p, const Vec& E, const Vec& G,
             const DiffScheme& s = DiffScheme());
Vec oneill_A(const SubmersionMap& F, const Point& p, const Vec& E, const VectorField& G,
             const DiffScheme& s = DiffScheme());

/// Frame-resolved values of both fundamental tensors at a point:
/// T[i][j] = T(v_i, v_j) over the vertical frame, A[i][j] = A(h_i, h_j) over
/// the horizontal one.
struct ONeillSample {
    Vec point;
    std::vector<Vec> vertical_frame;
    std::vector<Vec> horizontal_frame;
    std::vector<std::vector<Vec>> T;
    std::vector<std::vector<Vec>> A;
};

ONeillSample oneill_sample(const SubmersionMap& F, const Point& p);

/// H = (1/dim_fibre) sum_j T_{U_j} U_j over a g-orthonormal vertical frame.
Vec mean_curvature(const SubmersionMap& F, const Point& p);

/// Local chart of the fibre through p: u -> the fibre point x with
/// F(x) = F(p) and W^T (x - p) = u, solved by Newton to 1e-12. Exposes the
/// induced metric as a metric field on a small synthetic chart model, which is
/// the intrinsic route to fibre curvature.
class FibreChart {
public:
    FibreChart(const SubmersionMap& F, const Point& p);

    const ManifoldModel& chart_model() const { return *chart_; }
    /// Chart coordinates of a vertical tangent vector at p.
    Vec chart_coords(const Vec& vertical_vector) const;
    /// Intrinsic sectional curvature of the fibre plane spanned by two
    /// vertical vectors at p.
    double sectional(const Vec& U, const Vec& V) const;
    /// Full lowered intrinsic curvature R^hat(S,W,V,U) for vertical vectors.
    double lowered_curvature(const Vec& S, const Vec& W, const Vec& V, const Vec& U) const;

private:
    const SubmersionMap* F_;
    Vec base_;
    Mat W_; // g-orthonormal vertical basis at p, columns
    ModelPtr chart_;
    mutable std::optional<RiemannTensor> chart_curvature_;
    mutable Mat chart_metric_at_zero_;
};

/// Fibre geometry at p: induced metric in the orthonormal vertical frame,
/// sectional curvatures by the two independent routes, scalar curvature,
/// mean curvature vector.
struct FibreSample {
    Vec point;
    Mat ghat;            // identity up to tolerance in the orthonormal frame
    Mat khat_ambient;    // route (a): K - |T_UV|^2 + g(T_UU, T_VV), pairwise
    Mat khat_intrinsic;  // route (b): curvature of the induced chart metric
    double tau_hat = 0;  // scalar curvature, route (a) values
    Vec mean_curv;
};

FibreSample fibre_curvature(const SubmersionMap& F, const Point& p);

/// (nabla F_*)(X, Y) in target coordinates, via the pullback connection.
Vec second_fundamental_form_map(const SubmersionMap& F, const Point& p, const Vec& X,
                                const Vec& Y, const DiffScheme& s = DiffScheme());

/// Trace of the second fundamental form over a g-orthonormal frame; the frame
/// may be supplied to exercise frame independence.
Vec tension_field(const SubmersionMap& F, const Point& p);
Vec tension_field(const SubmersionMap& F, const Point& p, const std::vector<Vec>& frame);

/// Covariant derivatives of the fundamental tensors as (1,2)-tensors:
/// (nabla_X T)(V,W) = nabla_X (T(V,W)) - T(nabla_X V, W) - T(V, nabla_X W),
/// with every field given a coordinate-constant-projected extension.
Vec nabla_T(const SubmersionMap& F, const Point& p, const Vec& X, const Vec& V, const Vec& W,
            const DiffScheme& s = curvature_scheme());
Vec nabla_A(const SubmersionMap& F, const Point& p, const Vec& V, const Vec& X, const Vec& Y,
            const DiffScheme& s = curvature_scheme());

/// Max residuals of the structural identities (skew-adjointness, T symmetry,
/// A alternation and half-bracket, restrictions) and of the curvature
/// relations (vertical, sectional, mixed) over seeded samples.
StructureReport verify_curvature_identities(const SubmersionMap& F, int samples,
                                            std::uint64_t seed, double tol_scale = 1.0);

} // namespace slantsub
