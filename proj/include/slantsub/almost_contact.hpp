#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slantsub/connection.hpp"
#include "slantsub/geometry.hpp"
#include "slantsub/report.hpp"

namespace slantsub {

/// Defect summary of a sampled structure check.
struct StructureReport {
    std::vector<CheckRecord> checks;
    int samples = 0;
    std::uint64_t seed = 0;
    int resampled = 0;

    bool pass() const;
    double defect(const std::string& name) const;
};

/// Thrown by the validating constructor; carries the offending defects.
class StructureInvalidError : public Error {
public:
    StructureInvalidError(StructureReport report, const std::string& message)
        : Error("StructureInvalid", message), report_(std::move(report)) {}
    const StructureReport& report() const { return report_; }

private:
    StructureReport report_;
};

/// Almost contact metric structure (phi, xi, eta, g) on an odd-dimensional
/// model. `make` validates the pointwise axioms
///   phi^2 = -I + eta (x) xi,  phi xi = 0,  eta o phi = 0,  eta(xi) = 1,
///   g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y),  eta(X) = g(X, xi)
/// at seeded sample points and throws StructureInvalid on failure;
/// `make_unchecked` skips the gate (deliberately broken test fixtures).
class AlmostContactStructure {
public:
    static AlmostContactStructure make(ModelPtr model, EndomorphismField phi, VectorField xi,
                                       OneFormField eta);
    static AlmostContactStructure make_unchecked(ModelPtr model, EndomorphismField phi,
                                                 VectorField xi, OneFormField eta);

    const ManifoldModel& model() const { return *model_; }
    ModelPtr model_ptr() const { return model_; }
    const MetricField& metric() const { return model_->metric(); }
    const EndomorphismField& phi() const { return phi_; }
    const VectorField& xi() const { return xi_; }
    const OneFormField& eta() const { return eta_; }

    /// The field q -> phi(q) Y(q).
    VectorField phi_of(const VectorField& Y) const;

private:
    AlmostContactStructure(ModelPtr model, EndomorphismField phi, VectorField xi,
                           OneFormField eta);

    ModelPtr model_;
    EndomorphismField phi_;
    VectorField xi_;
    OneFormField eta_;
};

/// Max defect of each (phi,xi,eta) identity and both metric-compatibility
/// identities over `samples` seeded points and random tangent vectors.
StructureReport check_almost_contact(const AlmostContactStructure& S, int samples,
                                     std::uint64_t seed, double tol_scale = 1.0);

/// Phi(X,Y) = g(X, phi Y).
double fundamental_two_form(const AlmostContactStructure& S, const Point& p, const Vec& X,
                            const Vec& Y);

/// Max |coefficient| of the numeric exterior derivatives d(Phi) and d(eta).
StructureReport check_closed(const AlmostContactStructure& S, int samples, std::uint64_t seed,
                             double tol_scale = 1.0, const DiffScheme& s = DiffScheme());

/// [phi,phi](X,Y) + 2 d(eta)(X,Y) xi with
/// [phi,phi](X,Y) = phi^2 [X,Y] + [phiX, phiY] - phi [phiX, Y] - phi [X, phiY].
Vec nijenhuis_defect(const AlmostContactStructure& S, const Point& p, const VectorField& X,
                     const VectorField& Y, const DiffScheme& s = DiffScheme());

/// Max of ||(nabla_E phi) G|| and ||nabla_E xi|| over samples and random
/// smooth fields E, G.
StructureReport check_cosymplectic(const AlmostContactStructure& S, int samples,
                                   std::uint64_t seed, double tol_scale = 1.0,
                                   const DiffScheme& s = DiffScheme());

/// H(E) = g(R(E, phiE) phiE, E) for unit E orthogonal to xi.
double phi_sectional(const AlmostContactStructure& S, const Point& p, const Vec& E,
                     const DiffScheme& inner = DiffScheme(),
                     const DiffScheme& outer = curvature_scheme());

/// Closed-form curvature tensor of the cosymplectic space form M(c):
/// R(X,Y)Z = c/4 ( g(Y,Z)X - g(X,Z)Y + eta(X)eta(Z)Y - eta(Y)eta(Z)X
///               + g(X,Z)eta(Y)xi - g(Y,Z)eta(X)xi
///               + g(phiY,Z)phiX - g(phiX,Z)phiY - 2 g(phiX,Y)phiZ ).
Vec space_form_curvature(double c, const AlmostContactStructure& S, const Point& p, const Vec& X,
                         const Vec& Y, const Vec& Z);

/// Random smooth vector field: affine part plus one sine term per component.
/// Smooth on the whole chart, nonconstant derivatives.
VectorField random_smooth_field(const ManifoldModel& model, Rng& rng);

} // namespace slantsub
