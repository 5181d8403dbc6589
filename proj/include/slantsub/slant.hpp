#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slantsub/submersion.hpp"

namespace slantsub {

enum class XiPosition { Vertical, Horizontal, Oblique };

std::string to_string(XiPosition pos);

/// Pointwise operators at p built from the projectors and phi:
///   psi  = V phi V   (vertical part of phi on vertical vectors)
///   omega= H phi V   (horizontal part of phi on vertical vectors)
///   B    = V phi H   (vertical part of phi on horizontal vectors)
///   C    = H phi H   (horizontal part of phi on horizontal vectors)
struct SlantOperators {
    Mat psi, omega, B, C;
    Mat proj_v, proj_h;
    Mat phi;
    Mat G;
    Vec xi;
    Vec eta;
};

SlantOperators slant_operators(const SubmersionMap& F, const Point& p);

struct SlantDecomposition {
    Vec point;
    Vec input;
    Vec psi;   // vertical component of phi U
    Vec omega; // horizontal component of phi U
};

/// phi U = psi U + omega U for vertical U. Throws NotVertical.
SlantDecomposition decompose_vertical(const SubmersionMap& F, const Point& p, const Vec& U);

struct HorizontalDecomposition {
    Vec point;
    Vec input;
    Vec b; // vertical part of phi X
    Vec c; // horizontal part of phi X
};

/// phi X = B X + C X for horizontal X. Throws NotHorizontal.
HorizontalDecomposition decompose_horizontal(const SubmersionMap& F, const Point& p,
                                             const Vec& X);

/// theta = arccos(|psi U| / |phi U|) in [0, pi/2]. Throws NotVertical,
/// XiDirection (U parallel to a vertical xi), ZeroPhi.
double slant_angle(const SubmersionMap& F, const Point& p, const Vec& U);

/// Where xi sits relative to the splitting, sampled.
XiPosition xi_position(const SubmersionMap& F, int samples, std::uint64_t seed);

struct SlantReport {
    XiPosition xi_pos = XiPosition::Oblique;
    std::vector<double> angles; // per sample x direction, row-major
    double theta_mean = 0.0;
    double theta_max_deviation = 0.0;
    std::string verdict; // "proper-slant" | "invariant" | "anti-invariant" | "not-slant"
    int samples = 0;
    int directions = 0;
    std::uint64_t seed = 0;

    bool is_slant() const { return verdict != "not-slant"; }
    bool is_proper() const { return verdict == "proper-slant"; }
};

/// Angle over sampled points and seeded random admissible vertical directions
/// (directions parallel to a vertical xi are rejected and redrawn).
SlantReport slant_constancy(const SubmersionMap& F, int samples, int directions,
                            std::uint64_t seed, double angle_tol = 1e-6);

/// || psi^2 U + cos^2(theta) (U - eta(U) xi) || (vertical xi) or
/// || psi^2 U + cos^2(theta) U || (horizontal xi), for a vertical U.
double psi_square_residual(const SubmersionMap& F, const Point& p, const Vec& U, double theta,
                           XiPosition pos);

/// Residuals of g(psiU, psiV) = cos^2(theta)(g(U,V) - eta(U)eta(V)) and
/// g(omegaU, omegaV) = sin^2(theta)(g(U,V) - eta(U)eta(V)); the eta terms drop
/// for horizontal xi.
std::pair<double, double> norm_relation_residuals(const SubmersionMap& F, const Point& p,
                                                  const Vec& U, const Vec& V, double theta,
                                                  XiPosition pos);

/// The five pointwise identities tying psi, omega, B, C together:
///   -X = omega B X + C^2 X,          0 = psi B X + B C X,
///   phi^2 U = psi^2 U + B omega U,   0 = omega psi U + C omega U,
///   g(CX, phiU) = -g(BX, psiU).
std::vector<double> lemma_residuals(const SubmersionMap& F, const Point& p, const Vec& X,
                                    const Vec& U);

struct AdaptedFrame {
    Vec point;
    double theta = 0.0;
    XiPosition xi_pos = XiPosition::Oblique;
    std::vector<Vec> vertical;
    std::vector<Vec> horizontal;
    std::vector<std::string> vertical_labels;
    std::vector<std::string> horizontal_labels;
    int pairs = 0; // k

    std::vector<Vec> all() const;
    /// Max |g(f_i, f_j) - delta_ij| over the whole frame.
    double gram_defect(const Mat& G) const;
};

/// Slant orthonormal frame {e_1, sec(theta) psi e_1, ..., xi?} vertical and
/// {csc(theta) omega e_1, ..., mu-basis..., xi?} horizontal. A preferred first
/// leg can be supplied (used to align csc(theta) omega e_2 with the mean
/// curvature vector). Throws NotProperSlant / DimensionMismatch.
AdaptedFrame adapted_frame(const SubmersionMap& F, const Point& p, double theta, XiPosition pos,
                           const std::optional<Vec>& first_leg = std::nullopt);

struct MuReport {
    int dim = 0;
    int expected_dim = 0;
    double invariance_defect = 0.0;
    std::vector<Vec> basis;
};

/// Complement of omega(ker F_*) inside the horizontal space (inside the
/// xi-complement when xi is horizontal), with the phi-invariance defect.
MuReport mu_distribution(const SubmersionMap& F, const Point& p, double theta, XiPosition pos);

/// Residual vectors of the commutation identities
///   (nabla_U omega)V = C T_U V - T_U psi V
///   (nabla_U psi)V  = B T_U V - T_U omega V
/// with (nabla_U omega)V = H nabla_U(omega V) - omega(hat-nabla_U V) and
/// (nabla_U psi)V = hat-nabla_U(psi V) - psi(hat-nabla_U V).
std::pair<Vec, Vec> omega_parallel_defect(const SubmersionMap& F, const Point& p, const Vec& U,
                                          const Vec& V, const DiffScheme& s = DiffScheme());

/// || T_{psiU} psi U + cos^2(theta) T_U U ||, zero whenever omega is parallel.
double sec1_residual(const SubmersionMap& F, const Point& p, const Vec& U, double theta);

/// Residual of (nabla_U Q)V with Q = psi^2: V nabla_U(QV) - Q(hat-nabla_U V).
Vec check_nabla_Q(const SubmersionMap& F, const Point& p, const Vec& U, const Vec& V,
                  const DiffScheme& s = DiffScheme());

struct TotallyGeodesicReport {
    double horizontal_criterion = 0.0; // g(H nabla_X Y, omega psi U) vs A/C terms
    double vertical_criterion = 0.0;   // g(H nabla_U omega psi V, X) vs T/C terms
    double map_criterion = 0.0;        // mixed-slot criterion
    double a_defect = 0.0;             // max |A_X Y| over horizontal pairs
    double t_defect = 0.0;             // max |T_U V| over vertical pairs
    double sff_vertical = 0.0;         // max |(nabla F_*)(U,V)|
    double sff_mixed = 0.0;            // max |(nabla F_*)(X,U)|
};

/// Both sides of the displayed totally-geodesic criteria over frame vectors at
/// p, together with the direct defects, so the equivalences can be observed
/// from either side. Computed pointwise; no slant verdict required.
TotallyGeodesicReport totally_geodesic_criteria(const SubmersionMap& F, const Point& p);

struct InequalityReport {
    Vec point;
    double theta = 0.0;
    double c = 0.0;
    double H2 = 0.0;             // squared mean curvature
    double tau_hat = 0.0;        // fibre scalar curvature
    double khat_frame = 0.0;     // K-hat(e1^e2) via the space-form route
    double khat_intrinsic = 0.0; // K-hat(e1^e2) via the fibre chart
    double kxi_max = 0.0;        // vertical xi: max |K-hat(e_i ^ xi)|
    double t5_row_max = 0.0;     // horizontal xi: max |T^5_ij|
    double exchange_residual = 0.0; // |T22^4 - T12^5| resp. |T22^3 - T12^4|
    double bound = 0.0;
    double slack = 0.0; // H2 - bound
    std::vector<std::pair<std::string, double>> components;
    std::vector<std::pair<std::string, bool>> equality_flags;
    bool equality_flags_all = false;
};

/// dim 5 -> 2, xi vertical, proper slant: slack of
/// |H|^2 >= (8/9)(tau-hat - (c/4)(1 + 3cos^2 theta)).
InequalityReport inequality_vertical(const SubmersionMap& F, const Point& p, double c);

/// dim 5 -> 3, xi horizontal, coefficient 1/4.
InequalityReport inequality_horizontal(const SubmersionMap& F, const Point& p, double c);

/// Pure-arithmetic modes: hand-set adapted-frame T tables pushed through the
/// same algebra (no geometry, exact). Matrices are symmetric tables indexed by
/// the frame: vertical case T4, T5 are 3x3 (third leg xi); horizontal case T3,
/// T4, T5 are 2x2.
InequalityReport inequality_vertical_synthetic(const Mat& T4, const Mat& T5, double theta,
                                               double c);
InequalityReport inequality_horizontal_synthetic(const Mat& T3, const Mat& T4, const Mat& T5,
                                                 double theta, double c);

/// Anti-invariant specialization with horizontal = phi(ker F_*) + {xi}:
/// commutation of T and A with phi, A = 0, the reduced mixed curvature
/// relation, and both phi-sectional reconstructions. Throws NotAntiInvariant
/// when the splitting precondition fails.
StructureReport anti_invariant_checks(const SubmersionMap& F, int samples, std::uint64_t seed,
                                      double tol_scale = 1.0);

} // namespace slantsub
