#include <cmath>

#include "slantsub/expr.hpp"
#include "slantsub/scenario.hpp"

namespace slantsub {

namespace {

// R^{2n+1} with coordinates (x_1..x_n, y_1..y_n, z), flat metric, eta = dz,
// xi = d/dz, phi(d/dx_j) = -d/dy_j, phi(d/dy_j) = d/dx_j.
AlmostContactStructure flat_cosymplectic_structure(int n, const std::string& name, Box box) {
    const int dim = 2 * n + 1;
    ModelPtr model = make_model(name, dim, std::move(box), MetricField::euclidean());
    Mat phi = Mat::Zero(dim, dim);
    for (int j = 0; j < n; ++j) {
        phi(n + j, j) = -1.0; // phi(d/dx_j) = -d/dy_j
        phi(j, n + j) = 1.0;  // phi(d/dy_j) = d/dx_j
    }
    Vec xi = Vec::Unit(dim, dim - 1);
    return AlmostContactStructure::make(model, EndomorphismField::constant(phi),
                                        VectorField::constant(xi),
                                        OneFormField::constant(xi));
}

AlmostContactStructure kim_structure() {
    ModelPtr model = make_model("kim-r5", 5, Box::centered(5, 0.9),
                                MetricField([](const Point& p) -> Mat {
                                    const double t = std::sin(p.coord(0) + p.coord(2));
                                    Mat g(5, 5);
                                    g << 1 + t * t, 0, t * t, 0, -t,
                                         0, 1, 0, 0, 0,
                                         t * t, 0, 1 + t * t, 0, -t,
                                         0, 0, 0, 1, 0,
                                         -t, 0, -t, 0, 1;
                                    return g;
                                }));
    EndomorphismField phi([](const Point& p) -> Mat {
        const double t = std::sin(p.coord(0) + p.coord(2));
        Mat m(5, 5);
        m << 0, -1, 0, 0, 0,
             1, 0, 0, 0, 0,
             0, 0, 0, -1, 0,
             0, 0, 1, 0, 0,
             0, -t, 0, -t, 0;
        return m;
    });
    VectorField xi = VectorField::constant(Vec::Unit(5, 4));
    OneFormField eta([](const Point& p) -> Vec {
        const double t = std::sin(p.coord(0) + p.coord(2));
        Vec e(5);
        e << -t, 0, -t, 0, 1;
        return e;
    });
    return AlmostContactStructure::make(model, phi, xi, eta);
}

// Disk-factor-times-line space form: metric (-4/c)/(1-r^2)^2 on the disk plus
// dz^2, phi = rotation by +pi/2 on the disk, xi = d/dz. Constant phi-sectional
// curvature c < 0.
AlmostContactStructure hyperbolic_line_structure(double c) {
    if (!(c < 0.0)) fail("UsageError", "hyperbolic-line needs c < 0");
    Box box;
    box.lo = Vec(3);
    box.hi = Vec(3);
    box.lo << -0.62, -0.62, -0.9;
    box.hi << 0.62, 0.62, 0.9;
    ModelPtr model = make_model("hyperbolic-line", 3, std::move(box),
                                MetricField([c](const Point& p) -> Mat {
                                    const double r2 =
                                        p.coord(0) * p.coord(0) + p.coord(1) * p.coord(1);
                                    const double lam = (-4.0 / c) / ((1 - r2) * (1 - r2));
                                    Mat g = Mat::Identity(3, 3);
                                    g(0, 0) = lam;
                                    g(1, 1) = lam;
                                    return g;
                                }));
    Mat phi = Mat::Zero(3, 3);
    phi(1, 0) = 1.0;
    phi(0, 1) = -1.0;
    Vec xi = Vec::Unit(3, 2);
    return AlmostContactStructure::make(model, EndomorphismField::constant(phi),
                                        VectorField::constant(xi),
                                        OneFormField::constant(xi));
}

SubmersionMap linear_submersion(AlmostContactStructure source, Mat J,
                                const std::string& target_name, double target_half) {
    const int t = static_cast<int>(J.rows());
    return SubmersionMap{
        std::move(source),
        make_euclidean_model(target_name, t, target_half),
        [J](const Point& p) -> Vec { return J * p.coords(); },
        [J](const Point&) -> Mat { return J; },
    };
}

Vec combo(int dim, std::initializer_list<std::pair<int, double>> entries) {
    Vec v = Vec::Zero(dim);
    for (const auto& [idx, val] : entries) v[idx] = val;
    return v;
}

Scenario base_scenario(std::string name, AlmostContactStructure structure) {
    return Scenario{std::move(name), std::move(structure), std::nullopt, {}, {}, {}, {}, {}};
}

Scenario make_e3() {
    // (x1, x2, y1, y2, z); F = ((x1 - x2)/sqrt 2, y2).
    const double s = 1.0 / std::sqrt(2.0);
    Mat J(2, 5);
    J << s, -s, 0, 0, 0,
         0, 0, 0, 1, 0;
    Scenario sc = base_scenario(
        "e3", flat_cosymplectic_structure(2, "e3-source", Box::centered(5, 0.9)));
    sc.submersion = linear_submersion(sc.structure, J, "e3-target", 1.5);
    sc.constants["c"] = 0.0;
    sc.expected_numbers["theta"] = {M_PI / 4.0, "paper:E3"};
    sc.expected_numbers["dim_mu"] = {0.0, "paper:mu"};
    sc.expected_labels["verdict"] = {"proper-slant", "paper:E3"};
    sc.expected_labels["xi_position"] = {"vertical", "paper:E3"};
    sc.expected_kernel = {combo(5, {{2, 1.0}}),            // V1 = E1 = d/dy1
                          combo(5, {{0, s}, {1, s}}),      // V2 = (E3 + E4)/sqrt 2
                          combo(5, {{4, 1.0}})};           // V3 = xi
    sc.expected_kernel_provenance = "paper:E3";
    return sc;
}

Scenario make_e4() {
    // KIM coordinates (x1..x5); F = ((x1 - x3)/sqrt 2, (x2 - x4)/sqrt 2).
    const double s = 1.0 / std::sqrt(2.0);
    Mat J(2, 5);
    J << s, 0, -s, 0, 0,
         0, s, 0, -s, 0;
    Scenario sc = base_scenario("e4", kim_structure());
    sc.submersion = linear_submersion(sc.structure, J, "e4-target", 1.5);
    sc.constants["c"] = 0.0;
    sc.expected_numbers["theta"] = {0.0, "paper:E4"};
    sc.expected_labels["verdict"] = {"invariant", "paper:E4"};
    sc.expected_labels["xi_position"] = {"vertical", "paper:E4"};
    // The documented kernel span, rewritten from the E-frame into coordinates
    // (the two spans agree).
    sc.expected_kernel = {combo(5, {{1, s}, {3, s}}), combo(5, {{0, s}, {2, s}, {4, 0.0}}),
                          combo(5, {{4, 1.0}})};
    sc.expected_kernel_provenance = "paper:E4";
    return sc;
}

Scenario make_hor() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat J(3, 5);
    J << s, -s, 0, 0, 0,
         0, 0, 0, 1, 0,
         0, 0, 0, 0, 1;
    Scenario sc = base_scenario(
        "hor", flat_cosymplectic_structure(2, "hor-source", Box::centered(5, 0.9)));
    sc.submersion = linear_submersion(sc.structure, J, "hor-target", 1.5);
    sc.constants["c"] = 0.0;
    sc.expected_numbers["theta"] = {M_PI / 4.0, "paper:HOR"};
    sc.expected_numbers["dim_mu"] = {0.0, "paper:HOR3C"};
    sc.expected_labels["verdict"] = {"proper-slant", "paper:HOR"};
    sc.expected_labels["xi_position"] = {"horizontal", "paper:HOR"};
    sc.expected_kernel = {combo(5, {{2, 1.0}}), combo(5, {{0, s}, {1, s}})};
    sc.expected_kernel_provenance = "paper:HOR";
    return sc;
}

Scenario make_mixed_r7(double alpha) {
    // (x1,x2,x3,y1,y2,y3,z); kernel span{d/dy1, cos a d/dx1 + sin a d/dy2, xi}.
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    if (ca < 1e-6 || sa < 1e-6)
        fail("UsageError", "mixed-r7 needs a proper angle in (0, pi/2)");
    Mat J(4, 7);
    J.setZero();
    J(0, 0) = -sa;
    J(0, 4) = ca;
    J(1, 1) = 1.0;
    J(2, 2) = 1.0;
    J(3, 5) = 1.0;
    Scenario sc = base_scenario(
        "mixed-r7", flat_cosymplectic_structure(3, "mixed-r7-source", Box::centered(7, 0.9)));
    sc.submersion = linear_submersion(sc.structure, J, "mixed-r7-target", 1.5);
    sc.constants["c"] = 0.0;
    sc.constants["alpha"] = alpha;
    sc.expected_numbers["theta"] = {alpha, "derived:brute-force-projection"};
    sc.expected_numbers["dim_mu"] = {2.0, "derived:constructed-mu-basis"};
    sc.expected_labels["verdict"] = {alpha < 1e-9 ? "invariant" : "proper-slant",
                                     "derived:brute-force-projection"};
    sc.expected_labels["xi_position"] = {"vertical", "derived:construction"};
    sc.expected_kernel = {combo(7, {{3, 1.0}}), combo(7, {{0, ca}, {4, sa}}),
                          combo(7, {{6, 1.0}})};
    sc.expected_kernel_provenance = "derived:construction";
    return sc;
}

Scenario make_anti_invariant_r5() {
    // ker = span{d/dy1, d/dy2}; horizontal = span{d/dx1, d/dx2, xi}.
    Mat J(3, 5);
    J.setZero();
    J(0, 0) = 1.0;
    J(1, 1) = 1.0;
    J(2, 4) = 1.0;
    Scenario sc = base_scenario(
        "anti-invariant-r5",
        flat_cosymplectic_structure(2, "anti-invariant-source", Box::centered(5, 0.9)));
    sc.submersion = linear_submersion(sc.structure, J, "anti-invariant-target", 1.5);
    sc.constants["c"] = 0.0;
    sc.expected_numbers["theta"] = {M_PI / 2.0, "derived:construction"};
    sc.expected_labels["verdict"] = {"anti-invariant", "derived:construction"};
    sc.expected_labels["xi_position"] = {"horizontal", "derived:construction"};
    sc.expected_kernel = {combo(5, {{2, 1.0}}), combo(5, {{3, 1.0}})};
    sc.expected_kernel_provenance = "derived:construction";
    return sc;
}

Scenario make_sphere_radius() {
    Box box;
    box.lo = Vec::Constant(3, 0.5);
    box.hi = Vec::Constant(3, 2.5);
    AlmostContactStructure structure =
        flat_cosymplectic_structure(1, "sphere-radius-source", std::move(box));

    Box tbox;
    tbox.lo = Vec::Constant(1, 0.8);
    tbox.hi = Vec::Constant(1, 4.35);
    SubmersionMap F{
        structure,
        make_model("sphere-radius-target", 1, std::move(tbox), MetricField::euclidean()),
        [](const Point& p) -> Vec {
            Vec out(1);
            out[0] = p.coords().norm();
            return out;
        },
        [](const Point& p) -> Mat { return p.coords().transpose() / p.coords().norm(); },
    };

    Scenario sc = base_scenario("sphere-radius", std::move(structure));
    sc.submersion = std::move(F);
    sc.expected_labels["harmonic"] = {"no", "derived:sphere-shape-operator"};
    return sc;
}

Scenario make_hyperbolic_line(double c) {
    Scenario sc = base_scenario("hyperbolic-line", hyperbolic_line_structure(c));
    sc.constants["c"] = c;
    sc.expected_numbers["phi_sectional"] = {c, "derived:product-metric-curvature"};
    return sc;
}

Scenario make_r2n1(int n) {
    if (n < 1 || n > 6) fail("UsageError", "r2n1-cosymplectic needs n in 1..6");
    Scenario sc = base_scenario(
        "r2n1-cosymplectic",
        flat_cosymplectic_structure(n, "r2n1-cosymplectic-source", Box::centered(2 * n + 1, 0.9)));
    sc.constants["c"] = 0.0; // flat space form
    return sc;
}

Scenario make_kim() {
    Scenario sc = base_scenario("kim-r5", kim_structure());
    // The metric is the pullback of a flat one, so this is a space form too.
    sc.constants["c"] = 0.0;
    return sc;
}

struct ParsedName {
    std::string base;
    std::vector<double> args;
};

ParsedName parse_builtin_spec(const std::string& spec) {
    ParsedName out;
    const auto open = spec.find('(');
    if (open == std::string::npos) {
        out.base = spec;
        return out;
    }
    if (spec.back() != ')') fail("UsageError", "malformed scenario name '" + spec + "'");
    out.base = spec.substr(0, open);
    std::string args = spec.substr(open + 1, spec.size() - open - 2);
    std::size_t start = 0;
    while (start <= args.size() && !args.empty()) {
        const auto comma = args.find(',', start);
        const std::string piece =
            args.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        ExprPtr e = parse_expression(piece, 0, {});
        out.args.push_back(eval_expr(*e, Vec()));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

bool is_builtin_name(const std::string& spec) {
    const std::string base = spec.substr(0, spec.find('('));
    for (const auto& n : builtin_names())
        if (n == base) return true;
    return false;
}

std::vector<std::string> builtin_names() {
    return {"r2n1-cosymplectic", "kim-r5",  "e3",
            "e4",                "hor",     "mixed-r7",
            "anti-invariant-r5", "sphere-radius", "hyperbolic-line"};
}

Scenario builtin_scenario(const std::string& spec) {
    const ParsedName parsed = parse_builtin_spec(spec);
    auto arg = [&](std::size_t i, double fallback) {
        return parsed.args.size() > i ? parsed.args[i] : fallback;
    };
    if (parsed.base == "e3") return make_e3();
    if (parsed.base == "e4") return make_e4();
    if (parsed.base == "hor") return make_hor();
    if (parsed.base == "mixed-r7") return make_mixed_r7(arg(0, M_PI / 3.0));
    if (parsed.base == "anti-invariant-r5") return make_anti_invariant_r5();
    if (parsed.base == "sphere-radius") return make_sphere_radius();
    if (parsed.base == "hyperbolic-line") return make_hyperbolic_line(arg(0, -1.0));
    if (parsed.base == "r2n1-cosymplectic")
        return make_r2n1(static_cast<int>(std::lround(arg(0, 1.0))));
    if (parsed.base == "kim-r5") return make_kim();
    fail("UsageError", "unknown builtin scenario '" + spec + "'");
}

} // namespace slantsub
