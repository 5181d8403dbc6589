#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slantsub/almost_contact.hpp"
#include "slantsub/submersion.hpp"

namespace slantsub {

struct ExpectedValue {
    double value = 0.0;
    std::string provenance;
};

struct ExpectedLabel {
    std::string value;
    std::string provenance;
};

/// A fully constructed verification scenario: an almost contact metric
/// structure, optionally a submersion out of it, named constants (c, alpha),
/// and expected results carried with their provenance for golden tests.
struct Scenario {
    std::string name;
    AlmostContactStructure structure;
    std::optional<SubmersionMap> submersion;
    std::map<std::string, double> constants;
    std::map<std::string, ExpectedValue> expected_numbers;
    std::map<std::string, ExpectedLabel> expected_labels;
    std::vector<Vec> expected_kernel; // listed kernel span, checked as an outcome
    std::string expected_kernel_provenance;

    const SubmersionMap& require_submersion() const;
    std::optional<double> constant(const std::string& key) const;
};

/// Builtin catalog: r2n1-cosymplectic(n), kim-r5, e3, e4, hor, mixed-r7(alpha),
/// anti-invariant-r5, sphere-radius, hyperbolic-line(c). Arguments are
/// expressions ("mixed-r7(pi/3)").
Scenario builtin_scenario(const std::string& spec);
bool is_builtin_name(const std::string& spec);
std::vector<std::string> builtin_names();

/// JSON scenario document; unknown keys are errors, expressions are strings.
Scenario load_scenario_text(const std::string& json_text, const std::string& display_name);
Scenario load_scenario_file(const std::string& path);

/// Builtin name, else a path to a scenario file.
Scenario load_scenario(const std::string& name_or_path);

} // namespace slantsub
