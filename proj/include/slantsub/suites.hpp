#pragma once

#include <cstdint>
#include <string>

#include "slantsub/report.hpp"
#include "slantsub/scenario.hpp"
#include "slantsub/slant.hpp"

namespace slantsub {

struct RunOptions {
    int samples = 100;
    std::uint64_t seed = 42;
    double tolerance_scale = 1.0;
    std::string inequality_case = "vertical";
};

ReportDocument run_check_structure(const Scenario& sc, const RunOptions& opt);
ReportDocument run_check_submersion(const Scenario& sc, const RunOptions& opt);
ReportDocument run_slant_angle(const Scenario& sc, const RunOptions& opt);
ReportDocument run_verify_identities(const Scenario& sc, const RunOptions& opt);
ReportDocument run_verify_inequality(const Scenario& sc, const RunOptions& opt);
ReportDocument run_tension(const Scenario& sc, const RunOptions& opt);
ReportDocument run_anti_invariant(const Scenario& sc, const RunOptions& opt);

} // namespace slantsub
