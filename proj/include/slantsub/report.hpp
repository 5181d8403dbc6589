#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace slantsub {

struct CheckRecord {
    std::string name;
    double max_defect = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    static CheckRecord make(std::string name, double defect, double tol) {
        return CheckRecord{std::move(name), defect, tol, defect <= tol};
    }
};

/// One verification run: per-check records plus command-specific scalars and
/// labels. Rendered to text or to deterministic JSON (numbers via %.17g).
struct ReportDocument {
    std::string scenario;
    std::string command;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<CheckRecord> checks;
    std::vector<std::pair<std::string, double>> results;
    std::vector<std::pair<std::string, std::string>> labels;
    std::vector<std::string> notes;

    bool pass() const;
    void add_check(std::string name, double defect, double tol);
    void add_result(std::string name, double value);
    void add_label(std::string name, std::string value);
    void add_note(std::string text);
};

std::string to_json(const ReportDocument& doc);
std::string to_text(const ReportDocument& doc);

/// %.17g with non-finite values rejected (reports must contain finite numbers).
std::string format_double(double v);

} // namespace slantsub
