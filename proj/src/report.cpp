#include "slantsub/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "slantsub/errors.hpp"

namespace slantsub {

bool ReportDocument::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.pass; });
}

void ReportDocument::add_check(std::string name, double defect, double tol) {
    checks.push_back(CheckRecord::make(std::move(name), defect, tol));
}

void ReportDocument::add_result(std::string name, double value) {
    results.emplace_back(std::move(name), value);
}

void ReportDocument::add_label(std::string name, std::string value) {
    labels.emplace_back(std::move(name), std::move(value));
}

void ReportDocument::add_note(std::string text) { notes.push_back(std::move(text)); }

std::string format_double(double v) {
    if (!std::isfinite(v)) fail("NonFiniteValue", "report contains a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

} // namespace

std::string to_json(const ReportDocument& doc) {
    std::ostringstream os;
    os << "{";
    os << "\"scenario\":\"" << json_escape(doc.scenario) << "\",";
    os << "\"command\":\"" << json_escape(doc.command) << "\",";
    os << "\"seed\":" << format_double(static_cast<double>(doc.seed)) << ",";
    os << "\"samples\":" << format_double(doc.samples) << ",";
    os << "\"checks\":[";
    for (std::size_t i = 0; i < doc.checks.size(); ++i) {
        const auto& c = doc.checks[i];
        if (i) os << ",";
        os << "{\"name\":\"" << json_escape(c.name) << "\",\"max_defect\":"
           << format_double(c.max_defect) << ",\"tolerance\":" << format_double(c.tolerance)
           << ",\"pass\":" << (c.pass ? "true" : "false") << "}";
    }
    os << "],";
    os << "\"results\":{";
    for (std::size_t i = 0; i < doc.results.size(); ++i) {
        if (i) os << ",";
        os << "\"" << json_escape(doc.results[i].first)
           << "\":" << format_double(doc.results[i].second);
    }
    os << "},";
    os << "\"labels\":{";
    for (std::size_t i = 0; i < doc.labels.size(); ++i) {
        if (i) os << ",";
        os << "\"" << json_escape(doc.labels[i].first) << "\":\""
           << json_escape(doc.labels[i].second) << "\"";
    }
    os << "},";
    os << "\"notes\":[";
    for (std::size_t i = 0; i < doc.notes.size(); ++i) {
        if (i) os << ",";
        os << "\"" << json_escape(doc.notes[i]) << "\"";
    }
    os << "],";
    os << "\"pass\":" << (doc.pass() ? "true" : "false");
    os << "}";
    return os.str();
}

std::string to_text(const ReportDocument& doc) {
    std::ostringstream os;
    os << doc.command << " " << doc.scenario << "  (seed " << doc.seed << ", samples "
       << doc.samples << ")\n";
    for (const auto& c : doc.checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "  max_defect "
           << format_double(c.max_defect) << "  tolerance " << format_double(c.tolerance)
           << "\n";
    }
    for (const auto& r : doc.results)
        os << "  " << r.first << " = " << format_double(r.second) << "\n";
    for (const auto& l : doc.labels) os << "  " << l.first << ": " << l.second << "\n";
    for (const auto& n : doc.notes) os << "  note: " << n << "\n";
    os << (doc.pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace slantsub
