#include "opdil/report.hpp"
#include "opdil/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace opdil {

using ojson = nlohmann::ordered_json;

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::hypothesis_violated: return "hypothesis-violated";
    }
    return "fail";
}

CheckItem& CheckReport::add_le(const std::string& label, double residual, double tol) {
    items.push_back({label, residual, tol, std::isfinite(residual) && residual <= tol, "<="});
    return items.back();
}

CheckItem& CheckReport::add_ge(const std::string& label, double value, double bound) {
    items.push_back({label, value, bound, std::isfinite(value) && value >= bound, ">="});
    return items.back();
}

Verdict CheckReport::finalize(bool hypothesis_violated) {
    bool ok = std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.pass; });
    verdict = !ok ? Verdict::fail : (hypothesis_violated ? Verdict::hypothesis_violated : Verdict::pass);
    return verdict;
}

const CheckItem* CheckReport::find(const std::string& label) const {
    for (const auto& i : items)
        if (i.label == label) return &i;
    return nullptr;
}

namespace {

ojson number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

ojson report_to_json(const CheckReport& r) {
    ojson j;
    j["name"] = r.name;
    ojson items = ojson::array();
    for (const auto& i : r.items) {
        ojson it;
        it["label"] = i.label;
        it["residual"] = number(i.residual);
        it["tol"] = number(i.tol);
        it["relation"] = i.relation;
        it["pass"] = i.pass;
        items.push_back(it);
    }
    j["items"] = items;
    j["verdict"] = to_string(r.verdict);
    if (!r.conclusion.empty()) j["conclusion"] = r.conclusion;
    if (r.window_margin >= 0) j["window_margin"] = r.window_margin;
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (!r.sections.empty()) {
        ojson s = ojson::array();
        for (const auto& sec : r.sections) s.push_back(report_to_json(sec));
        j["sections"] = s;
    }
    return j;
}

namespace {

void text(const CheckReport& r, std::ostream& os, int indent) {
    std::string pad(static_cast<size_t>(indent), ' ');
    os << pad << r.name << ": " << to_string(r.verdict);
    if (!r.conclusion.empty()) os << " (" << r.conclusion << ")";
    if (r.window_margin >= 0) os << " [window margin " << r.window_margin << "]";
    os << "\n";
    size_t w = 5;
    for (const auto& i : r.items) w = std::max(w, i.label.size());
    for (const auto& i : r.items) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %-12.4e %-2s %-12.4e %s", i.residual, i.relation.c_str(), i.tol,
                      i.pass ? "ok" : "FAIL");
        os << pad << "  " << i.label << std::string(w - i.label.size(), ' ') << buf << "\n";
    }
    for (const auto& n : r.notes) os << pad << "  note: " << n << "\n";
    for (const auto& s : r.sections) text(s, os, indent + 2);
}

}  // namespace

std::string emit_report(const CheckReport& r, ReportFormat format) {
    std::ostringstream os;
    emit_report(r, format, os);
    return os.str();
}

void emit_report(const CheckReport& r, ReportFormat format, std::ostream& os) {
    if (format == ReportFormat::json)
        os << report_to_json(r).dump();
    else
        text(r, os, 0);
    if (!os) throw std::runtime_error("failed to write report");
}

}  // namespace opdil
