#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opdil {

enum class Verdict { pass, fail, hypothesis_violated };

std::string to_string(Verdict v);

// relation "<=": residual <= tol passes; ">=": residual >= tol passes.
struct CheckItem {
    std::string label;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = true;
    std::string relation = "<=";
};

struct CheckReport {
    std::string name;
    std::vector<CheckItem> items;
    Verdict verdict = Verdict::pass;
    int window_margin = -1;      // -1 when no window was involved
    std::string conclusion;      // e.g. membership verdicts
    std::vector<std::string> notes;
    std::vector<CheckReport> sections;  // context; does not enter the verdict

    CheckItem& add_le(const std::string& label, double residual, double tol);
    CheckItem& add_ge(const std::string& label, double value, double bound);
    void add_note(const std::string& note) { notes.push_back(note); }
    // recompute verdict from items; a hypothesis flag overrides a pass
    Verdict finalize(bool hypothesis_violated = false);
    bool passed() const { return verdict == Verdict::pass; }
    const CheckItem* find(const std::string& label) const;
};

enum class ReportFormat { json, text };

std::string emit_report(const CheckReport& r, ReportFormat format);
void emit_report(const CheckReport& r, ReportFormat format, std::ostream& os);

}  // namespace opdil
