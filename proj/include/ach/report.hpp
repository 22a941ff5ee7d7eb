#ifndef ACH_REPORT_HPP
#define ACH_REPORT_HPP

#include <string>
#include <vector>

namespace ach {

/// One verified identity: `id` is a stable machine name, `identity` the
/// formula being checked, `detail` an optional diagnostic on failure.
struct CheckRecord {
    std::string id;
    std::string identity;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::vector<CheckRecord> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    void add(std::string id, std::string identity, bool passed, std::string detail = "") {
        checks.push_back({std::move(id), std::move(identity), passed, std::move(detail)});
    }
    void merge(const Report& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    }
};

}  // namespace ach

#endif
