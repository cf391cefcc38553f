#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cologic {

/// Outcome of one exhaustive property suite. Cases are enumerated from the
/// smallest instances up, so the recorded counterexample is a least one.
struct SuiteReport {
    std::string name;
    std::string scope;
    std::uint64_t cases_checked = 0;
    std::uint64_t violation_count = 0;
    std::optional<std::string> counterexample;

    bool ok() const { return violation_count == 0; }
};

struct SuiteInfo {
    std::string name;
    std::string summary;
};

/// Registered suites in a fixed order.
const std::vector<SuiteInfo>& suite_catalog();

/// Throws InputError for an unknown suite name.
SuiteReport run_suite(const std::string& name);

} // namespace cologic
