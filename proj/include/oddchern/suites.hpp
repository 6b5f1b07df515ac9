#pragma once

#include "oddchern/khat.hpp"
#include "oddchern/registry.hpp"

namespace oddchern {

/// Registered verification suites.
const std::vector<std::string>& suite_names();

/// Which acceptance checks a suite carries (criterion ids like "c02").
std::vector<std::string> suite_criteria(const std::string& suite);

/// Run one suite. Throws UsageError for unknown names. Check ids are
/// "cNN-<name>"; a check passes when status == "pass".
std::vector<CheckRecord> run_suite(const std::string& suite, const RunConfig& config);

bool all_passed(const std::vector<CheckRecord>& checks);

}  // namespace oddchern
