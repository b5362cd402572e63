#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dnls {

struct CheckLine {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckLine> lines;
    bool passed() const;
};

/// szego, permutation, heat-kernel, positivity, perron-frobenius, lemmas
const std::vector<std::string>& suite_names();

/// Runs one property suite ("all" runs every suite). Throws ConfigError for unknown names.
std::vector<SuiteResult> run_checks(const std::string& suite, std::uint64_t seed = 1);

}  // namespace dnls
