#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rphi {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // worst-case margin, serialized failing case, ...
};

std::vector<CheckResult> verify_gauss(std::uint64_t seed, int qmax_closed = 500,
                                      int qmax_general = 200);
std::vector<CheckResult> verify_theta(std::uint64_t seed);
std::vector<CheckResult> verify_expansion(std::uint64_t seed);
std::vector<CheckResult> verify_table1(std::uint64_t seed);
std::vector<CheckResult> verify_contfrac(std::uint64_t seed);
std::vector<CheckResult> verify_witness(std::uint64_t seed);

} // namespace rphi
