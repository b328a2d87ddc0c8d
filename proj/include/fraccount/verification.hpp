#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fraccount {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Cross-check battery: analytic formulas vs independent routes vs Monte
// Carlo.  quick = true trims path counts and case grids to finish within
// about a minute; the full battery stays under ten minutes.
std::vector<CheckResult> run_verification(bool quick, std::uint64_t seed);

}  // namespace fraccount
