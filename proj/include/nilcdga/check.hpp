#pragma once

#include <string>
#include <vector>

namespace nilcdga {

// One named pass/fail item of a verification report.
struct Check {
    std::string name;
    bool pass = false;
    std::string witness;
};

inline bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

} // namespace nilcdga
