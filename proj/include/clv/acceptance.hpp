#pragma once

#include <string>
#include <vector>

namespace clv::acceptance {

struct Check {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// The eleven acceptance criteria, in order.
std::vector<Check> run_all(int threads = 1);

}  // namespace clv::acceptance
