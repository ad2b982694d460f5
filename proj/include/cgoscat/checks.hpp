#pragma once

#include <string>
#include <vector>

namespace cgoscat::checks {

// One verification criterion of the reference configuration suite.
struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // the measured numbers behind the verdict
};

int count();  // number of criteria
CheckResult run_check(int id);           // ids are 1-based
std::vector<CheckResult> run_all();

}  // namespace cgoscat::checks
