#pragma once

#include <string>
#include <vector>

#include "gridpoly/polygon.hpp"

namespace gridpoly {

// One regression case: a published value recomputed from scratch. Expected
// and observed values are exact integers or fractions rendered as text, so a
// pass is literal equality, never a float comparison.
struct ReproCase {
    std::string case_id;
    std::string note;
    std::string expected;
    std::string observed;
    bool pass = false;
    double runtime_ms = 0.0;
};

struct ReproSuiteResult {
    std::string suite;
    std::vector<ReproCase> cases;

    bool all_pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
};

std::string default_fixture_dir();
GridPolygon load_fixture(const std::string& name);

// suite: one of table1, flaw, limit, merge, or all.
std::vector<ReproSuiteResult> run_repro(const std::string& suite);

}  // namespace gridpoly
