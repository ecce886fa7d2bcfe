#pragma once

#include <memory>
#include <vector>

#include "fglkit/lazard/lazard_tables.hpp"
#include "fglkit/report.hpp"

namespace fglkit::verify {

struct TimedReport
{
    Report report;
    double seconds = 0;
};

// Every module identity at index bound `degree`: FGL axioms at D = degree,
// [CP^n] and eta' for n <= degree, Hopf identities for indices (and index
// sums) <= degree, Gysin identities for n <= min(degree, 5 or 6), and the
// Steenrod suites for l in {2, 3, 5}. `universal` must be the universal law
// at truncation degree >= degree + 1. Random inputs use fixed seeds, so the
// result is reproducible.
std::vector<TimedReport> verify_all(int degree, std::shared_ptr<const lazard::LazardTables> universal);

bool all_passed(const std::vector<TimedReport>& reports);

} // namespace fglkit::verify
