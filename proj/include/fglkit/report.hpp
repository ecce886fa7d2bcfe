#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fglkit {

// Outcome of an identity check. A violated identity is a report outcome,
// never an exception.
struct Report
{
    std::string name;
    bool passed = true;
    bool warning = false;  // set for findings that are reported but do not fail
    std::vector<std::string> failures;
    std::string detail;
    int checked = 0;  // number of individual identities compared

    explicit Report(std::string n = {}) : name(std::move(n)) {}

    void fail(std::string what)
    {
        passed = false;
        if (failures.size() < 32)
            failures.push_back(std::move(what));
    }

    void merge(const Report& other)
    {
        checked += other.checked;
        if (!other.passed) {
            passed = false;
            for (const auto& f : other.failures)
                if (failures.size() < 32)
                    failures.push_back(other.name + ": " + f);
        }
        warning = warning || other.warning;
    }
};

} // namespace fglkit
