#pragma once

#include <string>
#include <vector>

namespace hypershare {

struct ReproRow {
    std::string id;
    std::string description;
    std::string expected;
    std::string computed;
    bool pass = false;
    double seconds = 0.0;
};

struct ReproReport {
    std::vector<ReproRow> rows;
    bool all_pass() const;
};

// Recomputes the nine headline checks end to end. Each row carries a wall
// clock reading; rows with a stated time budget fail when they exceed it.
ReproReport run_reproduction();

std::string format_report(const ReproReport& r);

} // namespace hypershare
