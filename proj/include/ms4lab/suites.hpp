#pragma once

#include "ms4lab/frame.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ms4lab {

struct SuiteOptions {
    int max_worlds = 3;          // exhaustive part of the frame corpus
    int random_frames = 500;     // seeded random part
    int random_max_worlds = 5;
    std::uint64_t seed = 20240611;
    /// Per-formula valuation budget inside suites. Instances above it fall back
    /// to the relational side and are counted, not failed.
    std::uint64_t max_valuations = std::uint64_t{1} << 24;
    int cluster_cap = 20;
    int threads = 1;
    int count = 0;  // item count for the sampled suites; 0 = suite default
};

struct SuiteReport {
    std::string name;
    bool passed = true;
    long long checks = 0;
    long long failures = 0;
    std::vector<std::string> failure_samples;  // first few, for diagnosis
    std::map<std::string, long long> counters;
    double seconds = 0;
};

/// correspondence, structure, translation, fmp, paths, grid, filtration, minimal.
std::vector<std::string> suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

/// Every labeled frame up to max_worlds, then random_frames seeded frames with
/// 2..random_max_worlds worlds (cycling through the sizes).
std::vector<MS4Frame> corpus_frames(const SuiteOptions& opts);

}  // namespace ms4lab
