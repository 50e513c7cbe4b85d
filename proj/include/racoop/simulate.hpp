#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "racoop/mac.hpp"

namespace racoop {

struct SimConfig {
    MacScheme scheme;
    MacParams params;
    double sigma;
    long n_phases = 1'000'000;
    std::uint64_t seed = 1;
    CollisionModel collision_model = CollisionModel::Literal;
};

// Empirical counterpart of TimeShares plus batch-means standard errors.
struct SimStats {
    TimeShares shares;
    TimeShares se;  // standard error of each share (batch means, 100 batches)
    std::array<long, 6> kind_counts{};  // indexed by PhaseKind
    double state2_fraction = 0.0;       // fraction of phases spent in state 1
    double state2_se = 0.0;
    long n_phases = 0;
};

SimStats simulate(const SimConfig& cfg);

struct CompareRow {
    std::string name;
    double analytic;
    double empirical;
    double se;
    double z;
    bool pass;
};

struct CompareReport {
    std::vector<CompareRow> rows;  // 7 share rows, plus occupancy when available
    bool pass;
};

// Check every empirical share against its analytic value at z_max standard
// errors. Rows with zero standard error compare exactly (1e-12 absolute).
// pi2_analytic >= 0 adds a second-state occupancy row.
CompareReport compare(const SimStats& stats, const TimeShares& analytic,
                      double pi2_analytic = -1.0, double z_max = 4.0);

}  // namespace racoop
