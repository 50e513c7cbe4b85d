#pragma once

#include "racoop/rates.hpp"

namespace racoop {

struct OptSettings {
    int tau_grid_points = 199;    // coarse grid: tau = k/(tau_grid_points+1)
    double simplex_step = 0.02;   // coarse grid resolution on (t_f, t_n, t_r);
                                  // also the initial offset of the refinement simplex
    int refine_iters = 500;       // refinement iteration cap
    double refine_shrink = 0.5;   // refinement shrink coefficient
    double min_step = 1e-5;       // refinement stops once the simplex diameter
                                  // falls below this
};

struct OptResult {
    MacParams best_params;
    double best_rate;
    TimeShares best_shares;
    double c_f;
    double c_n;
    long evaluations;
};

// Maximize min(c_f, c_n) over (tau, t_f, t_n, t_r) for one scheme:
// exhaustive coarse grid, then deterministic simplex refinement around the
// best grid point with every candidate projected back onto the feasible
// set. Fully deterministic; ties on the grid break toward smaller
// (tau, t_f, t_n).
OptResult maximize(Scheme scheme, const NetworkConfig& cfg,
                   const OptSettings& settings = {},
                   CollisionModel model = CollisionModel::Literal);

// Percentage gain of each cooperative scheme over the best optimized
// non-cooperative benchmark at the same config.
struct Improvement {
    double naive_df_pct;
    double idle_forward_pct;
    double straightforward_pct;
};

Improvement improvement(const NetworkConfig& cfg, const OptSettings& settings = {},
                        CollisionModel model = CollisionModel::Literal);

}  // namespace racoop
