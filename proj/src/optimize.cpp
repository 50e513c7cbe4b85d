#include "racoop/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace racoop {

namespace {

// tau = 0 and tau = 1 make every phase degenerate; optimizing over the
// closed interval needs a wall just inside the boundary. Optima that are
// suprema at tau -> 0 settle on this wall.
constexpr double kTauWall = 1e-7;

// Reduced coordinates: (tau, t_f) with t_n = 1 - t_f for the direct link,
// (tau, t_f, t_n) with t_r = 1 - t_f - t_n otherwise.
struct Point {
    std::array<double, 3> x;
    int dim;
};

Point project(Point p) {
    p.x[0] = std::clamp(p.x[0], kTauWall, 1.0 - kTauWall);
    p.x[1] = std::clamp(p.x[1], 0.0, 1.0);
    if (p.dim == 3) {
        p.x[2] = std::clamp(p.x[2], 0.0, 1.0);
        double s = p.x[1] + p.x[2];
        if (s > 1.0) {
            p.x[1] /= s;
            p.x[2] /= s;
        }
    }
    return p;
}

MacParams to_params(const Point& p) {
    if (p.dim == 2) {
        double t_f = p.x[1];
        return MacParams(t_f, 1.0 - t_f, 0.0, p.x[0]);
    }
    double t_f = p.x[1];
    double t_n = p.x[2];
    double t_r = 1.0 - t_f - t_n;
    if (t_r < 0.0) t_r = 0.0;
    return MacParams(t_f, t_n, t_r, p.x[0]);
}

struct Objective {
    Scheme scheme;
    const NetworkConfig& cfg;
    CollisionModel model;
    long evals = 0;
    double best_val = -1.0;
    Point best_point{{0.0, 0.0, 0.0}, 3};

    double eval_projected(const Point& p) {
        ++evals;
        double v = evaluate(scheme, cfg, to_params(p), model).min_rate;
        if (v > best_val) {
            best_val = v;
            best_point = p;
        }
        return v;
    }

    double operator()(const Point& p) { return eval_projected(project(p)); }
};

void coarse_grid(Objective& obj, const OptSettings& st) {
    int n_tau = st.tau_grid_points;
    int n_t = static_cast<int>(std::lround(1.0 / st.simplex_step));
    bool direct = obj.scheme == Scheme::DirectLink;
    for (int k = 1; k <= n_tau; ++k) {
        double tau = static_cast<double>(k) / (n_tau + 1);
        if (direct) {
            for (int i = 0; i <= n_t; ++i) {
                double t_f = std::min(1.0, i * st.simplex_step);
                obj({{tau, t_f, 0.0}, 2});
            }
        } else {
            for (int i = 0; i <= n_t; ++i) {
                double t_f = std::min(1.0, i * st.simplex_step);
                for (int j = 0; j <= n_t - i; ++j) {
                    double t_n = std::min(1.0, j * st.simplex_step);
                    obj({{tau, t_f, t_n}, 3});
                }
            }
        }
    }
}

// Deterministic Nelder-Mead on the reduced coordinates, every trial point
// projected onto the feasible set before evaluation. Standard reflection /
// expansion / contraction coefficients; settings supply the shrink
// coefficient, the initial simplex offset, the iteration cap, and the
// simplex-diameter stopping threshold.
void refine(Objective& obj, const OptSettings& st, const Point& start) {
    if (st.refine_iters == 0) return;
    int d = start.dim;
    int n = d;  // vertices = n + 1
    std::vector<Point> sim(n + 1, start);
    std::vector<double> f(n + 1);
    for (int k = 1; k <= n; ++k) sim[k].x[k - 1] += st.simplex_step;
    for (int k = 0; k <= n; ++k) f[k] = obj(sim[k]);

    auto order = [&]() {
        std::vector<int> idx(n + 1);
        for (int k = 0; k <= n; ++k) idx[k] = k;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] > f[b]; });
        std::vector<Point> s2;
        std::vector<double> f2;
        s2.reserve(n + 1);
        f2.reserve(n + 1);
        for (int k = 0; k <= n; ++k) {
            s2.push_back(sim[idx[k]]);
            f2.push_back(f[idx[k]]);
        }
        sim = std::move(s2);
        f = std::move(f2);
    };
    order();

    for (int iter = 0; iter < st.refine_iters; ++iter) {
        double diam = 0.0;
        for (int k = 1; k <= n; ++k)
            for (int c = 0; c < d; ++c)
                diam = std::max(diam, std::fabs(sim[k].x[c] - sim[0].x[c]));
        if (diam <= st.min_step) break;

        Point centroid{{0.0, 0.0, 0.0}, d};
        for (int k = 0; k < n; ++k)
            for (int c = 0; c < d; ++c) centroid.x[c] += sim[k].x[c] / n;

        auto blend = [&](double coef) {
            Point p{{0.0, 0.0, 0.0}, d};
            for (int c = 0; c < d; ++c)
                p.x[c] = (1.0 + coef) * centroid.x[c] - coef * sim[n].x[c];
            return p;
        };

        Point xr = blend(1.0);
        double fr = obj(xr);
        if (fr > f[0]) {
            Point xe = blend(2.0);
            double fe = obj(xe);
            if (fe > fr) {
                sim[n] = xe;
                f[n] = fe;
            } else {
                sim[n] = xr;
                f[n] = fr;
            }
        } else if (fr > f[n - 1]) {
            sim[n] = xr;
            f[n] = fr;
        } else {
            bool shrink = false;
            if (fr > f[n]) {
                Point xc = blend(0.5);
                double fc = obj(xc);
                if (fc >= fr) {
                    sim[n] = xc;
                    f[n] = fc;
                } else {
                    shrink = true;
                }
            } else {
                Point xcc = blend(-0.5);
                double fcc = obj(xcc);
                if (fcc > f[n]) {
                    sim[n] = xcc;
                    f[n] = fcc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (int k = 1; k <= n; ++k) {
                    for (int c = 0; c < d; ++c)
                        sim[k].x[c] = sim[0].x[c] + st.refine_shrink * (sim[k].x[c] - sim[0].x[c]);
                    f[k] = obj(sim[k]);
                }
            }
        }
        order();
    }
}

void check_settings(const OptSettings& st) {
    if (st.tau_grid_points < 1)
        throw std::invalid_argument("tau_grid_points must be at least 1");
    if (!(st.simplex_step > 0.0 && st.simplex_step <= 1.0))
        throw std::invalid_argument("simplex_step must lie in (0,1]");
    if (st.refine_iters < 0)
        throw std::invalid_argument("refine_iters must be non-negative");
    if (!(st.refine_shrink > 0.0 && st.refine_shrink < 1.0))
        throw std::invalid_argument("refine_shrink must lie in (0,1)");
    if (!(st.min_step > 0.0))
        throw std::invalid_argument("min_step must be positive");
}

}  // namespace

OptResult maximize(Scheme scheme, const NetworkConfig& cfg, const OptSettings& settings,
                   CollisionModel model) {
    check_settings(settings);
    Objective obj{scheme, cfg, model};
    coarse_grid(obj, settings);
    refine(obj, settings, obj.best_point);
    MacParams best = to_params(obj.best_point);
    RateResult r = evaluate(scheme, cfg, best, model);
    return {best, r.min_rate, r.shares, r.c_f, r.c_n, obj.evals};
}

double no_coop_benchmark(const NetworkConfig& cfg, const OptSettings& settings,
                         CollisionModel model) {
    double direct = maximize(Scheme::DirectLink, cfg, settings, model).best_rate;
    double two_hop = maximize(Scheme::TwoHop, cfg, settings, model).best_rate;
    return std::max(direct, two_hop);
}

Improvement improvement(const NetworkConfig& cfg, const OptSettings& settings,
                        CollisionModel model) {
    double base = no_coop_benchmark(cfg, settings, model);
    if (base == 0.0)
        throw std::domain_error("non-cooperative benchmark rate is zero");
    auto gain = [&](Scheme s) {
        return 100.0 * (maximize(s, cfg, settings, model).best_rate - base) / base;
    };
    return {gain(Scheme::NaiveDecodeForward), gain(Scheme::DecodeIdleForward),
            gain(Scheme::DecodeStraightforward)};
}

}  // namespace racoop
