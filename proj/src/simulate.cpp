#include "racoop/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace racoop {

namespace {

struct BatchAcc {
    double succ_f = 0.0, succ_n = 0.0, succ_r = 0.0;
    double tx_f = 0.0, tx_n = 0.0, idle = 0.0, coll = 0.0;
    double dur = 0.0;
    long state2 = 0;
    long n = 0;
};

// Sample standard error of the per-batch ratios x/dur around their mean.
double batch_se(const std::vector<BatchAcc>& acc, double BatchAcc::*field) {
    std::vector<double> vals;
    vals.reserve(acc.size());
    for (const BatchAcc& a : acc)
        if (a.dur > 0.0) vals.push_back(a.*field / a.dur);
    if (vals.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= vals.size();
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (vals.size() - 1)) / std::sqrt(double(vals.size()));
}

}  // namespace

SimStats simulate(const SimConfig& cfg) {
    if (cfg.n_phases < 1)
        throw std::invalid_argument("n_phases must be at least 1");
    ChainSpec chain = build_chain(cfg.scheme, cfg.params, cfg.sigma, cfg.collision_model);
    std::mt19937_64 rng(cfg.seed);
    auto next_u = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };

    int n_batches = cfg.n_phases < 100 ? static_cast<int>(cfg.n_phases) : 100;
    long batch_size = cfg.n_phases / n_batches;
    std::vector<BatchAcc> acc(n_batches);
    std::array<long, 6> counts{};

    int state = 0;
    for (long i = 0; i < cfg.n_phases; ++i) {
        BatchAcc& a = acc[std::min<long>(i / batch_size, n_batches - 1)];
        ++a.n;
        if (state == 1) ++a.state2;
        const StateSpec& st = chain.states[state];
        const PhaseEntry* e = nullptr;
        if (st.phases.size() == 1 && st.phases[0].trigger == PhaseTrigger::Always) {
            e = &st.phases[0];
        } else {
            bool f_tx = false, n_tx = false;
            if (st.f_contends) f_tx = next_u() < cfg.params.tau;
            if (st.n_contends) n_tx = next_u() < cfg.params.tau;
            PhaseTrigger trig = f_tx ? (n_tx ? PhaseTrigger::Both : PhaseTrigger::FOnly)
                                     : (n_tx ? PhaseTrigger::NOnly : PhaseTrigger::Neither);
            for (const PhaseEntry& cand : st.phases)
                if (cand.trigger == trig) {
                    e = &cand;
                    break;
                }
        }
        if (!e) throw std::logic_error("phase outcome not covered by the chain");
        switch (e->kind) {
            case PhaseKind::SuccessF: a.succ_f += e->duration; break;
            case PhaseKind::SuccessN: a.succ_n += e->duration; break;
            case PhaseKind::SuccessR: a.succ_r += e->duration; break;
            case PhaseKind::Idle: a.idle += e->duration; break;
            case PhaseKind::Collision:
            case PhaseKind::WastedF: a.coll += e->duration; break;
        }
        a.tx_f += e->tx_f;
        a.tx_n += e->tx_n;
        a.dur += e->duration;
        ++counts[static_cast<int>(e->kind)];
        state = e->next_state;
    }

    BatchAcc total;
    for (const BatchAcc& a : acc) {
        total.succ_f += a.succ_f;
        total.succ_n += a.succ_n;
        total.succ_r += a.succ_r;
        total.tx_f += a.tx_f;
        total.tx_n += a.tx_n;
        total.idle += a.idle;
        total.coll += a.coll;
        total.dur += a.dur;
        total.state2 += a.state2;
    }
    if (total.dur == 0.0)
        throw std::domain_error("simulated channel time is zero; shares are undefined");

    SimStats out;
    out.n_phases = cfg.n_phases;
    out.kind_counts = counts;
    out.shares.succ_f = total.succ_f / total.dur;
    out.shares.succ_n = total.succ_n / total.dur;
    out.shares.succ_r = total.succ_r / total.dur;
    out.shares.tx_f = total.tx_f / total.dur;
    out.shares.tx_n = total.tx_n / total.dur;
    out.shares.idle = total.idle / total.dur;
    out.shares.coll = total.coll / total.dur;
    out.se.succ_f = batch_se(acc, &BatchAcc::succ_f);
    out.se.succ_n = batch_se(acc, &BatchAcc::succ_n);
    out.se.succ_r = batch_se(acc, &BatchAcc::succ_r);
    out.se.tx_f = batch_se(acc, &BatchAcc::tx_f);
    out.se.tx_n = batch_se(acc, &BatchAcc::tx_n);
    out.se.idle = batch_se(acc, &BatchAcc::idle);
    out.se.coll = batch_se(acc, &BatchAcc::coll);
    out.state2_fraction = double(total.state2) / double(cfg.n_phases);
    {
        std::vector<double> fr;
        fr.reserve(acc.size());
        for (const BatchAcc& a : acc)
            if (a.n > 0) fr.push_back(double(a.state2) / double(a.n));
        if (fr.size() >= 2) {
            double mean = 0.0;
            for (double v : fr) mean += v;
            mean /= fr.size();
            double ss = 0.0;
            for (double v : fr) ss += (v - mean) * (v - mean);
            out.state2_se = std::sqrt(ss / (fr.size() - 1)) / std::sqrt(double(fr.size()));
        }
    }
    return out;
}

CompareReport compare(const SimStats& stats, const TimeShares& analytic,
                      double pi2_analytic, double z_max) {
    auto row = [&](const char* name, double ana, double emp, double se) {
        CompareRow r;
        r.name = name;
        r.analytic = ana;
        r.empirical = emp;
        r.se = se;
        if (se > 0.0) {
            r.z = (emp - ana) / se;
            r.pass = std::fabs(r.z) <= z_max;
        } else {
            r.z = 0.0;
            r.pass = std::fabs(emp - ana) <= 1e-12;
        }
        return r;
    };
    CompareReport rep;
    rep.rows.push_back(row("s_f", analytic.succ_f, stats.shares.succ_f, stats.se.succ_f));
    rep.rows.push_back(row("s_n", analytic.succ_n, stats.shares.succ_n, stats.se.succ_n));
    rep.rows.push_back(row("s_r", analytic.succ_r, stats.shares.succ_r, stats.se.succ_r));
    rep.rows.push_back(row("t_F", analytic.tx_f, stats.shares.tx_f, stats.se.tx_f));
    rep.rows.push_back(row("t_N", analytic.tx_n, stats.shares.tx_n, stats.se.tx_n));
    rep.rows.push_back(row("t_i", analytic.idle, stats.shares.idle, stats.se.idle));
    rep.rows.push_back(row("t_c", analytic.coll, stats.shares.coll, stats.se.coll));
    if (pi2_analytic >= 0.0)
        rep.rows.push_back(row("pi_2", pi2_analytic, stats.state2_fraction, stats.state2_se));
    rep.pass = std::all_of(rep.rows.begin(), rep.rows.end(),
                           [](const CompareRow& r) { return r.pass; });
    return rep;
}

}  // namespace racoop
