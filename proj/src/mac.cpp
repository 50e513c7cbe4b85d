#include "racoop/mac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace racoop {

namespace {

void check_sigma(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("sigma must be non-negative, got " + std::to_string(sigma));
}

void check_nonzero(double tbar) {
    if (tbar == 0.0)
        throw std::domain_error("mean phase duration is zero (no transmissions and zero idle slots)");
}

// Contention between an effective F-side burst of length t_eff = t_f + t_r
// and N's burst of length t_n in a single renewal state. Direct access is
// the t_r = 0 special case; both callers share this function so that the
// two produce bit-identical shares when t_r = 0.
TimeShares single_state_shares(double t_f, double t_n, double t_r, double tau,
                               double sigma, CollisionModel model) {
    PhaseProbs pr = phase_probs(tau);
    double t_eff = t_f + t_r;
    double coll_dur = model == CollisionModel::Literal ? std::max(t_eff, t_n)
                                                       : std::max(t_f, t_n);
    double tbar = pr.p_s * (t_eff + t_n) + pr.p_c * coll_dur + pr.p_i * sigma;
    check_nonzero(tbar);
    TimeShares sh;
    sh.succ_f = pr.p_s * t_f / tbar;
    sh.succ_n = pr.p_s * t_n / tbar;
    sh.succ_r = pr.p_s * t_r / tbar;
    sh.tx_f = tau * t_f / tbar;
    sh.tx_n = (tau * t_n + pr.p_s * t_r) / tbar;
    sh.idle = pr.p_i * sigma / tbar;
    sh.coll = pr.p_c * coll_dur / tbar;
    return sh;
}

}  // namespace

MacParams::MacParams(double t_f, double t_n, double t_r, double tau)
    : t_f(t_f), t_n(t_n), t_r(t_r), tau(tau) {
    if (!(t_f >= 0.0) || !(t_n >= 0.0) || !(t_r >= 0.0))
        throw std::invalid_argument("packet durations must be non-negative");
    double sum = t_f + t_n + t_r;
    if (!(std::fabs(sum - 1.0) <= 1e-12))
        throw std::invalid_argument("packet durations must sum to 1, got " + std::to_string(sum));
    if (!(tau >= 0.0 && tau <= 1.0))
        throw std::invalid_argument("tau must lie in [0,1], got " + std::to_string(tau));
}

PhaseProbs phase_probs(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0))
        throw std::invalid_argument("tau must lie in [0,1], got " + std::to_string(tau));
    return {tau * (1.0 - tau), tau * tau, (1.0 - tau) * (1.0 - tau)};
}

TimeShares shares_direct(const MacParams& p, double sigma) {
    check_sigma(sigma);
    if (p.t_r != 0.0)
        throw std::invalid_argument("direct access carries no relay traffic; t_r must be 0");
    return single_state_shares(p.t_f, p.t_n, 0.0, p.tau, sigma, CollisionModel::Literal);
}

TimeShares shares_straightforward(const MacParams& p, double sigma, CollisionModel model) {
    check_sigma(sigma);
    return single_state_shares(p.t_f, p.t_n, p.t_r, p.tau, sigma, model);
}

TimeShares shares_naive_df(const MacParams& p, double sigma) {
    check_sigma(sigma);
    PhaseProbs pr = phase_probs(p.tau);
    // Both states are visited half the time: F's success moves the chain to
    // the relay-pending state and N's relay success moves it back.
    double half_ps = 0.5 * pr.p_s;
    double half_tau = 0.5 * p.tau;
    double t_sc = half_ps * (p.t_n + p.t_f) + half_ps * p.t_r;
    double t_cc = 0.5 * pr.p_c * std::max(p.t_f, p.t_n) +
                  0.5 * (pr.p_c * std::max(p.t_f, p.t_r) + pr.p_s * p.t_f);
    double t_ii = pr.p_i * sigma;
    double tbar = t_sc + t_cc + t_ii;
    check_nonzero(tbar);
    TimeShares sh;
    sh.succ_f = half_ps * p.t_f / tbar;
    sh.succ_n = half_ps * p.t_n / tbar;
    sh.succ_r = half_ps * p.t_r / tbar;
    sh.tx_f = p.tau * p.t_f / tbar;
    sh.tx_n = (half_tau * p.t_n + half_tau * p.t_r) / tbar;
    sh.idle = t_ii / tbar;
    sh.coll = t_cc / tbar;
    return sh;
}

TimeShares shares_idle_forward(const MacParams& p, double sigma) {
    check_sigma(sigma);
    PhaseProbs pr = phase_probs(p.tau);
    // pi1 = 1/(2-tau) covers both boundary cases without special-casing:
    // tau=0 gives (1/2,1/2) and tau=1 gives (1,0).
    double pi1 = 1.0 / (2.0 - p.tau);
    double pi2 = (1.0 - p.tau) / (2.0 - p.tau);
    double w_succ = pi1 * pr.p_s;
    double w_tx = pi1 * p.tau;
    double relay_num = pi2 * p.tau * p.t_r;
    double t_sc = w_succ * (p.t_n + p.t_f) + relay_num;
    double t_cc = pi1 * pr.p_c * std::max(p.t_f, p.t_n);
    double t_ii = pi1 * pr.p_i * sigma + pi2 * (1.0 - p.tau) * sigma;
    double tbar = t_sc + t_cc + t_ii;
    check_nonzero(tbar);
    TimeShares sh;
    sh.succ_f = w_succ * p.t_f / tbar;
    sh.succ_n = w_succ * p.t_n / tbar;
    sh.succ_r = relay_num / tbar;
    sh.tx_f = w_tx * p.t_f / tbar;
    sh.tx_n = (w_tx * p.t_n + relay_num) / tbar;
    sh.idle = t_ii / tbar;
    sh.coll = t_cc / tbar;
    return sh;
}

TimeShares shares_for(MacScheme scheme, const MacParams& params, double sigma,
                      CollisionModel model) {
    switch (scheme) {
        case MacScheme::DirectAccess:
            return shares_direct(params, sigma);
        case MacScheme::NaiveDF:
            return shares_naive_df(params, sigma);
        case MacScheme::IdleForward:
            return shares_idle_forward(params, sigma);
        case MacScheme::Straightforward:
            return shares_straightforward(params, sigma, model);
    }
    throw std::invalid_argument("unknown MAC scheme");
}

ChainSpec build_chain(MacScheme scheme, const MacParams& p, double sigma,
                      CollisionModel model) {
    check_sigma(sigma);
    PhaseProbs pr = phase_probs(p.tau);
    using K = PhaseKind;
    using T = PhaseTrigger;
    ChainSpec chain;
    switch (scheme) {
        case MacScheme::DirectAccess: {
            if (p.t_r != 0.0)
                throw std::invalid_argument("direct access carries no relay traffic; t_r must be 0");
            StateSpec s0{true, true, {
                {T::FOnly, K::SuccessF, pr.p_s, p.t_f, p.t_f, 0.0, 0},
                {T::NOnly, K::SuccessN, pr.p_s, p.t_n, 0.0, p.t_n, 0},
                {T::Both, K::Collision, pr.p_c, std::max(p.t_f, p.t_n), p.t_f, p.t_n, 0},
                {T::Neither, K::Idle, pr.p_i, sigma, 0.0, 0.0, 0},
            }};
            chain.states = {std::move(s0)};
            break;
        }
        case MacScheme::NaiveDF: {
            StateSpec s0{true, true, {
                {T::FOnly, K::SuccessF, pr.p_s, p.t_f, p.t_f, 0.0, 1},
                {T::NOnly, K::SuccessN, pr.p_s, p.t_n, 0.0, p.t_n, 0},
                {T::Both, K::Collision, pr.p_c, std::max(p.t_f, p.t_n), p.t_f, p.t_n, 0},
                {T::Neither, K::Idle, pr.p_i, sigma, 0.0, 0.0, 0},
            }};
            // Relay-pending state: F keeps contending but its wins are
            // discarded by A while N still owes the forwarded copy.
            StateSpec s1{true, true, {
                {T::FOnly, K::WastedF, pr.p_s, p.t_f, p.t_f, 0.0, 1},
                {T::NOnly, K::SuccessR, pr.p_s, p.t_r, 0.0, p.t_r, 0},
                {T::Both, K::Collision, pr.p_c, std::max(p.t_f, p.t_r), p.t_f, p.t_r, 1},
                {T::Neither, K::Idle, pr.p_i, sigma, 0.0, 0.0, 1},
            }};
            chain.states = {std::move(s0), std::move(s1)};
            chain.p12 = pr.p_s;
            chain.p21 = pr.p_s;
            break;
        }
        case MacScheme::IdleForward: {
            StateSpec s0{true, true, {
                {T::FOnly, K::SuccessF, pr.p_s, p.t_f, p.t_f, 0.0, 1},
                {T::NOnly, K::SuccessN, pr.p_s, p.t_n, 0.0, p.t_n, 0},
                {T::Both, K::Collision, pr.p_c, std::max(p.t_f, p.t_n), p.t_f, p.t_n, 0},
                {T::Neither, K::Idle, pr.p_i, sigma, 0.0, 0.0, 0},
            }};
            // Relay-pending state: F stays silent, so N's attempts never
            // collide and the phase is idle when N holds back.
            StateSpec s1{false, true, {
                {T::NOnly, K::SuccessR, p.tau, p.t_r, 0.0, p.t_r, 0},
                {T::Neither, K::Idle, 1.0 - p.tau, sigma, 0.0, 0.0, 1},
            }};
            chain.states = {std::move(s0), std::move(s1)};
            chain.p12 = pr.p_s;
            chain.p21 = p.tau;
            break;
        }
        case MacScheme::Straightforward: {
            double coll_dur = model == CollisionModel::Literal
                                  ? std::max(p.t_f + p.t_r, p.t_n)
                                  : std::max(p.t_f, p.t_n);
            StateSpec s0{true, true, {
                {T::FOnly, K::SuccessF, pr.p_s, p.t_f, p.t_f, 0.0, 1},
                {T::NOnly, K::SuccessN, pr.p_s, p.t_n, 0.0, p.t_n, 0},
                {T::Both, K::Collision, pr.p_c, coll_dur, p.t_f, p.t_n, 0},
                {T::Neither, K::Idle, pr.p_i, sigma, 0.0, 0.0, 0},
            }};
            // F's win is immediately followed by the relay burst, modeled
            // as an unconditional extra phase with no contention draws.
            StateSpec s1{false, false, {
                {T::Always, K::SuccessR, 1.0, p.t_r, 0.0, p.t_r, 0},
            }};
            chain.states = {std::move(s0), std::move(s1)};
            chain.p12 = pr.p_s;
            chain.p21 = 1.0;
            break;
        }
    }
    return chain;
}

std::pair<double, double> stationary(const ChainSpec& chain) {
    if (chain.states.size() == 1) return {1.0, 0.0};
    double denom = chain.p12 + chain.p21;
    if (denom == 0.0) return {0.5, 0.5};
    return {chain.p21 / denom, chain.p12 / denom};
}

TimeShares integrate_chain(const ChainSpec& chain) {
    auto [pi1, pi2] = stationary(chain);
    double weights[2] = {pi1, pi2};
    double tbar = 0.0;
    TimeShares acc;
    for (std::size_t s = 0; s < chain.states.size(); ++s) {
        double w = weights[s];
        for (const PhaseEntry& e : chain.states[s].phases) {
            double we = w * e.prob;
            tbar += we * e.duration;
            acc.tx_f += we * e.tx_f;
            acc.tx_n += we * e.tx_n;
            switch (e.kind) {
                case PhaseKind::SuccessF: acc.succ_f += we * e.duration; break;
                case PhaseKind::SuccessN: acc.succ_n += we * e.duration; break;
                case PhaseKind::SuccessR: acc.succ_r += we * e.duration; break;
                case PhaseKind::Idle: acc.idle += we * e.duration; break;
                case PhaseKind::Collision:
                case PhaseKind::WastedF: acc.coll += we * e.duration; break;
            }
        }
    }
    check_nonzero(tbar);
    acc.succ_f /= tbar;
    acc.succ_n /= tbar;
    acc.succ_r /= tbar;
    acc.tx_f /= tbar;
    acc.tx_n /= tbar;
    acc.idle /= tbar;
    acc.coll /= tbar;
    return acc;
}

}  // namespace racoop
