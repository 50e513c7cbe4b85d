#pragma once

#include <utility>
#include <vector>

namespace racoop {

// Per-phase contention parameters of the two contending nodes.
// t_f, t_n, t_r are the packet durations used by F's own traffic, N's own
// traffic, and N's relay traffic; they partition one unit of payload time.
struct MacParams {
    double t_f;
    double t_n;
    double t_r;
    double tau;  // per-phase transmission probability of a contending node

    MacParams(double t_f, double t_n, double t_r, double tau);
};

// Long-run fractions of channel time, all normalized by the mean phase
// length. succ_* are payload-success shares; tx_f / tx_n are the total
// transmit-time shares of F and N (N's includes relaying); idle and coll
// are the idle and wasted (collision or discarded packet) shares.
struct TimeShares {
    double succ_f = 0.0;
    double succ_n = 0.0;
    double succ_r = 0.0;
    double tx_f = 0.0;
    double tx_n = 0.0;
    double idle = 0.0;
    double coll = 0.0;
};

enum class MacScheme { DirectAccess, NaiveDF, IdleForward, Straightforward };

// Collision-slot duration convention when F's winning slot carries a relay
// tail: Literal charges max(t_f + t_r, t_n), Refined assumes the tail is
// aborted on collision and charges max(t_f, t_n).
enum class CollisionModel { Literal, Refined };

struct PhaseProbs {
    double p_s;  // exactly one node transmits (either one)
    double p_c;  // both transmit
    double p_i;  // neither transmits
};

PhaseProbs phase_probs(double tau);

// --- Phase-chain description -------------------------------------------
// Each MAC scheme is a small Markov chain over contention states. Every
// state lists its possible phase outcomes with probability, duration,
// per-node transmit time, and successor state. The closed-form share
// functions and the Monte Carlo simulator both consume this description.

enum class PhaseKind { SuccessF, SuccessN, SuccessR, Collision, Idle, WastedF };

enum class PhaseTrigger { FOnly, NOnly, Both, Neither, Always };

struct PhaseEntry {
    PhaseTrigger trigger;
    PhaseKind kind;
    double prob;
    double duration;
    double tx_f;
    double tx_n;
    int next_state;
};

struct StateSpec {
    bool f_contends;
    bool n_contends;
    std::vector<PhaseEntry> phases;
};

struct ChainSpec {
    std::vector<StateSpec> states;
    // Inter-state transition probabilities for two-state chains
    // (state 0 -> 1 and 1 -> 0); both zero for single-state chains.
    double p12 = 0.0;
    double p21 = 0.0;
};

ChainSpec build_chain(MacScheme scheme, const MacParams& params, double sigma,
                      CollisionModel model = CollisionModel::Literal);

// Stationary distribution over the chain's states.
std::pair<double, double> stationary(const ChainSpec& chain);

// Renewal-reward integration of a chain: stationary-weighted expected
// accruals divided by the mean phase duration.
TimeShares integrate_chain(const ChainSpec& chain);

// Closed forms for the same quantities, one per scheme.
TimeShares shares_direct(const MacParams& params, double sigma);
TimeShares shares_naive_df(const MacParams& params, double sigma);
TimeShares shares_idle_forward(const MacParams& params, double sigma);
TimeShares shares_straightforward(const MacParams& params, double sigma,
                                  CollisionModel model = CollisionModel::Literal);

TimeShares shares_for(MacScheme scheme, const MacParams& params, double sigma,
                      CollisionModel model = CollisionModel::Literal);

}  // namespace racoop
