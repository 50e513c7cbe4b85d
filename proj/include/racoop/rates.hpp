#pragma once

#include "racoop/channel.hpp"
#include "racoop/mac.hpp"

namespace racoop {

// End-to-end transmission schemes. The first two are non-cooperative
// benchmarks; the last three decode F's packet at N and forward it.
enum class Scheme {
    DirectLink,
    TwoHop,
    NaiveDecodeForward,
    DecodeIdleForward,
    DecodeStraightforward,
};

// MAC contention pattern used by each scheme.
MacScheme mac_scheme_for(Scheme scheme);

struct RateResult {
    double c_f;       // rate of F's flow
    double c_n;       // rate of N's own flow
    double min_rate;  // max-min objective: min(c_f, c_n)
    TimeShares shares;
};

// F transmits straight to A; the relay share must be zero.
RateResult rate_direct(const NetworkConfig& cfg, const TimeShares& sh);

// F's packets reach A only through N; A ignores F's transmissions.
RateResult rate_two_hop(const NetworkConfig& cfg, const TimeShares& sh);

// A combines F's direct transmission with N's forwarded copy; the F-N
// link must also sustain the rate for N to decode.
RateResult rate_decode_forward(const NetworkConfig& cfg, const TimeShares& sh);

// Shares + rate formula for one scheme at fixed MAC parameters.
RateResult evaluate(Scheme scheme, const NetworkConfig& cfg, const MacParams& params,
                    CollisionModel model = CollisionModel::Literal);

struct OptSettings;

// Best non-cooperative benchmark: max of optimized direct-link and
// two-hop rates.
double no_coop_benchmark(const NetworkConfig& cfg, const OptSettings& settings,
                         CollisionModel model = CollisionModel::Literal);

}  // namespace racoop
