#include "racoop/rates.hpp"

#include <algorithm>
#include <stdexcept>

namespace racoop {

MacScheme mac_scheme_for(Scheme scheme) {
    switch (scheme) {
        case Scheme::DirectLink: return MacScheme::DirectAccess;
        case Scheme::TwoHop: return MacScheme::Straightforward;
        case Scheme::NaiveDecodeForward: return MacScheme::NaiveDF;
        case Scheme::DecodeIdleForward: return MacScheme::IdleForward;
        case Scheme::DecodeStraightforward: return MacScheme::Straightforward;
    }
    throw std::invalid_argument("unknown scheme");
}

RateResult rate_direct(const NetworkConfig& cfg, const TimeShares& sh) {
    if (sh.succ_r != 0.0)
        throw std::invalid_argument("direct link cannot carry relay traffic");
    double c_f = awgn_rate(sh.succ_f, sh.tx_f, link_snr(cfg, Link::FA));
    double c_n = awgn_rate(sh.succ_n, sh.tx_n, link_snr(cfg, Link::NA));
    return {c_f, c_n, std::min(c_f, c_n), sh};
}

RateResult rate_two_hop(const NetworkConfig& cfg, const TimeShares& sh) {
    double hop1 = awgn_rate(sh.succ_f, sh.tx_f, link_snr(cfg, Link::FN));
    double hop2 = awgn_rate(sh.succ_r, sh.tx_n, link_snr(cfg, Link::NA));
    double c_f = std::min(hop1, hop2);
    double c_n = awgn_rate(sh.succ_n, sh.tx_n, link_snr(cfg, Link::NA));
    return {c_f, c_n, std::min(c_f, c_n), sh};
}

RateResult rate_decode_forward(const NetworkConfig& cfg, const TimeShares& sh) {
    double decode = awgn_rate(sh.succ_f, sh.tx_f, link_snr(cfg, Link::FN));
    double combined = awgn_rate(sh.succ_f, sh.tx_f, link_snr(cfg, Link::FA)) +
                      awgn_rate(sh.succ_r, sh.tx_n, link_snr(cfg, Link::NA));
    double c_f = std::min(decode, combined);
    double c_n = awgn_rate(sh.succ_n, sh.tx_n, link_snr(cfg, Link::NA));
    return {c_f, c_n, std::min(c_f, c_n), sh};
}

RateResult evaluate(Scheme scheme, const NetworkConfig& cfg, const MacParams& params,
                    CollisionModel model) {
    TimeShares sh = shares_for(mac_scheme_for(scheme), params, cfg.sigma, model);
    switch (scheme) {
        case Scheme::DirectLink:
            return rate_direct(cfg, sh);
        case Scheme::TwoHop:
            return rate_two_hop(cfg, sh);
        case Scheme::NaiveDecodeForward:
        case Scheme::DecodeIdleForward:
        case Scheme::DecodeStraightforward:
            return rate_decode_forward(cfg, sh);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace racoop
