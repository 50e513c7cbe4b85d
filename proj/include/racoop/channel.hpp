#pragma once

namespace racoop {

// Static scene: far node F at unit distance from the access point A,
// near node N on the F-A segment at distance beta from F (1-beta from A).
// All links share the transmit power budget and a common path-loss exponent.
struct NetworkConfig {
    double power;  // transmit SNR at unit distance (linear scale)
    double beta;   // F-N distance as a fraction of the F-A distance, in (0,1)
    double gamma;  // path-loss exponent, > 0
    double sigma;  // idle-slot duration as a fraction of a unit packet, >= 0

    NetworkConfig(double power, double beta, double gamma, double sigma);
};

enum class Link { FA, FN, NA };

// Received SNR of a link after distance-dependent path loss.
double link_snr(const NetworkConfig& cfg, Link link);

// Throughput contribution of a flow that holds the channel for a fraction
// `share` of time inside transmission bursts that occupy a fraction
// `burst_fraction` of time: share * log2(1 + snr / burst_fraction).
// A zero share contributes nothing regardless of burst_fraction.
double awgn_rate(double share, double burst_fraction, double snr);

}  // namespace racoop
