#include "racoop/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace racoop {

NetworkConfig::NetworkConfig(double power, double beta, double gamma, double sigma)
    : power(power), beta(beta), gamma(gamma), sigma(sigma) {
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument("power must be positive, got " + std::to_string(power));
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("beta must lie in (0,1), got " + std::to_string(beta));
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be positive, got " + std::to_string(gamma));
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("sigma must be non-negative, got " + std::to_string(sigma));
}

double link_snr(const NetworkConfig& cfg, Link link) {
    switch (link) {
        case Link::FA:
            return cfg.power;
        case Link::FN:
            return cfg.power / std::pow(1.0 - cfg.beta, cfg.gamma);
        case Link::NA:
            return cfg.power / std::pow(cfg.beta, cfg.gamma);
    }
    throw std::invalid_argument("unknown link");
}

double awgn_rate(double share, double burst_fraction, double snr) {
    if (!(share >= 0.0) || !(burst_fraction >= 0.0))
        throw std::invalid_argument("share and burst_fraction must be non-negative");
    if (!(snr >= 0.0))
        throw std::invalid_argument("snr must be non-negative");
    if (share == 0.0) return 0.0;
    if (share > burst_fraction)
        throw std::invalid_argument("share " + std::to_string(share) +
                                    " exceeds burst fraction " + std::to_string(burst_fraction));
    return share * std::log2(1.0 + snr / burst_fraction);
}

}  // namespace racoop
