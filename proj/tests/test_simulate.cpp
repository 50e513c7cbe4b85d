#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "racoop/simulate.hpp"

using namespace racoop;

TEST_CASE("deterministic regimes produce exact shares with zero error") {
    // Nobody transmits: every phase is an idle slot.
    SimConfig idle{MacScheme::DirectAccess, MacParams(0.6, 0.4, 0.0, 0.0), 0.002, 1000, 7};
    SimStats s = simulate(idle);
    CHECK(s.shares.idle == 1.0);
    CHECK(s.se.idle == 0.0);
    CHECK(s.kind_counts[static_cast<int>(PhaseKind::Idle)] == 1000);

    // Everybody always transmits: every phase is a collision.
    SimConfig coll{MacScheme::DirectAccess, MacParams(0.5, 0.5, 0.0, 1.0), 0.002, 1000, 7};
    SimStats c = simulate(coll);
    CHECK(c.shares.coll == 1.0);
    CHECK(c.shares.tx_f == 1.0);
    CHECK(c.se.coll == 0.0);
}

TEST_CASE("phase counts partition the simulated phases") {
    SimConfig cfg{MacScheme::NaiveDF, MacParams(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.5), 0.0,
                  100000, 3};
    SimStats s = simulate(cfg);
    long total = std::accumulate(s.kind_counts.begin(), s.kind_counts.end(), 0L);
    CHECK(total == 100000);
    CHECK(s.kind_counts[static_cast<int>(PhaseKind::WastedF)] > 0);
    CHECK(s.n_phases == 100000);
}

TEST_CASE("simulation is reproducible per seed") {
    SimConfig cfg{MacScheme::IdleForward, MacParams(0.4, 0.4, 0.2, 0.3), 0.002, 50000, 42};
    SimStats a = simulate(cfg);
    SimStats b = simulate(cfg);
    CHECK(a.shares.succ_f == b.shares.succ_f);
    CHECK(a.shares.coll == b.shares.coll);
    CHECK(a.se.succ_f == b.se.succ_f);
    cfg.seed = 43;
    SimStats c = simulate(cfg);
    CHECK(a.shares.succ_f != c.shares.succ_f);
}

TEST_CASE("empirical shares agree with the analytic chain at one million phases") {
    MacParams p(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.5);
    SimConfig cfg{MacScheme::NaiveDF, p, 0.0, 1'000'000, 2024};
    SimStats s = simulate(cfg);
    TimeShares analytic = shares_naive_df(p, 0.0);
    CHECK(std::fabs(s.shares.succ_f - analytic.succ_f) <= 4.0 * s.se.succ_f);

    ChainSpec chain = build_chain(MacScheme::NaiveDF, p, 0.0);
    CompareReport rep = compare(s, analytic, stationary(chain).second);
    CHECK(rep.pass);
    REQUIRE(rep.rows.size() == 8);
    // Half the phases sit in the relay-pending state.
    CHECK(rep.rows.back().analytic == 0.5);
    CHECK(std::fabs(rep.rows.back().empirical - 0.5) <= 4.0 * rep.rows.back().se + 1e-12);
}

TEST_CASE("comparison flags an injected analytic perturbation") {
    MacParams p(0.4, 0.4, 0.2, 0.25);
    SimConfig cfg{MacScheme::IdleForward, p, 0.002, 200000, 5};
    SimStats s = simulate(cfg);
    TimeShares analytic = shares_idle_forward(p, 0.002);
    CHECK(compare(s, analytic).pass);

    TimeShares shifted = analytic;
    shifted.succ_f *= 1.10;
    CompareReport rep = compare(s, shifted);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.rows[0].pass);
    CHECK(std::fabs(rep.rows[0].z) > 4.0);
}

TEST_CASE("straightforward relay tail appears as its own phase") {
    MacParams p(0.3, 0.4, 0.3, 0.35);
    SimConfig cfg{MacScheme::Straightforward, p, 0.002, 500000, 11};
    SimStats s = simulate(cfg);
    // Every F success is followed by exactly one relay phase.
    CHECK(s.kind_counts[static_cast<int>(PhaseKind::SuccessF)] ==
          s.kind_counts[static_cast<int>(PhaseKind::SuccessR)]);
    TimeShares analytic = shares_straightforward(p, 0.002);
    ChainSpec chain = build_chain(MacScheme::Straightforward, p, 0.002);
    CHECK(compare(s, analytic, stationary(chain).second).pass);
}

TEST_CASE("simulator rejects empty runs and degenerate zero-time traces") {
    SimConfig cfg{MacScheme::DirectAccess, MacParams(0.5, 0.5, 0.0, 0.0), 0.0, 1000, 1};
    CHECK_THROWS_AS(simulate(cfg), std::domain_error);
    cfg.n_phases = 0;
    CHECK_THROWS_AS(simulate(cfg), std::invalid_argument);
}
