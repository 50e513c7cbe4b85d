#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "racoop/mac.hpp"

using namespace racoop;

namespace {

struct ParamGen {
    std::mt19937_64 rng;
    explicit ParamGen(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
    }
    MacParams draw(double tau_lo = 0.02, double tau_hi = 0.98) {
        double a = uniform(0.0, 1.0), b = uniform(0.0, 1.0);
        double lo = std::min(a, b), hi = std::max(a, b);
        return MacParams(lo, hi - lo, 1.0 - hi, uniform(tau_lo, tau_hi));
    }
};

double share_sum(const TimeShares& sh) {
    return sh.succ_f + sh.succ_n + sh.succ_r + sh.idle + sh.coll;
}

void check_close(const TimeShares& a, const TimeShares& b, double rel) {
    auto near = [&](double x, double y) {
        CHECK(std::fabs(x - y) <= rel * std::max({1.0, std::fabs(x), std::fabs(y)}));
    };
    near(a.succ_f, b.succ_f);
    near(a.succ_n, b.succ_n);
    near(a.succ_r, b.succ_r);
    near(a.tx_f, b.tx_f);
    near(a.tx_n, b.tx_n);
    near(a.idle, b.idle);
    near(a.coll, b.coll);
}

}  // namespace

TEST_CASE("phase probabilities") {
    PhaseProbs pr = phase_probs(0.5);
    CHECK(pr.p_s == 0.25);
    CHECK(pr.p_c == 0.25);
    CHECK(pr.p_i == 0.25);
    PhaseProbs z = phase_probs(0.0);
    CHECK(z.p_s == 0.0);
    CHECK(z.p_c == 0.0);
    CHECK(z.p_i == 1.0);
    PhaseProbs o = phase_probs(1.0);
    CHECK(o.p_s == 0.0);
    CHECK(o.p_c == 1.0);
    CHECK(o.p_i == 0.0);
    CHECK_THROWS_AS(phase_probs(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(phase_probs(1.1), std::invalid_argument);

    ParamGen gen(11);
    for (int i = 0; i < 200; ++i) {
        double tau = gen.uniform(0.0, 1.0);
        PhaseProbs p = phase_probs(tau);
        CHECK(std::fabs(2.0 * p.p_s + p.p_c + p.p_i - 1.0) <= 1e-15);
    }
}

TEST_CASE("mac params validate packet durations and tau") {
    CHECK_NOTHROW(MacParams(0.5, 0.3, 0.2, 0.4));
    CHECK_NOTHROW(MacParams(1.0, 0.0, 0.0, 0.0));
    CHECK_THROWS_AS(MacParams(0.5, 0.3, 0.3, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(MacParams(-0.1, 0.6, 0.5, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(MacParams(0.5, 0.3, 0.2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(MacParams(0.5, 0.3, 0.2, 1.1), std::invalid_argument);
}

TEST_CASE("direct access shares: symmetric contention splits success time") {
    TimeShares sh = shares_direct(MacParams(0.5, 0.5, 0.0, 0.5), 0.0);
    CHECK(sh.succ_f == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sh.succ_n == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sh.succ_r == 0.0);
    CHECK(sh.coll == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sh.tx_f == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(sh.idle == 0.0);
}

TEST_CASE("direct access shares: asymmetric spot value") {
    TimeShares sh = shares_direct(MacParams(0.7, 0.3, 0.0, 0.2), 0.002);
    CHECK(sh.succ_f == doctest::Approx(0.59171597633136097).epsilon(1e-12));
    CHECK(sh.succ_n == doctest::Approx(0.25359256128486896).epsilon(1e-12));
    CHECK(sh.tx_f == doctest::Approx(0.73964497041420096).epsilon(1e-12));
    CHECK(sh.tx_n == doctest::Approx(0.31699070160608617).epsilon(1e-12));
    CHECK(sh.idle == doctest::Approx(0.0067624683009298399).epsilon(1e-12));
    CHECK(sh.coll == doctest::Approx(0.14792899408284024).epsilon(1e-12));
}

TEST_CASE("direct access shares: degenerate and boundary contention") {
    // Permanent collisions: every phase is a wasted max-length burst.
    TimeShares all_coll = shares_direct(MacParams(0.7, 0.3, 0.0, 1.0), 0.002);
    CHECK(all_coll.succ_f == 0.0);
    CHECK(all_coll.coll == 1.0);
    // Nobody ever transmits: pure idle slots.
    TimeShares all_idle = shares_direct(MacParams(0.7, 0.3, 0.0, 0.0), 0.002);
    CHECK(all_idle.idle == 1.0);
    CHECK(all_idle.succ_f == 0.0);
    // Zero tau with zero-length idle slots leaves no time at all.
    CHECK_THROWS_AS(shares_direct(MacParams(0.7, 0.3, 0.0, 0.0), 0.0), std::domain_error);
    // Relay time is meaningless without a relay phase.
    CHECK_THROWS_AS(shares_direct(MacParams(0.5, 0.3, 0.2, 0.5), 0.002), std::invalid_argument);
    CHECK_THROWS_AS(shares_direct(MacParams(0.7, 0.3, 0.0, 0.5), -0.1), std::invalid_argument);
}

TEST_CASE("naive decode-forward shares: worked symmetric point") {
    TimeShares sh = shares_naive_df(MacParams(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.5), 0.0);
    CHECK(sh.succ_f == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(sh.succ_n == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(sh.succ_r == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    // Half of all channel time is lost to collisions plus discarded wins.
    CHECK(sh.coll == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(sh.tx_f == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(sh.tx_n == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("naive decode-forward shares: spot value") {
    TimeShares sh = shares_naive_df(MacParams(0.5, 0.3, 0.2, 0.3), 0.002);
    CHECK(sh.succ_f == doctest::Approx(0.25801061529388636).epsilon(1e-12));
    CHECK(sh.succ_n == doctest::Approx(0.15480636917633181).epsilon(1e-12));
    CHECK(sh.succ_r == doctest::Approx(0.10320424611755455).epsilon(1e-12));
    CHECK(sh.tx_f == doctest::Approx(0.73717318655396102).epsilon(1e-12));
    CHECK(sh.tx_n == doctest::Approx(0.36858659327698051).epsilon(1e-12));
    CHECK(sh.idle == doctest::Approx(0.0048161981521525447).epsilon(1e-12));
    CHECK(sh.coll == doctest::Approx(0.47916257126007467).epsilon(1e-12));
}

TEST_CASE("idle-forward shares: worked symmetric point") {
    TimeShares sh = shares_idle_forward(MacParams(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.5), 0.0);
    CHECK(sh.succ_f == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sh.succ_r == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sh.succ_n == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sh.coll == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sh.tx_n == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("idle-forward shares: spot value") {
    TimeShares sh = shares_idle_forward(MacParams(0.4, 0.4, 0.2, 0.25), 0.002);
    CHECK(sh.succ_f == doctest::Approx(0.34924330616996507).epsilon(1e-12));
    CHECK(sh.succ_n == doctest::Approx(0.34924330616996507).epsilon(1e-12));
    CHECK(sh.succ_r == doctest::Approx(0.17462165308498254).epsilon(1e-12));
    CHECK(sh.tx_f == doctest::Approx(0.46565774155995338).epsilon(1e-12));
    CHECK(sh.tx_n == doctest::Approx(0.64027939464493588).epsilon(1e-12));
    CHECK(sh.idle == doctest::Approx(0.010477299185098951).epsilon(1e-12));
    CHECK(sh.coll == doctest::Approx(0.11641443538998834).epsilon(1e-12));
}

TEST_CASE("idle-forward shares: saturated contention locks the relay state out") {
    // At tau=1 the chain leaves the relay-pending state immediately, so the
    // occupancy is all on state 1 and every phase is a collision.
    TimeShares sh = shares_idle_forward(MacParams(1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0), 0.002);
    CHECK(sh.succ_f == 0.0);
    CHECK(sh.succ_r == 0.0);
    CHECK(sh.coll == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sh.tx_f == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("straightforward shares: effective-burst worked point") {
    TimeShares sh = shares_straightforward(MacParams(0.25, 0.5, 0.25, 0.5), 0.0);
    CHECK(sh.succ_f == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(sh.succ_r == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(sh.succ_n == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sh.tx_n == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("straightforward shares: spot values under both collision models") {
    MacParams p(0.3, 0.4, 0.3, 0.35);
    TimeShares lit = shares_straightforward(p, 0.002);
    CHECK(lit.succ_f == doctest::Approx(0.22610942702380363).epsilon(1e-12));
    CHECK(lit.succ_n == doctest::Approx(0.30147923603173821).epsilon(1e-12));
    CHECK(lit.succ_r == doctest::Approx(0.22610942702380363).epsilon(1e-12));
    CHECK(lit.tx_f == doctest::Approx(0.34786065695969792).epsilon(1e-12));
    CHECK(lit.tx_n == doctest::Approx(0.68992363630340092).epsilon(1e-12));
    CHECK(lit.coll == doctest::Approx(0.24350245987178851).epsilon(1e-12));

    // The refined model aborts the relay tail on collision, so less time is
    // wasted and every useful share grows.
    TimeShares ref = shares_straightforward(p, 0.002, CollisionModel::Refined);
    CHECK(ref.succ_f == doctest::Approx(0.24608339793398115).epsilon(1e-12));
    CHECK(ref.coll == doctest::Approx(0.17667526005516596).epsilon(1e-12));
    CHECK(ref.succ_f > lit.succ_f);
    CHECK(ref.coll < lit.coll);
}

TEST_CASE("straightforward with no relay burst degenerates to direct access") {
    ParamGen gen(17);
    for (int i = 0; i < 200; ++i) {
        double t_f = gen.uniform(0.0, 1.0);
        MacParams p(t_f, 1.0 - t_f, 0.0, gen.uniform(0.01, 0.99));
        double sigma = gen.uniform(0.0, 0.01);
        TimeShares a = shares_straightforward(p, sigma);
        TimeShares b = shares_direct(p, sigma);
        CHECK(a.succ_f == b.succ_f);
        CHECK(a.succ_n == b.succ_n);
        CHECK(a.succ_r == 0.0);
        CHECK(a.tx_f == b.tx_f);
        CHECK(a.tx_n == b.tx_n);
        CHECK(a.idle == b.idle);
        CHECK(a.coll == b.coll);
    }
}

TEST_CASE("shares satisfy the normalization identity and transmit-time bounds") {
    ParamGen gen(23);
    for (int i = 0; i < 500; ++i) {
        MacParams p = gen.draw(0.0, 1.0);
        double sigma = gen.uniform(0.0001, 0.01);
        for (MacScheme m : {MacScheme::DirectAccess, MacScheme::NaiveDF,
                            MacScheme::IdleForward, MacScheme::Straightforward}) {
            MacParams q = m == MacScheme::DirectAccess
                              ? MacParams(p.t_f, 1.0 - p.t_f, 0.0, p.tau)
                              : p;
            TimeShares sh = shares_for(m, q, sigma);
            CHECK(std::fabs(share_sum(sh) - 1.0) <= 1e-12);
            CHECK(sh.succ_f <= sh.tx_f);
            CHECK(sh.succ_n <= sh.tx_n);
            CHECK(sh.succ_r <= sh.tx_n);
        }
    }
}

TEST_CASE("relaying puts the naive scheme at a disadvantage against idle-forward") {
    // Same parameters, same relay burst: letting F contend while the relay
    // is pending only wastes time, so F's success share cannot be larger.
    ParamGen gen(29);
    for (int i = 0; i < 200; ++i) {
        MacParams p = gen.draw(0.05, 0.95);
        TimeShares naive = shares_naive_df(p, 0.002);
        TimeShares idle = shares_idle_forward(p, 0.002);
        CHECK(naive.succ_f <= idle.succ_f + 1e-15);
    }
}

TEST_CASE("chain structure: direct access is one state of four phases") {
    ChainSpec c = build_chain(MacScheme::DirectAccess, MacParams(0.6, 0.4, 0.0, 0.5), 0.002);
    REQUIRE(c.states.size() == 1);
    REQUIRE(c.states[0].phases.size() == 4);
    CHECK(c.states[0].f_contends);
    CHECK(c.states[0].n_contends);
    double sum = 0.0;
    for (const PhaseEntry& e : c.states[0].phases) {
        CHECK(e.prob == 0.25);
        CHECK(e.next_state == 0);
        sum += e.prob;
    }
    CHECK(sum == 1.0);
}

TEST_CASE("chain structure: two-state schemes") {
    MacParams p(0.5, 0.3, 0.2, 0.4);
    ChainSpec naive = build_chain(MacScheme::NaiveDF, p, 0.002);
    REQUIRE(naive.states.size() == 2);
    CHECK(naive.p12 == naive.p21);
    CHECK(naive.states[1].f_contends);
    auto [n1, n2] = stationary(naive);
    CHECK(n1 == 0.5);
    CHECK(n2 == 0.5);

    ChainSpec idle = build_chain(MacScheme::IdleForward, p, 0.002);
    REQUIRE(idle.states.size() == 2);
    CHECK_FALSE(idle.states[1].f_contends);
    CHECK(idle.states[1].n_contends);
    REQUIRE(idle.states[1].phases.size() == 2);
    CHECK(idle.states[1].phases[0].prob == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(idle.states[1].phases[1].prob == doctest::Approx(0.6).epsilon(1e-15));
    auto [i1, i2] = stationary(idle);
    CHECK(i1 == doctest::Approx(1.0 / 1.6).epsilon(1e-15));
    CHECK(i2 == doctest::Approx(0.6 / 1.6).epsilon(1e-15));

    ChainSpec st = build_chain(MacScheme::Straightforward, p, 0.002);
    REQUIRE(st.states.size() == 2);
    CHECK_FALSE(st.states[1].f_contends);
    CHECK_FALSE(st.states[1].n_contends);
    REQUIRE(st.states[1].phases.size() == 1);
    CHECK(st.states[1].phases[0].trigger == PhaseTrigger::Always);
    CHECK(st.p21 == 1.0);

    // Every state's phase probabilities cover the whole outcome space.
    for (const ChainSpec* ch : {&naive, &idle, &st})
        for (const StateSpec& s : ch->states) {
            double sum = 0.0;
            for (const PhaseEntry& e : s.phases) sum += e.prob;
            CHECK(std::fabs(sum - 1.0) <= 1e-15);
        }
}

TEST_CASE("chain integration reproduces the closed-form shares") {
    ParamGen gen(31);
    for (int i = 0; i < 200; ++i) {
        MacParams p = gen.draw(0.02, 0.98);
        double sigma = gen.uniform(0.0001, 0.01);
        MacParams pd(p.t_f, 1.0 - p.t_f, 0.0, p.tau);
        check_close(integrate_chain(build_chain(MacScheme::DirectAccess, pd, sigma)),
                    shares_direct(pd, sigma), 1e-14);
        check_close(integrate_chain(build_chain(MacScheme::NaiveDF, p, sigma)),
                    shares_naive_df(p, sigma), 1e-14);
        check_close(integrate_chain(build_chain(MacScheme::IdleForward, p, sigma)),
                    shares_idle_forward(p, sigma), 1e-14);
        check_close(integrate_chain(build_chain(MacScheme::Straightforward, p, sigma)),
                    shares_straightforward(p, sigma), 1e-14);
        check_close(
            integrate_chain(build_chain(MacScheme::Straightforward, p, sigma, CollisionModel::Refined)),
            shares_straightforward(p, sigma, CollisionModel::Refined), 1e-14);
    }
}
