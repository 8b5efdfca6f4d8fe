#include <doctest.h>

#include "qrep/chain_trace.hpp"
#include "test_support.hpp"

using namespace qrep;

namespace {

RepeaterConfig table2_config() {
    RepeaterConfig cfg;
    cfg.protocol = Protocol::kDeutsch;
    cfg.link = LinkParams{600.0, 2, 0.17, 2e5};
    cfg.rounds = DistillationVector{{0, 3, 1}};
    cfg.noise = NoiseParams{0.96, 1.0};
    cfg.initial_fidelity = 0.9;
    return cfg;
}

}  // namespace

TEST_CASE("trivial chain: no swaps, no distillation") {
    RepeaterConfig cfg;
    cfg.link = LinkParams{600.0, 0, 0.17, 2e5};
    cfg.rounds = DistillationVector{{0}};
    cfg.initial_fidelity = 0.83;
    const auto trace = chain_trace(cfg);
    CHECK(trace.levels() == 0);
    CHECK(trace.final_state == depolarized(0.83));
    CHECK(trace.distill_success[0].empty());
    CHECK(trace.p0 == doctest::Approx(std::pow(10.0, -0.17 * 600.0 / 10.0)));
}

TEST_CASE("single ideal swap degrades depolarized(0.9) to 0.81333") {
    RepeaterConfig cfg;
    cfg.link = LinkParams{600.0, 1, 0.17, 2e5};
    cfg.rounds = DistillationVector{{0, 0}};
    cfg.initial_fidelity = 0.9;
    const auto trace = chain_trace(cfg);
    CHECK(fidelity(trace.final_state) == doctest::Approx(0.81 + 0.01 / 3.0).epsilon(1e-12));
    CHECK(trace.swap_success[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chain trace regression: N=2, k=(0,3,1), F0=0.9, p_gate=0.96") {
    const auto trace = chain_trace(table2_config());
    // Frozen from the first verified run; reproduces the published optimum's
    // configuration column.
    CHECK(trace.p0 == doctest::Approx(0.0028183829312644522).epsilon(1e-14));
    CHECK(trace.entry_state[1].a == doctest::Approx(0.79080000000000028).epsilon(1e-12));
    REQUIRE(trace.distill_success[1].size() == 3);
    CHECK(trace.distill_success[1][0] == doctest::Approx(0.73958703308800122).epsilon(1e-12));
    CHECK(trace.distill_success[1][1] == doctest::Approx(0.6934285179620292).epsilon(1e-12));
    CHECK(trace.distill_success[1][2] == doctest::Approx(0.7758412640066279).epsilon(1e-12));
    CHECK(trace.entry_state[2].a == doctest::Approx(0.78714728468087192).epsilon(1e-12));
    REQUIRE(trace.distill_success[2].size() == 1);
    CHECK(trace.distill_success[2][0] == doctest::Approx(0.70553548622101403).epsilon(1e-12));
    CHECK(trace.final_state.a == doctest::Approx(0.82609776893248221).epsilon(1e-12));
    CHECK(trace.final_state.b == doctest::Approx(0.11009732871749253).epsilon(1e-12));
    CHECK(trace.final_state.c == doctest::Approx(0.035150271587020825).epsilon(1e-12));
    CHECK(trace.final_state.d == doctest::Approx(0.028654630763004407).epsilon(1e-12));
}

TEST_CASE("detector efficiency scales probabilities, not states") {
    RepeaterConfig cfg = table2_config();
    const auto clean = chain_trace(cfg);
    cfg.noise.eta_detector = 0.8;
    const auto scaled = chain_trace(cfg);
    const double eta_sq = 0.64;
    CHECK(scaled.final_state == clean.final_state);
    for (int n = 0; n <= 2; ++n) {
        if (n > 0) {
            CHECK(scaled.swap_success[n] ==
                  doctest::Approx(eta_sq * clean.swap_success[n]).epsilon(1e-14));
        }
        for (size_t i = 0; i < clean.distill_success[n].size(); ++i) {
            CHECK(scaled.distill_success[n][i] ==
                  doctest::Approx(eta_sq * clean.distill_success[n][i]).epsilon(1e-14));
        }
    }
    CHECK(scaled.p0 == clean.p0);  // detector efficiency never touches P0
}

TEST_CASE("pumping uses the level entry state as its fresh pair") {
    RepeaterConfig cfg;
    cfg.link = LinkParams{600.0, 1, 0.17, 2e5};
    cfg.rounds = DistillationVector{{0, 2}};
    cfg.initial_fidelity = 0.85;
    cfg.noise = NoiseParams{0.98, 1.0};

    cfg.protocol = Protocol::kDuer;
    const auto pumped = chain_trace(cfg);
    cfg.protocol = Protocol::kDeutsch;
    const auto recurred = chain_trace(cfg);

    // Round 1 coincides (two fresh copies); round 2 differs.
    CHECK(pumped.round_state[1][0] == recurred.round_state[1][0]);
    CHECK(pumped.round_state[1][1].a != recurred.round_state[1][1].a);

    const ChainEvaluator ev(cfg.noise);
    const auto expected_round2 = ev.distill(pumped.round_state[1][0], pumped.entry_state[1]);
    CHECK(pumped.final_state.a ==
          doctest::Approx(expected_round2.state.a).epsilon(1e-13));
}

TEST_CASE("config validation") {
    RepeaterConfig cfg;
    cfg.link = LinkParams{600.0, 2, 0.17, 2e5};
    cfg.rounds = DistillationVector{{0, 1}};  // wrong length
    CHECK_THROWS_AS(chain_trace(cfg), std::invalid_argument);

    cfg.rounds = DistillationVector{{0, 1, 0}};
    cfg.protocol = Protocol::kNone;  // none demands an all-zero vector
    CHECK_THROWS_AS(chain_trace(cfg), std::invalid_argument);

    cfg.protocol = Protocol::kDeutsch;
    cfg.initial_fidelity = 1.5;
    CHECK_THROWS_AS(chain_trace(cfg), std::invalid_argument);
}

TEST_CASE("trace shape bookkeeping") {
    test::RandomSource rng(31);
    const auto synthetic = rng.trace(4, 3, 0.2);
    CHECK(synthetic.rounds.levels() == synthetic.levels);
    CHECK_NOTHROW(validate_against(synthetic.trace, synthetic.rounds, synthetic.levels));
    CHECK(synthetic.trace.rounds_shape() == synthetic.rounds);
    CHECK(synthetic.trace.min_probability() >= 0.2);
    CHECK(synthetic.trace.feasible());

    DistillationVector wrong = synthetic.rounds;
    wrong.rounds.push_back(0);
    CHECK_THROWS_AS(validate_against(synthetic.trace, wrong, synthetic.levels + 1),
                    std::invalid_argument);
}
