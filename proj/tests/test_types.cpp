#include <stdexcept>

#include "doctest.h"
#include "relay/types.hpp"

using namespace relay;

TEST_CASE("aoi cost sums destination ages over both sources") {
    CHECK(aoi_cost(State{}) == 0);
    CHECK(aoi_cost(State{{1, 2, 0}, {1, 4, 4}}) == 12);
    CHECK(aoi_cost(State{{7, 7, 7}, {7, 7, 7}}) == 42);
}

TEST_CASE("transmission cost counts non-idle links") {
    CHECK(transmission_cost(Action{0, 0}) == 0);
    CHECK(transmission_cost(Action{1, 0}) == 1);
    CHECK(transmission_cost(Action{0, 2}) == 1);
    CHECK(transmission_cost(Action{2, 1}) == 2);
}

TEST_CASE("lagrangian cost") {
    const State s{{1, 2, 0}, {1, 4, 4}};
    CHECK(lagrangian_cost(s, Action{0, 0}, 5.0) == 12.0);
    CHECK(lagrangian_cost(s, Action{2, 1}, 5.0) == 22.0);
    CHECK(lagrangian_cost(State{}, Action{1, 2}, 0.0) == 0.0);
    CHECK_THROWS_AS(lagrangian_cost(s, Action{0, 0}, -1.0), std::invalid_argument);
}

TEST_CASE("action codes are lexicographic with idle first") {
    CHECK(Action{0, 0}.code() == 0);
    CHECK(Action{2, 2}.code() == 8);
    int prev = -1;
    for (int alpha = 0; alpha <= 2; ++alpha) {
        for (int beta = 0; beta <= 2; ++beta) {
            const Action a{alpha, beta};
            CHECK(a.code() == prev + 1);
            CHECK(Action::from_code(a.code()) == a);
            prev = a.code();
        }
    }
    CHECK_THROWS_AS(Action::from_code(9), std::out_of_range);
    CHECK_THROWS_AS(Action::from_code(-1), std::out_of_range);
}

TEST_CASE("parameter validation") {
    SystemParams params;
    CHECK_NOTHROW(params.validate());
    params.mu1 = 1.5;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.mu1 = 0.6;
    params.gamma_max = 0.0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.gamma_max = 2.0;
    CHECK_NOTHROW(params.validate());
    CHECK_THROWS_AS(TruncationLevel{0}, std::invalid_argument);
}

TEST_CASE("state enumeration and index bijection") {
    CHECK(enumerate_states(TruncationLevel{1}).size() == 64);
    CHECK(TruncationLevel{7}.m6() == 262144);

    const TruncationLevel n7{7};
    CHECK(enumerate_states(TruncationLevel{2}).front() == State{});
    CHECK(state_index(State{}, n7) == 0);
    CHECK(state_index(State{{7, 7, 7}, {7, 7, 7}}, n7) == 262143);

    const TruncationLevel n2{2};
    const auto states = enumerate_states(n2);
    REQUIRE(states.size() == 729);
    for (std::int64_t i = 0; i < 729; ++i) {
        CHECK(state_index(states[static_cast<std::size_t>(i)], n2) == i);
        CHECK(index_state(i, n2) == states[static_cast<std::size_t>(i)]);
    }

    CHECK_THROWS_AS(state_index(State{{3, 0, 0}, {0, 0, 0}}, n2), std::out_of_range);
    CHECK_THROWS_AS(index_state(729, n2), std::out_of_range);
    CHECK_THROWS_AS(index_state(-1, n2), std::out_of_range);
}
