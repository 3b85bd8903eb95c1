#include <doctest.h>

#include <thread>

#include "jetlaw/errors.hpp"
#include "jetlaw/frame_transform.hpp"
#include "support.hpp"

using namespace jetlaw;

namespace {

Expr P(const char* text) { return parse(text); }

const Frame L = Frame::lightcone();
const Frame S = Frame::spacetime();

std::string mu_of_pair(const char* f, const char* g) {
    return print(characteristic_to_spacetime(characteristic_canonical(CanonicalCurrent(P(f), P(g)))).multiplier);
}

}  // namespace

TEST_CASE("jet images") {
    auto& table = CheckVariableMap::instance();
    for (int k = 1; k <= 5; ++k) {
        const std::string uk = "u[0," + std::to_string(k) + "]", u1 = "u[1," + std::to_string(k - 1) + "]";
        CHECK(table.spacetime_image(k, 0) == parse("1/2*(" + uk + " + " + u1 + ")"));
        CHECK(table.spacetime_image(0, k) == parse("1/2*(" + uk + " - " + u1 + ")"));
    }
    CHECK(table.lightcone_image(1, 0) == P("w[1,0] - w[0,1]"));
    CHECK(table.lightcone_image(0, 2) == P("w[2,0] + w[0,2]"));
    CHECK_THROWS_AS(table.spacetime_image(1, 1), PreconditionError);
    CHECK_THROWS_AS(table.lightcone_image(2, 0), PreconditionError);
    for (int k = 0; k <= 4; ++k) {
        CHECK(table.to_lightcone(table.spacetime_image(k, 0)) == L.jet_expr(k, 0));
        CHECK(table.to_lightcone(table.spacetime_image(0, k)) == L.jet_expr(0, k));
    }
}

TEST_CASE("current_to_spacetime") {
    const Current momentum = current_to_spacetime({L, P("-w[0,1]"), P("-w[1,0]")});
    CHECK(momentum.frame == S);
    CHECK(momentum.first == P("u[1,0]"));
    CHECK(momentum.second == P("-u[0,1]"));
    const Current exotic = current_to_spacetime({L, P("exp(2*w[0,2])"), Expr(0)});
    CHECK(exotic.first == P("exp(u[0,2] - u[1,1])"));
    CHECK(exotic.second == P("exp(u[0,2] - u[1,1])"));
    const Current energy = current_to_spacetime({L, P("w[0,1]^2"), P("-w[1,0]^2")});
    CHECK(energy.first == P("1/2*u[1,0]^2 + 1/2*u[0,1]^2"));
    CHECK(energy.second == P("-u[1,0]*u[0,1]"));
    CHECK_THROWS_AS(current_to_spacetime({S, Expr(0), Expr(0)}), FrameMismatch);
}

TEST_CASE("current_to_lightcone") {
    const Current momentum = current_to_lightcone({S, P("u[1,0]"), P("-u[0,1]")});
    CHECK(momentum.first == P("-w[0,1]"));
    CHECK(momentum.second == P("-w[1,0]"));
    const Current center = current_to_lightcone({S, P("t*u[1,0] - u"), P("-t*u[0,1]")});
    CHECK(characteristic_to_spacetime(characteristic_canonical(normalize_current(center))).multiplier == P("t"));
    const Current zero = current_to_lightcone({S, Expr(0), Expr(0)});
    CHECK(zero.first.is_zero_literal());
    CHECK(zero.second.is_zero_literal());
    CHECK_THROWS_AS(current_to_lightcone({L, Expr(0), Expr(0)}), FrameMismatch);
}

TEST_CASE("characteristic maps") {
    CHECK(characteristic_to_spacetime({L, P("-4*w[0,3]*exp(2*w[0,2])")}).multiplier ==
          P("(u[0,3] - u[1,2])*exp(u[0,2] - u[1,1])"));
    CHECK(characteristic_to_spacetime({L, Expr(-2)}).multiplier == Expr(1));
    CHECK(print(characteristic_to_spacetime({L, P("eta - xi")}).multiplier) == "t");
    CHECK(characteristic_to_lightcone({S, P("u[1,0]")}).multiplier == P("-2*(w[1,0] - w[0,1])"));
    CHECK(characteristic_to_lightcone({S, Expr(1)}).multiplier == Expr(-2));
    CHECK(characteristic_to_lightcone({S, P("x")}).multiplier == P("-(xi + eta)"));
    CHECK_THROWS_AS(characteristic_to_lightcone({L, Expr(1)}), FrameMismatch);
}

TEST_CASE("the four physical laws") {
    CHECK(mu_of_pair("-w[0,1]", "-w[1,0]") == "1");
    CHECK(mu_of_pair("eta*w[0,1]", "-xi*w[1,0]") == "t");
    CHECK(mu_of_pair("-eta*w[0,1]", "-xi*w[1,0]") == "x");
    CHECK(mu_of_pair("w[0,1]^2", "-w[1,0]^2") == "u[1,0]");

    // Center of mass and angular momentum match the textbook currents only
    // up to trivial currents.
    const std::vector<std::array<const char*, 4>> cases = {
        {"eta*w[0,1]", "-xi*w[1,0]", "t*u[1,0] - u", "-t*u[0,1]"},
        {"-eta*w[0,1]", "-xi*w[1,0]", "x*u[1,0]", "-x*u[0,1] + u"}};
    for (const auto& [f, g, t, x] : cases) {
        const Current pulled = current_to_spacetime({L, P(f), P(g)});
        const Current diff{S, pulled.first - P(t), pulled.second - P(x)};
        CHECK_FALSE(diff.first.is_zero_literal());
        CHECK(is_trivial(current_to_lightcone(diff)));
    }
}

TEST_CASE("round trips") {
    support::Gen gen(41);
    for (int k = 0; k < 40; ++k) {
        const Current c{L, gen.eta_side(3, k % 2 == 0), gen.xi_side(3, k % 3 == 0)};
        const Current back = current_to_lightcone(current_to_spacetime(c));
        CHECK(is_zero(back.first - c.first).zero);
        CHECK(is_zero(back.second - c.second).zero);

        const Expr lambda = reduce_to_solutions(gen.differential_function(L, 3, 2, true), L);
        const Characteristic there = characteristic_to_spacetime({L, lambda});
        CHECK(is_zero(characteristic_to_lightcone(there).multiplier - lambda).zero);
    }
}

TEST_CASE("transforms are natural with respect to characteristics") {
    // Space-time route and light-cone route give the same multiplier.
    support::Gen gen(43);
    for (int k = 0; k < 25; ++k) {
        const CanonicalCurrent c(gen.eta_side(3, k % 3 == 0), gen.xi_side(3, k % 2 == 0));
        const Expr via_lightcone = characteristic_to_spacetime(characteristic_canonical(c)).multiplier;
        const Expr via_spacetime =
            spacetime_characteristic_with_remainder(current_to_spacetime(c.current())).characteristic.multiplier;
        CHECK(is_zero(via_lightcone - via_spacetime).zero);
    }
}

TEST_CASE("jet image table is safe for concurrent use") {
    std::vector<std::thread> threads;
    std::vector<Expr> results(4);
    for (int k = 0; k < 4; ++k)
        threads.emplace_back([&, k] { results[static_cast<std::size_t>(k)] = CheckVariableMap::instance().spacetime_image(0, 7 + k % 2); });
    for (auto& t : threads) t.join();
    CHECK(results[0] == results[2]);
    CHECK(results[1] == results[3]);
    CHECK(results[0] == P("1/2*(u[0,7] - u[1,6])"));
}
