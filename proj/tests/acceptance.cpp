// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "jetlaw/calculus.hpp"
#include "jetlaw/conservation.hpp"
#include "jetlaw/frame_transform.hpp"
#include "jetlaw/numeric_oracle.hpp"
#include "support.hpp"

using namespace jetlaw;

namespace {

const Frame L = Frame::lightcone();
const Frame S = Frame::spacetime();

Expr P(const char* text) { return parse(text); }

// Collects failures of one criterion; the first few are reported.
class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        if (failures_.size() < 3) failures_.push_back(what);
        ++failed_;
    }
    bool ok() const { return failed_ == 0 && checks_ > 0; }
    std::string summary() const {
        std::ostringstream os;
        os << checks_ - failed_ << "/" << checks_ << " checks";
        for (const auto& f : failures_) os << "; " << f;
        return os.str();
    }

private:
    int checks_ = 0;
    int failed_ = 0;
    std::vector<std::string> failures_;
};

template <class F>
void guarded(Tally& t, const std::string& label, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        t.check(false, label + ": " + e.what());
    }
}

struct Law {
    const char* name;
    const char* f;
    const char* g;
    const char* mu;
    const char* t;
    const char* x;
    bool exact;
};

const std::vector<Law> kLaws = {
    {"momentum", "-w[0,1]", "-w[1,0]", "1", "u[1,0]", "-u[0,1]", true},
    {"center of mass", "eta*w[0,1]", "-xi*w[1,0]", "t", "t*u[1,0] - u", "-t*u[0,1]", false},
    {"angular momentum", "-eta*w[0,1]", "-xi*w[1,0]", "x", "x*u[1,0]", "-x*u[0,1] + u", false},
    {"energy", "w[0,1]^2", "-w[1,0]^2", "u[1,0]", "1/2*u[1,0]^2 + 1/2*u[0,1]^2", "-u[1,0]*u[0,1]", true},
};

Tally physical_laws() {
    Tally t;
    for (const Law& law : kLaws) {
        guarded(t, law.name, [&] {
            const CanonicalCurrent pair(P(law.f), P(law.g));
            const Characteristic mu = characteristic_to_spacetime(characteristic_canonical(pair));
            t.check(print(mu.multiplier) == law.mu, std::string(law.name) + " mu prints " + print(mu.multiplier));
            const Current pulled = current_to_spacetime(pair.current());
            const Expr dt = pulled.first - P(law.t), dx = pulled.second - P(law.x);
            if (law.exact) {
                t.check(dt.is_zero_literal() && dx.is_zero_literal(), std::string(law.name) + " current differs");
            } else {
                t.check(is_trivial(current_to_lightcone({S, dt, dx})),
                        std::string(law.name) + " difference is not trivial");
            }
        });
    }
    return t;
}

Tally exotic_example() {
    Tally t;
    guarded(t, "exotic", [&] {
        const CanonicalCurrent exotic(P("exp(2*w[0,2])"), Expr(0));
        const Characteristic lambda = characteristic_canonical(exotic);
        t.check(lambda.multiplier == P("-4*w[0,3]*exp(2*w[0,2])"), "lambda " + print(lambda.multiplier));
        const Current pulled = current_to_spacetime(exotic.current());
        t.check(pulled.first == P("exp(u[0,2] - u[1,1])"), "T " + print(pulled.first));
        t.check(pulled.second == P("exp(u[0,2] - u[1,1])"), "X " + print(pulled.second));
        const Characteristic mu = characteristic_to_spacetime(lambda);
        t.check(mu.multiplier == P("(u[0,3] - u[1,2])*exp(u[0,2] - u[1,1])"), "mu " + print(mu.multiplier));
    });
    return t;
}

Tally lagrangians() {
    Tally t;
    guarded(t, "lagrangians", [&] {
        t.check(euler_operator(P("-1/2*w[1,0]*w[0,1]"), L) == P("w[1,1]"), "light-cone Lagrangian");
        t.check(euler_operator(P("-1/2*(u[1,0]^2 - u[0,1]^2)"), S) == P("u[2,0] - u[0,2]"), "space-time Lagrangian");
    });
    return t;
}

Tally characteristic_exactness() {
    Tally t;
    support::Gen gen(1001);
    for (int k = 0; k < 240; ++k) {
        guarded(t, "case " + std::to_string(k), [&] {
            const bool decorate = k % 3 == 0;
            const CanonicalCurrent c(gen.eta_side(3, decorate), gen.xi_side(3, decorate && k % 2 == 0));
            const CharacteristicIdentity id = characteristic_with_remainder(c);
            const Expr gap = divergence(c.current()) - id.characteristic.multiplier * L.equation() -
                             divergence(id.remainder);
            const std::string label = "(" + print(c.f()) + ", " + print(c.g()) + ")";
            t.check(is_zero(gap).zero, "identity fails for " + label);
            t.check(reduce_to_solutions(id.remainder.first, L).is_zero_literal() &&
                        reduce_to_solutions(id.remainder.second, L).is_zero_literal(),
                    "remainder survives on solutions for " + label);
            t.check(is_characteristic(id.characteristic), "Euler criterion fails for " + label);
        });
    }
    return t;
}

// H(xi, eta, w, w[1,0], w[0,1], w[2,0], w[0,2]) of degree <= 2, sometimes
// times exp(c*w).
Expr random_potential(support::Gen& gen) {
    const std::vector<Expr> atoms{P("xi"), P("eta"), P("w"), P("w[1,0]"), P("w[0,1]"), P("w[2,0]"), P("w[0,2]")};
    Expr h = gen.polynomial(atoms, 2, 3);
    if (gen.chance(0.25)) h += gen.monomial(atoms, 1) * exp(Expr(Rational(gen.integer(1, 2))) * P("w"));
    return h;
}

Tally normalization() {
    Tally t;
    support::Gen gen(2002);
    const std::vector<Expr> any_jets{P("w"), P("w[1,0]"), P("w[0,1]"), P("w[2,0]"), P("w[0,2]"), P("xi")};
    for (int k = 0; k < 120; ++k) {
        guarded(t, "case " + std::to_string(k), [&] {
            const CanonicalCurrent base(gen.eta_side(3, k % 4 == 0), gen.xi_side(3, k % 5 == 0));
            Current perturbed = support::operator+(base.current(),
                                                   support::trivial_current(random_potential(gen), gen.rational()));
            // Terms with mixed-derivative factors vanish on solutions.
            perturbed.first += gen.monomial(any_jets, 2) * P("w[1,1]");
            perturbed.second += gen.monomial(any_jets, 1) * P("w[2,1]");
            const CanonicalCurrent n = normalize_current(perturbed);
            const Expr difference = characteristic_canonical(n).multiplier - characteristic_canonical(base).multiplier;
            t.check(is_zero(difference).zero, "characteristic changed for base (" + print(base.f()) + ", " +
                                                  print(base.g()) + ")");
        });
    }
    return t;
}

Tally trivial_currents() {
    Tally t;
    support::Gen gen(3003);
    const Expr w01 = P("w[0,1]"), w10 = P("w[1,0]");
    for (int k = 0; k < 60; ++k) {
        guarded(t, "case " + std::to_string(k), [&] {
            CanonicalCurrent c(Expr(0), Expr(0));
            Rational constant = gen.rational();
            if (k % 2 == 0) {
                // Constructed directly in the trivial form.
                const Expr f_tilde = gen.eta_side(3, false), g_tilde = gen.xi_side(3, false);
                c = CanonicalCurrent(restricted_derivative(f_tilde, L, Direction::Second) + Expr(constant) * w01,
                                     restricted_derivative(g_tilde, L, Direction::First) - Expr(constant) * w10);
                t.check(characteristic_canonical(c).multiplier.is_zero_literal(), "constructed current has nonzero lambda");
            } else {
                // Polynomial total divergence brought to canonical form.
                const std::vector<Expr> atoms{P("xi"), P("eta"), P("w"), P("w[1,0]"), P("w[0,1]"), P("w[0,2]")};
                c = normalize_current(support::trivial_current(gen.polynomial(atoms, 3, 3), constant));
                t.check(is_zero(characteristic_canonical(c).multiplier).zero, "normalized current has nonzero lambda");
            }
            const TrivialWitness w = trivial_witness(c);
            // A potential involving w shifts the constant (C*w[0,1] = D_eta(C*w)),
            // so it is only predictable for the directly constructed currents.
            if (k % 2 == 0) t.check(w.constant == constant, "constant " + w.constant.str() + " vs " + constant.str());
            t.check(restricted_derivative(w.f_tilde, L, Direction::Second) + Expr(w.constant) * w01 == c.f(),
                    "F identity fails");
            t.check(restricted_derivative(w.g_tilde, L, Direction::First) - Expr(w.constant) * w10 == c.g(),
                    "G identity fails");
        });
    }
    return t;
}

Tally euler_annihilation() {
    Tally t;
    support::Gen gen(4004);
    for (const Frame& fr : {L, S}) {
        for (int k = 0; k < 220; ++k) {
            guarded(t, std::string(fr.name()) + " case " + std::to_string(k), [&] {
                const Expr a = gen.differential_function(fr, 3, 3, true);
                const Expr b = gen.differential_function(fr, 3, 3, true);
                const Expr div = total_derivative(a, fr, Direction::First) + total_derivative(b, fr, Direction::Second);
                t.check(is_zero(euler_operator(div, fr)).zero, "E(D1 A + D2 B) != 0 for A = " + print(a));
            });
        }
    }
    return t;
}

Tally scaling_negative() {
    Tally t;
    guarded(t, "scaling", [&] {
        t.check(!is_characteristic({L, P("w")}), "w passes the Euler criterion");
        t.check(euler_operator(P("w*w[1,1]"), L) == P("2*w[1,1]"), "E(w*w[1,1]) != 2*w[1,1]");
    });
    return t;
}

Tally numeric_oracle(std::string& note) {
    Tally t;
    const Rectangle rect{0.0, 0.7, -1.0, -0.1, 128};
    const std::vector<std::pair<const char*, const char*>> currents = {
        {"-w[0,1]", "-w[1,0]"}, {"eta*w[0,1]", "-xi*w[1,0]"}, {"-eta*w[0,1]", "-xi*w[1,0]"},
        {"w[0,1]^2", "-w[1,0]^2"}, {"exp(2*w[0,2])", "0"}};
    const std::vector<const char*> solutions = {"sin:1,0;poly:0,0,1", "poly:0,0,0,1;exp:1,0", "0;cos:1,0"};
    double worst_residual = 0.0, min_ratio = 1e300, max_ratio = 0.0;
    int exact = 0;
    for (const char* spec : solutions) {
        const Solution s = Solution::parse(spec);
        for (const auto& [f, g] : currents) {
            const std::string label = std::string("(") + f + ", " + g + ") on " + spec;
            guarded(t, label, [&] {
                const Current c{L, P(f), P(g)};
                t.check(verify_current(c), label + " not conserved symbolically");
                const auto r = check_conservation(c, s, rect);
                worst_residual = std::max(worst_residual, r.residual);
                t.check(r.residual < 1e-8, label + " residual " + std::to_string(r.residual));
                // Simpson is exact when the boundary integrands are cubic or
                // constant; then there is no error to converge.
                const double coarse = check_conservation(c, s, {rect.t0, rect.t1, rect.x0, rect.x1, 64}).residual;
                if (r.residual < 1e-14 && coarse < 1e-14) {
                    ++exact;
                    return;
                }
                min_ratio = std::min(min_ratio, r.ratio);
                max_ratio = std::max(max_ratio, r.ratio);
                t.check(r.ratio >= 12.0 && r.ratio <= 20.0, label + " ratio " + std::to_string(r.ratio));
            });
        }
    }
    // The counterexample's divergence on solutions is 2 f''(x + t); it only
    // registers where the right-moving profile is curved.
    double min_counter = 1e300;
    for (const char* spec : {"sin:1,0;poly:0,0,1", "poly:0,0,0,1;exp:1,0"}) {
        const Solution s = Solution::parse(spec);
        for (int n : {16, 32, 64, 128, 256, 512}) {
            const double r = check_conservation({L, P("w[1,0]"), Expr(0)}, s, {rect.t0, rect.t1, rect.x0, rect.x1, n}).residual;
            min_counter = std::min(min_counter, r);
            t.check(r > 1e-3, std::string("counterexample residual ") + std::to_string(r) + " on " + spec);
        }
    }
    std::ostringstream os;
    os << "max residual " << worst_residual << ", ratio in [" << min_ratio << ", " << max_ratio << "], " << exact
       << " exact-quadrature case(s), min counterexample residual " << min_counter;
    note = os.str();
    return t;
}

Tally round_trips() {
    Tally t;
    for (const Law& law : kLaws) {
        guarded(t, law.name, [&] {
            const Current c{L, P(law.f), P(law.g)};
            const Current back = current_to_lightcone(current_to_spacetime(c));
            t.check(is_trivial({L, back.first - c.first, back.second - c.second}), std::string(law.name) + " L->S->L");
            const Current textbook{S, P(law.t), P(law.x)};
            const Current again = current_to_spacetime(current_to_lightcone(textbook));
            t.check(is_trivial(current_to_lightcone({S, again.first - textbook.first, again.second - textbook.second})),
                    std::string(law.name) + " S->L->S");
            const Characteristic lambda = characteristic_canonical(CanonicalCurrent(c));
            t.check(characteristic_to_lightcone(characteristic_to_spacetime(lambda)).multiplier == lambda.multiplier,
                    std::string(law.name) + " characteristic round trip");
        });
    }
    guarded(t, "exotic", [&] {
        const Current c{L, P("exp(2*w[0,2])"), Expr(0)};
        const Current back = current_to_lightcone(current_to_spacetime(c));
        t.check(is_trivial({L, back.first - c.first, back.second - c.second}), "exotic L->S->L");
    });
    support::Gen gen(5005);
    for (int k = 0; k < 500; ++k) {
        guarded(t, "round trip " + std::to_string(k), [&] {
            const Expr e = gen.expression(4);
            const std::string text = print(e);
            const Expr back = parse(text);
            t.check(back == e && print(back) == text, "parse/print round trip of " + text);
        });
    }
    return t;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Tally(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "four physical conservation laws", [](std::string&) { return physical_laws(); }},
        {2, "exotic exponential law", [](std::string&) { return exotic_example(); }},
        {3, "Lagrangians", [](std::string&) { return lagrangians(); }},
        {4, "characteristic identity on random canonical currents", [](std::string&) { return characteristic_exactness(); }},
        {5, "normalization preserves characteristics", [](std::string&) { return normalization(); }},
        {6, "trivial currents and witnesses", [](std::string&) { return trivial_currents(); }},
        {7, "Euler operator annihilates divergences", [](std::string&) { return euler_annihilation(); }},
        {8, "scaling multiplier is not a characteristic", [](std::string&) { return scaling_negative(); }},
        {9, "numeric oracle", numeric_oracle},
        {10, "frame round trips and parse/print round trips", [](std::string&) { return round_trips(); }},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string note;
        const Tally t = c.run(note);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2d  %-55s %s (%.2fs)%s%s\n", t.ok() ? "PASS" : "FAIL", c.id, c.title, t.summary().c_str(),
                    seconds, note.empty() ? "" : "; ", note.c_str());
        failed += t.ok() ? 0 : 1;
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
