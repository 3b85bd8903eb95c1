#include "jetlaw/golden.hpp"

#include <exception>
#include <sstream>

#include "jetlaw/conservation.hpp"
#include "jetlaw/errors.hpp"
#include "jetlaw/frame_transform.hpp"
#include "jetlaw/numeric_oracle.hpp"

namespace jetlaw {

namespace {

const Frame kLightcone = Frame::lightcone();
const Frame kSpacetime = Frame::spacetime();

std::string mismatch(const std::string& what, const Expr& got, const std::string& want) {
    return what + ": got " + print(got) + ", expected " + want;
}

std::string require_printed(const std::string& what, const Expr& got, const std::string& want) {
    return print(got) == want ? std::string{} : mismatch(what, got, want);
}

struct PhysicalLaw {
    const char* f;
    const char* g;
    const char* mu;
    const char* t;
    const char* x;
    // Whether the pulled-back current equals the textbook one exactly or
    // only up to a trivial current.
    bool exact;
};

std::string check_physical_law(const PhysicalLaw& law, const Config& cfg) {
    const CanonicalCurrent pair(parse(law.f), parse(law.g));
    if (!verify_current(pair.current(), cfg.zero_test())) return "light-cone pair is not conserved";

    const Characteristic mu = characteristic_to_spacetime(characteristic_canonical(pair));
    if (auto err = require_printed("mu", mu.multiplier, law.mu); !err.empty()) return err;
    if (!is_characteristic(mu, cfg.zero_test())) return "mu fails the Euler criterion";

    const Current pulled = current_to_spacetime(pair.current());
    const Current textbook{kSpacetime, parse(law.t), parse(law.x)};
    if (!verify_current(textbook, cfg.zero_test())) return "textbook current is not conserved";
    if (law.exact) {
        if (!(pulled.first == textbook.first)) return mismatch("T", pulled.first, law.t);
        if (!(pulled.second == textbook.second)) return mismatch("X", pulled.second, law.x);
        return {};
    }
    const Current difference{kSpacetime, pulled.first - textbook.first, pulled.second - textbook.second};
    if (!is_trivial(current_to_lightcone(difference), cfg.reference_point(), cfg.zero_test()))
        return "difference from the textbook current is not trivial";
    return {};
}

std::string check_exotic(const Config& cfg) {
    const CanonicalCurrent exotic(parse("exp(2*w[0,2])"), Expr(0));
    if (!verify_current(exotic.current(), cfg.zero_test())) return "current is not conserved";
    const Characteristic lambda = characteristic_canonical(exotic);
    if (!(lambda.multiplier == parse("-4*w[0,3]*exp(2*w[0,2])")))
        return mismatch("lambda", lambda.multiplier, "-4*w[0,3]*exp(2*w[0,2])");
    const Current pulled = current_to_spacetime(exotic.current());
    const Expr density = parse("exp(u[0,2] - u[1,1])");
    if (!(pulled.first == density) || !(pulled.second == density))
        return "space-time current is (" + print(pulled.first) + ", " + print(pulled.second) + ")";
    const Characteristic mu = characteristic_to_spacetime(lambda);
    const Expr expected = parse("(u[0,3] - u[1,2])*exp(u[0,2] - u[1,1])");
    if (!(mu.multiplier == expected)) return mismatch("mu", mu.multiplier, print(expected));
    return {};
}

std::string check_lagrangian(const char* lagrangian, const Frame& fr, const char* expected) {
    return require_printed("Euler operator", euler_operator(parse(lagrangian), fr), expected);
}

std::string check_scaling(const Config& cfg) {
    const Characteristic scaling{kLightcone, parse("w")};
    if (is_characteristic(scaling, cfg.zero_test())) return "w passes the Euler criterion";
    return require_printed("E(w*w[1,1])", euler_operator(parse("w*w[1,1]"), kLightcone), "2*w[1,1]");
}

std::string check_constant_family(const Config& cfg) {
    const CanonicalCurrent c(parse("w[0,1]"), parse("-w[1,0]"));
    if (!verify_current(c.current(), cfg.zero_test())) return "current is not conserved";
    if (auto err = require_printed("lambda", characteristic_canonical(c).multiplier, "0"); !err.empty())
        return err;
    const TrivialWitness witness = trivial_witness(c);
    if (witness.constant != Rational(1)) return "constant " + witness.constant.str() + ", expected 1";
    if (!witness.f_tilde.is_zero_literal() || !witness.g_tilde.is_zero_literal())
        return "unexpected potentials " + print(witness.f_tilde) + ", " + print(witness.g_tilde);
    return {};
}

std::string check_eta_image(const Config& cfg) {
    // D_eta(w[0,1]^2) = 2*w[0,1]*w[0,2].
    const CanonicalCurrent c(parse("2*w[0,1]*w[0,2]"), Expr(0));
    if (!verify_current(c.current(), cfg.zero_test())) return "current is not conserved";
    if (!is_trivial(c.current(), cfg.reference_point(), cfg.zero_test())) return "current is not trivial";
    const TrivialWitness witness = trivial_witness(c);
    if (!witness.constant.is_zero()) return "constant " + witness.constant.str() + ", expected 0";
    if (auto err = require_printed("f_tilde", witness.f_tilde, "w[0,1]^2"); !err.empty()) return err;
    return require_printed("g_tilde", witness.g_tilde, "0");
}

std::string check_extra_characteristics(const Config& cfg) {
    for (const char* text : {"t*x", "u[0,1]", "x*u[0,1] + t*u[1,0]", "x*u[1,0] + t*u[0,1]"}) {
        const Characteristic mu{kSpacetime, parse(text)};
        if (!is_characteristic(mu, cfg.zero_test())) return std::string(text) + " fails the Euler criterion";
        const Characteristic lambda = characteristic_to_lightcone(mu);
        if (!is_characteristic(lambda, cfg.zero_test()))
            return std::string(text) + " maps to a light-cone multiplier failing the Euler criterion";
    }
    return {};
}

std::string check_numeric(const Config& cfg) {
    const Solution solution = Solution::parse("sin:1,0;poly:0,0,1");
    const Rectangle rect{0.0, 0.7, -1.0, -0.1, 128};
    for (const char* text : {"w[0,1]^2", "exp(2*w[0,2])"}) {
        const Current c{kLightcone, parse(text), Expr(0)};
        const auto r = check_conservation(c, solution, rect);
        if (!(r.residual < cfg.tolerance)) {
            std::ostringstream os;
            os << text << ": residual " << r.residual;
            return os.str();
        }
    }
    const Current broken{kLightcone, parse("w[1,0]"), Expr(0)};
    const auto r = check_conservation(broken, solution, rect);
    if (!(r.residual > 1e-3)) {
        std::ostringstream os;
        os << "non-conserved current has residual " << r.residual;
        return os.str();
    }
    return {};
}

}  // namespace

const std::vector<GoldenCase>& golden_cases() {
    static const std::vector<GoldenCase> cases = {
        {"momentum",
         [](const Config& c) {
             return check_physical_law({"-w[0,1]", "-w[1,0]", "1", "u[1,0]", "-u[0,1]", true}, c);
         }},
        {"center of mass",
         [](const Config& c) {
             return check_physical_law({"eta*w[0,1]", "-xi*w[1,0]", "t", "t*u[1,0] - u", "-t*u[0,1]", false}, c);
         }},
        {"angular momentum",
         [](const Config& c) {
             return check_physical_law({"-eta*w[0,1]", "-xi*w[1,0]", "x", "x*u[1,0]", "-x*u[0,1] + u", false}, c);
         }},
        {"energy",
         [](const Config& c) {
             return check_physical_law({"w[0,1]^2", "-w[1,0]^2", "u[1,0]", "1/2*u[1,0]^2 + 1/2*u[0,1]^2",
                                        "-u[1,0]*u[0,1]", true},
                                       c);
         }},
        {"exotic exponential law", check_exotic},
        {"light-cone Lagrangian",
         [](const Config&) { return check_lagrangian("-1/2*w[1,0]*w[0,1]", kLightcone, "w[1,1]"); }},
        {"space-time Lagrangian",
         [](const Config&) {
             return check_lagrangian("-1/2*(u[1,0]^2 - u[0,1]^2)", kSpacetime, "u[2,0] - u[0,2]");
         }},
        {"scaling multiplier rejected", check_scaling},
        {"constant trivial family", check_constant_family},
        {"D_eta image is trivial", check_eta_image},
        {"extra characteristics", check_extra_characteristics},
        {"numeric oracle", check_numeric},
    };
    return cases;
}

std::vector<GoldenResult> run_golden(const Config& config) {
    std::vector<GoldenResult> results;
    for (const auto& c : golden_cases()) {
        GoldenResult r{c.name, false, {}};
        try {
            r.detail = c.check(config);
            r.pass = r.detail.empty();
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace jetlaw
