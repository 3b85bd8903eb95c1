#include "jetlaw/numeric_oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "jetlaw/errors.hpp"

namespace jetlaw {

namespace {

constexpr int kMaxJetOrder = 10;

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text) {
    const std::string s(trim(text));
    try {
        return Rational::parse(s).to_double();
    } catch (const std::exception&) {
    }
    try {
        std::size_t used = 0;
        const double value = std::stod(s, &used);
        if (used == s.size()) return value;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("malformed number '" + s + "'");
}

ProfileAtom parse_atom(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("solution atom '" + std::string(text) + "' lacks a ':'");
    const auto kind = trim(text.substr(0, colon));
    std::vector<double> values;
    for (auto part : split(text.substr(colon + 1), ',')) values.push_back(parse_number(part));

    ProfileAtom atom;
    if (kind == "poly") {
        atom.kind = ProfileAtom::Kind::Poly;
        atom.coefficients = std::move(values);
        return atom;
    }
    if (values.size() != 2)
        throw std::invalid_argument("atom '" + std::string(kind) + "' needs exactly two numbers a,b");
    if (kind == "sin") {
        atom.kind = ProfileAtom::Kind::Sin;
    } else if (kind == "cos") {
        atom.kind = ProfileAtom::Kind::Cos;
    } else if (kind == "exp") {
        atom.kind = ProfileAtom::Kind::Exp;
    } else {
        throw std::invalid_argument("unknown solution atom '" + std::string(kind) + "'");
    }
    atom.a = values[0];
    atom.b = values[1];
    return atom;
}

double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double sum = f(lo) + f(hi);
    for (int k = 1; k < n; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * f(lo + k * h);
    return sum * h / 3.0;
}

// Spacetime components (T, X) of a current evaluated along a solution.
class CurrentEvaluator {
public:
    CurrentEvaluator(const Current& c, const Solution& s) : current_(c), solution_(s) {
        check_frame(c.first, c.frame);
        check_frame(c.second, c.frame);
        const auto a = order_bound(c.first, c.frame), b = order_bound(c.second, c.frame);
        max_order_ = std::max(a.value_or(0), b.value_or(0));
        if (max_order_ > kMaxJetOrder) throw PreconditionError("current exceeds the supported jet order");
    }

    std::array<double, 2> at(double t, double x) const {
        const bool lightcone = current_.frame.id() == FrameId::Lightcone;
        const std::array<double, 2> point = lightcone ? std::array{x + t, x - t} : std::array{t, x};
        const JetValues jets = eval_jet(solution_, current_.frame, point, max_order_);
        const Valuation values = [&](const Var& v) -> double {
            if (const auto* sym = std::get_if<Symbol>(&v))
                return *sym == current_.frame.independent(Direction::First) ? point[0] : point[1];
            return jets.at(std::get<JetIndex>(v));
        };
        const double first = evaluate(current_.first, values);
        const double second = evaluate(current_.second, values);
        if (lightcone) return {first - second, first + second};
        return {first, second};
    }

private:
    const Current& current_;
    const Solution& solution_;
    int max_order_ = 0;
};

}  // namespace

double parse_real(std::string_view text) { return parse_number(text); }

double ProfileAtom::derivative(int n, double s) const {
    switch (kind) {
        case Kind::Poly: {
            double sum = 0.0, power = 1.0;
            for (std::size_t k = static_cast<std::size_t>(n); k < coefficients.size(); ++k) {
                double falling = 1.0;
                for (std::size_t m = 0; m < static_cast<std::size_t>(n); ++m) falling *= static_cast<double>(k - m);
                sum += coefficients[k] * falling * power;
                power *= s;
            }
            return sum;
        }
        case Kind::Sin: return std::pow(a, n) * std::sin(a * s + b + n * std::numbers::pi / 2);
        case Kind::Cos: return std::pow(a, n) * std::cos(a * s + b + n * std::numbers::pi / 2);
        case Kind::Exp: return std::pow(a, n) * std::exp(a * s + b);
    }
    return 0.0;
}

Profile Profile::parse(std::string_view text) {
    text = trim(text);
    if (text.empty() || text == "0") return {};
    std::vector<ProfileAtom> atoms;
    for (auto part : split(text, '+')) atoms.push_back(parse_atom(trim(part)));
    return Profile(std::move(atoms));
}

double Profile::derivative(int n, double s) const {
    double sum = 0.0;
    for (const auto& atom : atoms_) sum += atom.derivative(n, s);
    return sum;
}

Solution Solution::parse(std::string_view text) {
    const auto parts = split(text, ';');
    if (parts.size() != 2) throw std::invalid_argument("solution spec needs the form '<f-spec>;<g-spec>'");
    return Solution(Profile::parse(parts[0]), Profile::parse(parts[1]));
}

double Solution::u(int i, int j, double t, double x) const {
    const int n = i + j;
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    return f_.derivative(n, x + t) + sign * g_.derivative(n, x - t);
}

double Solution::w(int k, int l, double xi, double eta) const {
    if (k > 0 && l > 0) return 0.0;
    if (k > 0) return f_.derivative(k, xi);
    if (l > 0) return g_.derivative(l, eta);
    return f_.derivative(0, xi) + g_.derivative(0, eta);
}

JetValues eval_jet(const Solution& s, const Frame& fr, std::array<double, 2> point, int max_order) {
    if (max_order < 0 || max_order > kMaxJetOrder)
        throw std::invalid_argument("eval_jet: max_order must lie in [0, 10]");
    JetValues out;
    const bool lightcone = fr.id() == FrameId::Lightcone;
    for (int n = 0; n <= max_order; ++n) {
        for (int i = 0; i <= n; ++i) {
            const int j = n - i;
            out[fr.jet(i, j)] = lightcone ? s.w(i, j, point[0], point[1]) : s.u(i, j, point[0], point[1]);
        }
    }
    return out;
}

namespace {

double contour_integral_with(const Current& c, const Solution& s, const Rectangle& r, int nodes) {
    const CurrentEvaluator current(c, s);
    // Counter-clockwise in the (t, x) plane: the integral equals the double
    // integral of D_t T + D_x X.
    const double along_x = simpson(
        [&](double x) { return current.at(r.t1, x)[0] - current.at(r.t0, x)[0]; }, r.x0, r.x1, nodes);
    const double along_t = simpson(
        [&](double t) { return current.at(t, r.x1)[1] - current.at(t, r.x0)[1]; }, r.t0, r.t1, nodes);
    return along_x + along_t;
}

void validate(const Rectangle& r) {
    if (!(r.t0 < r.t1) || !(r.x0 < r.x1)) throw std::invalid_argument("degenerate rectangle");
    if (r.nodes < 16 || r.nodes % 2 != 0) throw std::invalid_argument("nodes must be even and >= 16");
}

}  // namespace

double contour_integral(const Current& c, const Solution& s, const Rectangle& r) {
    validate(r);
    return contour_integral_with(c, s, r, r.nodes);
}

ConservationResidual check_conservation(const Current& c, const Solution& s, const Rectangle& r) {
    ConservationResidual out;
    validate(r);
    out.residual = std::fabs(contour_integral_with(c, s, r, r.nodes));
    const int coarse = r.nodes / 2 + (r.nodes / 2) % 2;
    const double coarse_residual = std::fabs(contour_integral_with(c, s, r, coarse));
    out.ratio = out.residual == 0.0 ? std::numeric_limits<double>::quiet_NaN() : coarse_residual / out.residual;
    return out;
}

double check_characteristic_numeric(const Characteristic& ch, const Current& c, const Solution& s,
                                    std::span<const std::array<double, 2>> points, std::uint64_t seed) {
    if (ch.frame != c.frame) throw FrameMismatch("characteristic and current live in different frames");
    const CharacteristicIdentity identity = c.frame.id() == FrameId::Lightcone
                                                ? characteristic_with_remainder(CanonicalCurrent(c))
                                                : spacetime_characteristic_with_remainder(c);
    // The three sides are evaluated separately; combining them symbolically
    // would cancel to zero before any number is computed.
    const Expr lhs = divergence(c);
    const Expr equation = c.frame.equation();
    const Expr remainder = divergence(identity.remainder);

    const int max_order = std::max({order_bound(lhs, c.frame).value_or(0),
                                    order_bound(ch.multiplier, c.frame).value_or(0),
                                    order_bound(remainder, c.frame).value_or(0), 2});
    if (max_order > kMaxJetOrder) throw PreconditionError("identity exceeds the supported jet order");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> numerator(-1000, 1000);
    double worst = 0.0;
    for (const auto& point : points) {
        JetValues jets = eval_jet(s, c.frame, point, max_order);
        for (auto& [jet, value] : jets) value += numerator(rng) / 1000.0;
        const Valuation values = [&](const Var& v) -> double {
            if (const auto* sym = std::get_if<Symbol>(&v))
                return *sym == c.frame.independent(Direction::First) ? point[0] : point[1];
            return jets.at(std::get<JetIndex>(v));
        };
        const double gap = evaluate(lhs, values) - evaluate(ch.multiplier, values) * evaluate(equation, values) -
                           evaluate(remainder, values);
        worst = std::max(worst, std::fabs(gap));
    }
    return worst;
}

}  // namespace jetlaw
