#include "jetlaw/frame_transform.hpp"

#include "jetlaw/calculus.hpp"
#include "jetlaw/errors.hpp"

namespace jetlaw {

namespace {

const Frame kLightcone = Frame::lightcone();
const Frame kSpacetime = Frame::spacetime();

void require_frame(const Frame& actual, const Frame& expected, const char* operation) {
    if (actual != expected)
        throw FrameMismatch(std::string(operation) + " expects a " + std::string(expected.name()) + " input");
}

}  // namespace

CheckVariableMap& CheckVariableMap::instance() {
    static CheckVariableMap table;
    return table;
}

Expr CheckVariableMap::spacetime_image(int k, int l) {
    if (k < 0 || l < 0 || (k > 0 && l > 0))
        throw PreconditionError("no space-time image for mixed jet w[" + std::to_string(k) + "," +
                                std::to_string(l) + "]");
    {
        std::lock_guard lock(mutex_);
        if (auto it = spacetime_images_.find({k, l}); it != spacetime_images_.end()) return it->second;
    }
    Expr image;
    if (k == 0 && l == 0) {
        image = kSpacetime.jet_expr(0, 0);
    } else {
        const bool along_xi = k > 0;
        const Expr previous = along_xi ? spacetime_image(k - 1, 0) : spacetime_image(0, l - 1);
        const Expr dx = restricted_derivative(previous, kSpacetime, Direction::Second);
        const Expr dt = restricted_derivative(previous, kSpacetime, Direction::First);
        image = Expr(Rational(1, 2)) * (along_xi ? dx + dt : dx - dt);
    }
    std::lock_guard lock(mutex_);
    return spacetime_images_.emplace(std::pair{k, l}, image).first->second;
}

Expr CheckVariableMap::lightcone_image(int i, int j) {
    if (i < 0 || j < 0 || i > 1)
        throw PreconditionError("no light-cone image for unreduced jet u[" + std::to_string(i) + "," +
                                std::to_string(j) + "]");
    {
        std::lock_guard lock(mutex_);
        if (auto it = lightcone_images_.find({i, j}); it != lightcone_images_.end()) return it->second;
    }
    Expr image;
    if (i == 0 && j == 0) {
        image = kLightcone.jet_expr(0, 0);
    } else {
        const Expr base = i == 1 ? lightcone_image(0, j) : lightcone_image(0, j - 1);
        const Expr dxi = restricted_derivative(base, kLightcone, Direction::First);
        const Expr deta = restricted_derivative(base, kLightcone, Direction::Second);
        image = i == 1 ? dxi - deta : dxi + deta;
    }
    std::lock_guard lock(mutex_);
    return lightcone_images_.emplace(std::pair{i, j}, image).first->second;
}

Expr CheckVariableMap::to_spacetime(const Expr& e) {
    check_frame(e, kLightcone);
    const Expr reduced = reduce_to_solutions(e, kLightcone);
    const Expr t = Expr::symbol(Symbol::T), x = Expr::symbol(Symbol::X);
    return substitute(reduced, [&](const Var& v) -> std::optional<Expr> {
        if (const auto* s = std::get_if<Symbol>(&v)) return *s == Symbol::Xi ? x + t : x - t;
        const auto& j = std::get<JetIndex>(v);
        return spacetime_image(j.first, j.second);
    });
}

Expr CheckVariableMap::to_lightcone(const Expr& e) {
    check_frame(e, kSpacetime);
    const Expr reduced = reduce_to_solutions(e, kSpacetime);
    const Expr xi = Expr::symbol(Symbol::Xi), eta = Expr::symbol(Symbol::Eta);
    const Expr half(Rational(1, 2));
    return substitute(reduced, [&](const Var& v) -> std::optional<Expr> {
        if (const auto* s = std::get_if<Symbol>(&v)) return *s == Symbol::T ? half * (xi - eta) : half * (xi + eta);
        const auto& j = std::get<JetIndex>(v);
        return lightcone_image(j.first, j.second);
    });
}

Current current_to_spacetime(const Current& c) {
    require_frame(c.frame, kLightcone, "current_to_spacetime");
    auto& table = CheckVariableMap::instance();
    const Expr f = table.to_spacetime(c.first);
    const Expr g = table.to_spacetime(c.second);
    return {kSpacetime, f - g, f + g};
}

Current current_to_lightcone(const Current& c) {
    require_frame(c.frame, kSpacetime, "current_to_lightcone");
    auto& table = CheckVariableMap::instance();
    const Expr t = table.to_lightcone(c.first);
    const Expr x = table.to_lightcone(c.second);
    const Expr half(Rational(1, 2));
    return {kLightcone, half * (t + x), half * (x - t)};
}

Characteristic characteristic_to_spacetime(const Characteristic& lambda) {
    require_frame(lambda.frame, kLightcone, "characteristic_to_spacetime");
    return {kSpacetime, Expr(Rational(-1, 2)) * CheckVariableMap::instance().to_spacetime(lambda.multiplier)};
}

Characteristic characteristic_to_lightcone(const Characteristic& mu) {
    require_frame(mu.frame, kSpacetime, "characteristic_to_lightcone");
    return {kLightcone, Expr(-2) * CheckVariableMap::instance().to_lightcone(mu.multiplier)};
}

}  // namespace jetlaw
