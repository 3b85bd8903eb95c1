#include "jetlaw/conservation.hpp"

#include "jetlaw/calculus.hpp"
#include "jetlaw/errors.hpp"

namespace jetlaw {

namespace {

const Frame kLightcone = Frame::lightcone();

Expr d_xi(const Expr& e) { return restricted_derivative(e, kLightcone, Direction::First); }
Expr d_eta(const Expr& e) { return restricted_derivative(e, kLightcone, Direction::Second); }
Expr w(int k, int l) { return kLightcone.jet_expr(k, l); }
Var w_var(int k, int l) { return Var{kLightcone.jet(k, l)}; }

void require_lightcone(const Current& c, const char* operation) {
    if (c.frame.id() != FrameId::Lightcone)
        throw FrameMismatch(std::string(operation) + " expects a lightcone current");
}

// Empty string when (f, g) is canonical, otherwise the reason.
std::string canonical_violation(const Expr& f, const Expr& g) {
    check_frame(f, kLightcone);
    check_frame(g, kLightcone);
    for (const auto& v : free_vars(f)) {
        if (const auto* s = std::get_if<Symbol>(&v)) {
            if (*s != Symbol::Eta) return "first component depends on " + to_string(v);
        } else if (const auto& j = std::get<JetIndex>(v); j.first != 0 || j.second == 0) {
            return "first component depends on " + to_string(v);
        }
    }
    for (const auto& v : free_vars(g)) {
        if (const auto* s = std::get_if<Symbol>(&v)) {
            if (*s != Symbol::Xi) return "second component depends on " + to_string(v);
        } else if (const auto& j = std::get<JetIndex>(v); j.second != 0 || j.first == 0) {
            return "second component depends on " + to_string(v);
        }
    }
    return {};
}

// Largest k >= 0 with w[k,0] present in e.
std::optional<int> highest_xi_jet(const Expr& e) {
    std::optional<int> q;
    for (const auto& j : jets_of(e))
        if (j.second == 0 && (!q || j.first > *q)) q = j.first;
    return q;
}

void require_conserved(const Expr& f, const Expr& g, const char* stage) {
    const Expr residual = d_xi(f) + d_eta(g);
    if (!is_zero(residual))
        throw NotConserved(std::string("divergence does not vanish on solutions (") + stage +
                           "): " + print(residual));
}

// Removes the dependence of `e` on v once its derivative is known to vanish;
// a no-op whenever the cancellation is already structural.
Expr drop_dependence(const Expr& e, const Var& v, const Expr& at, const char* stage) {
    if (!depends_on(e, v)) return e;
    if (!is_zero(diff_partial(e, v)))
        throw NotConserved(std::string("component still depends on ") + to_string(v) + " (" + stage + ")");
    return substitute(e, std::map<Var, Expr>{{v, at}});
}

// Sum over l of (-D)^(l-1) dE/dw_l for the pure jets of one direction.
Expr euler_component(const Expr& e, Direction dir) {
    ExprBuilder out;
    for (const auto& j : jets_of(e)) {
        const int order = dir == Direction::Second ? j.second : j.first;
        Expr term = diff_partial(e, Var{j});
        for (int i = 1; i < order && !term.is_zero_literal(); ++i)
            term = dir == Direction::Second ? -d_eta(term) : -d_xi(term);
        out.add(term);
    }
    return std::move(out).build();
}

// Q with D Q = p for p free of the other direction; D is D_eta for
// Direction::Second and D_xi for Direction::First.
Expr invert_total_derivative(const Expr& p, Direction dir) {
    const bool eta_side = dir == Direction::Second;
    auto jet_of = [&](int order) { return eta_side ? w_var(0, order) : w_var(order, 0); };
    auto derive = [&](const Expr& e) { return eta_side ? d_eta(e) : d_xi(e); };
    const Var own = Var{kLightcone.independent(dir)};

    Expr rest = p;
    Expr antiderivative;
    for (;;) {
        int top = 0;
        for (const auto& j : jets_of(rest)) top = std::max(top, eta_side ? j.second : j.first);
        if (top == 0) break;
        if (top == 1)
            throw UnsupportedIntegrand("no antiderivative of " + print(p) +
                                       " free of the dependent variable itself");
        const Expr a = diff_partial(rest, jet_of(top));
        if (depends_on(a, jet_of(top)))
            throw UnsupportedIntegrand(print(p) + " is nonlinear in its highest derivative");
        const Expr piece = integrate_univar(a, jet_of(top - 1), Expr());
        antiderivative += piece;
        rest -= derive(piece);
        if (depends_on(rest, jet_of(top)))
            throw UnsupportedIntegrand("cannot invert the total derivative on " + print(p));
    }
    antiderivative += integrate_univar(rest, own, Expr());
    if (!is_zero(derive(antiderivative) - p))
        throw InternalError("antiderivative check failed for " + print(p));
    return antiderivative;
}

}  // namespace

// --- CanonicalCurrent -------------------------------------------------------

CanonicalCurrent::CanonicalCurrent(Expr f, Expr g) : f_(std::move(f)), g_(std::move(g)) {
    if (auto why = canonical_violation(f_, g_); !why.empty())
        throw PreconditionError("current is not canonical: " + why);
}

CanonicalCurrent::CanonicalCurrent(const Current& c) : CanonicalCurrent(c.first, c.second) {
    require_lightcone(c, "CanonicalCurrent");
}

bool CanonicalCurrent::is_canonical(const Current& c) {
    if (c.frame.id() != FrameId::Lightcone) return false;
    try {
        return canonical_violation(c.first, c.second).empty();
    } catch (const FrameMismatch&) {
        return false;
    }
}

// --- ReferenceJetPoint -------------------------------------------------------

ReferenceJetPoint& ReferenceJetPoint::set(const Var& v, const Rational& value) {
    values_[v] = value;
    return *this;
}

Expr ReferenceJetPoint::value(const Var& v) const {
    auto it = values_.find(v);
    return it == values_.end() ? Expr() : Expr(it->second);
}

// --- operations -------------------------------------------------------------

Expr divergence(const Current& c) {
    return total_derivative(c.first, c.frame, Direction::First) +
           total_derivative(c.second, c.frame, Direction::Second);
}

bool verify_current(const Current& c, const ZeroTestOptions& options) {
    return is_zero(reduce_to_solutions(divergence(c), c.frame), options).zero;
}

CanonicalCurrent normalize_current(const Current& c, const ReferenceJetPoint& base) {
    require_lightcone(c, "normalize_current");
    check_frame(c.first, kLightcone);
    check_frame(c.second, kLightcone);

    // (a) mixed derivatives vanish on solutions.
    Expr f = reduce_to_solutions(c.first, kLightcone);
    Expr g = reduce_to_solutions(c.second, kLightcone);
    require_conserved(f, g, "input");

    // (b) strip w[q,0], q = highest xi-derivative (w itself is q = 0) in F.
    std::optional<int> previous;
    while (auto q = highest_xi_jet(f)) {
        if (previous && *q >= *previous)
            throw InternalError("normalize_current: order of xi-derivatives did not decrease");
        previous = q;
        const Var wq = w_var(*q, 0);
        Expr k = diff_partial(g, w_var(*q + 1, 0));
        if (*q == 0) {
            // D_eta does not commute with integration in w itself (D_eta w =
            // w[0,1]), so only the eta-side part of k is integrated. Its
            // xi-derivative dependence is annihilated by D_eta and can be
            // frozen at the base point without changing D_eta k.
            k = substitute(k, [&](const Var& v) -> std::optional<Expr> {
                const auto* j = std::get_if<JetIndex>(&v);
                if (j && j->second == 0 && j->first > 0) return base.value(v);
                return std::nullopt;
            });
        }
        const Expr h = integrate_univar(k, wq, base.value(wq));
        f = drop_dependence(f + d_eta(h), wq, base.value(wq), "xi-derivative elimination");
        g = g - d_xi(h);
        require_conserved(f, g, "xi-derivative elimination");
    }

    // (c) explicit xi-dependence of F.
    const Var xi{Symbol::Xi};
    if (depends_on(f, xi)) {
        const Expr h = integrate_univar(g, xi, base.value(xi));
        f = drop_dependence(f + d_eta(h), xi, base.value(xi), "xi elimination");
        g = g - d_xi(h);
        require_conserved(f, g, "xi elimination");
    }

    // (d) now D_eta G = 0, so G is free of eta and of every w[0,l].
    for (const auto& v : free_vars(g)) {
        const auto* j = std::get_if<JetIndex>(&v);
        const bool eta_side = j ? j->first == 0 : std::get<Symbol>(v) == Symbol::Eta;
        if (eta_side) g = drop_dependence(g, v, Expr(), "splitting D_eta G = 0");
    }
    return CanonicalCurrent(std::move(f), std::move(g));
}

Characteristic characteristic_canonical(const CanonicalCurrent& c) {
    return {kLightcone, euler_component(c.f(), Direction::Second) + euler_component(c.g(), Direction::First)};
}

CharacteristicIdentity characteristic_with_remainder(const CanonicalCurrent& c) {
    ExprBuilder lambda, f0, g0;
    // F side: D_xi F = sum_l w[1,l] dF/dw[0,l].
    for (const auto& j : jets_of(c.f())) {
        Expr a = diff_partial(c.f(), Var{j});
        for (int m = 0; m + 1 < j.second; ++m) {
            g0.add(a * w(1, j.second - 1 - m));
            a = -d_eta(a);
        }
        lambda.add(a);
    }
    // G side: D_eta G = sum_k w[k,1] dG/dw[k,0].
    for (const auto& j : jets_of(c.g())) {
        Expr b = diff_partial(c.g(), Var{j});
        for (int m = 0; m + 1 < j.first; ++m) {
            f0.add(b * w(j.first - 1 - m, 1));
            b = -d_xi(b);
        }
        lambda.add(b);
    }
    return {{kLightcone, std::move(lambda).build()},
            {kLightcone, std::move(f0).build(), std::move(g0).build()}};
}

CharacteristicIdentity spacetime_characteristic_with_remainder(const Current& c) {
    const Frame st = Frame::spacetime();
    if (c.frame.id() != FrameId::Spacetime)
        throw FrameMismatch("spacetime_characteristic_with_remainder expects a spacetime current");
    for (const Expr* e : {&c.first, &c.second}) {
        check_frame(*e, st);
        for (const auto& j : jets_of(*e))
            if (st.is_principal(j))
                throw PreconditionError("principal derivative " + to_string(Var{j}) + " in " + print(*e));
    }
    if (!verify_current(c)) throw NotConserved("divergence does not vanish on solutions");

    // D_x^k (u[2,0] - u[0,2])
    auto equation_derivative = [&](int k) { return st.jet_expr(2, k) - st.jet_expr(0, k + 2); };
    ExprBuilder mu, x0;
    for (const auto& j : jets_of(c.first)) {
        if (j.first != 1) continue;
        Expr a = diff_partial(c.first, Var{j});
        for (int m = 0; m < j.second; ++m) {
            x0.add(a * equation_derivative(j.second - 1 - m));
            a = -total_derivative(a, st, Direction::Second);
        }
        mu.add(a);
    }
    return {{st, std::move(mu).build()}, {st, Expr(), std::move(x0).build()}};
}

bool is_trivial(const Current& c, const ReferenceJetPoint& base, const ZeroTestOptions& options) {
    return is_zero(characteristic_canonical(normalize_current(c, base)).multiplier, options).zero;
}

TrivialWitness trivial_witness(const CanonicalCurrent& c) {
    const Expr r1 = euler_component(c.f(), Direction::Second);
    const Expr r2 = euler_component(c.g(), Direction::First);
    if (!is_zero(r1 + r2))
        throw PreconditionError("current has nonzero characteristic " + print(r1 + r2));
    const auto constant = r1.constant_value();
    if (!constant) throw UnsupportedIntegrand("characteristic parts are not constant: " + print(r1));

    TrivialWitness out;
    out.constant = *constant;
    out.f_tilde = invert_total_derivative(c.f() - Expr(*constant) * w(0, 1), Direction::Second);
    out.g_tilde = invert_total_derivative(c.g() + Expr(*constant) * w(1, 0), Direction::First);

    if (!is_zero(d_eta(out.f_tilde) + Expr(out.constant) * w(0, 1) - c.f()) ||
        !is_zero(d_xi(out.g_tilde) - Expr(out.constant) * w(1, 0) - c.g()))
        throw InternalError("trivial witness does not reproduce the current");
    return out;
}

bool is_characteristic(const Characteristic& ch, const ZeroTestOptions& options) {
    return is_zero(euler_operator(ch.multiplier * ch.frame.equation(), ch.frame), options).zero;
}

}  // namespace jetlaw
