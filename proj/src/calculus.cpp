#include "jetlaw/calculus.hpp"

#include "jetlaw/errors.hpp"

namespace jetlaw {

namespace {

// Image of a single atom under a derivation.
Expr derive_atom(const Atom& atom, const std::function<Expr(const Var&)>& rule) {
    if (auto v = atom.as_var()) return rule(*v);
    const Expr& arg = atom.argument();
    Expr inner = apply_derivation(arg, rule);
    if (inner.is_zero_literal()) return Expr();
    switch (atom.kind()) {
        case AtomKind::Exp: return exp(arg) * inner;
        case AtomKind::Sin: return cos(arg) * inner;
        case AtomKind::Cos: return -(sin(arg) * inner);
        case AtomKind::Ln: return inner * pow(arg, -1);
        case AtomKind::Reciprocal: return -(pow(arg, -2) * inner);
        default: break;
    }
    throw InternalError("derive_atom: unexpected atom kind");
}

Expr substitute_atom(const Atom& atom, const std::function<std::optional<Expr>(const Var&)>& binding,
                     bool& changed) {
    if (auto v = atom.as_var()) {
        if (auto image = binding(*v)) {
            changed = true;
            return *image;
        }
        return Expr::var(*v);
    }
    const Expr arg = substitute(atom.argument(), binding);
    changed = !(arg == atom.argument());
    switch (atom.kind()) {
        case AtomKind::Exp: return exp(arg);
        case AtomKind::Sin: return sin(arg);
        case AtomKind::Cos: return cos(arg);
        case AtomKind::Ln: return ln(arg);
        case AtomKind::Reciprocal: return pow(arg, -1);
        default: break;
    }
    throw InternalError("substitute_atom: unexpected atom kind");
}

enum class Wave { None, Exp, Sin, Cos };

// Antiderivatives of v^k * sin(theta) and v^k * cos(theta), theta = a*v + b,
// by repeated integration by parts; `inverse_slope` is 1/a.
Expr integrate_sin(int k, const Expr& v, const Expr& theta, const Expr& inverse_slope);

Expr integrate_cos(int k, const Expr& v, const Expr& theta, const Expr& inverse_slope) {
    Expr head = pow(v, k) * sin(theta) * inverse_slope;
    if (k == 0) return head;
    return head - Expr(k) * inverse_slope * integrate_sin(k - 1, v, theta, inverse_slope);
}

Expr integrate_sin(int k, const Expr& v, const Expr& theta, const Expr& inverse_slope) {
    Expr head = -(pow(v, k) * cos(theta) * inverse_slope);
    if (k == 0) return head;
    return head + Expr(k) * inverse_slope * integrate_cos(k - 1, v, theta, inverse_slope);
}

}  // namespace

Expr apply_derivation(const Expr& e, const std::function<Expr(const Var&)>& rule) {
    ExprBuilder out;
    for (const auto& term : e.terms()) {
        const auto& m = term.monomial;
        for (std::size_t f = 0; f < m.size(); ++f) {
            const auto& [atom, k] = m[f];
            Expr d = derive_atom(atom, rule);
            if (d.is_zero_literal()) continue;
            Monomial rest = m;
            if (k == 1) {
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(f));
            } else {
                rest[f].second = k - 1;
            }
            out.add(make_term(term.coefficient * Rational(k), std::move(rest)) * d);
        }
    }
    return std::move(out).build();
}

Expr diff_partial(const Expr& e, const Var& v) {
    return apply_derivation(e, [&v](const Var& w) { return w == v ? Expr(1) : Expr(); });
}

Expr substitute(const Expr& e, const std::function<std::optional<Expr>(const Var&)>& binding) {
    ExprBuilder out;
    for (const auto& term : e.terms()) {
        Monomial kept;
        Expr replaced(1);
        bool any = false;
        for (const auto& [atom, k] : term.monomial) {
            bool changed = false;
            Expr image = substitute_atom(atom, binding, changed);
            if (changed) {
                any = true;
                replaced *= pow(image, k);
                if (replaced.is_zero_literal()) break;
            } else {
                kept.emplace_back(atom, k);
            }
        }
        if (!any) {
            out.add(term.coefficient, term.monomial);
        } else if (!replaced.is_zero_literal()) {
            out.add(make_term(term.coefficient, std::move(kept)) * replaced);
        }
    }
    return std::move(out).build();
}

Expr substitute(const Expr& e, const std::map<Var, Expr>& bindings) {
    if (bindings.empty()) return e;
    return substitute(e, [&bindings](const Var& v) -> std::optional<Expr> {
        auto it = bindings.find(v);
        if (it == bindings.end()) return std::nullopt;
        return it->second;
    });
}

Expr integrate_univar(const Expr& e, const Var& v, const Expr& lower) {
    const Expr var = Expr::var(v);
    ExprBuilder antiderivative;
    for (const auto& term : e.terms()) {
        Monomial rest;
        int power = 0;
        Wave wave = Wave::None;
        Expr theta;
        for (const auto& [atom, k] : term.monomial) {
            if (auto own = atom.as_var()) {
                if (*own != v) {
                    rest.emplace_back(atom, k);
                } else if (k < 0) {
                    throw UnsupportedIntegrand("negative power of " + to_string(v) + " in " + print(e));
                } else {
                    power = k;
                }
                continue;
            }
            if (!depends_on(atom.argument(), v)) {
                rest.emplace_back(atom, k);
                continue;
            }
            const bool periodic = atom.kind() == AtomKind::Sin || atom.kind() == AtomKind::Cos;
            if ((atom.kind() != AtomKind::Exp && !periodic) || k != 1 || wave != Wave::None)
                throw UnsupportedIntegrand("cannot integrate " + print(e) + " with respect to " +
                                           to_string(v));
            wave = atom.kind() == AtomKind::Exp ? Wave::Exp
                                                : (atom.kind() == AtomKind::Sin ? Wave::Sin : Wave::Cos);
            theta = atom.argument();
        }

        const Expr coefficient = make_term(term.coefficient, std::move(rest));
        if (wave == Wave::None) {
            antiderivative.add(coefficient * pow(var, power + 1), Rational(1, power + 1));
            continue;
        }
        const Expr slope = diff_partial(theta, v);
        if (slope.is_zero_literal() || depends_on(slope, v))
            throw UnsupportedIntegrand("argument " + print(theta) + " is not linear in " + to_string(v));
        const Expr inverse_slope = pow(slope, -1);
        Expr primitive;
        if (wave == Wave::Exp) {
            // e^theta * sum_m (-1)^m k!/(k-m)! v^(k-m) / a^(m+1)
            Rational falling(1);
            Expr scale = inverse_slope;
            for (int m = 0; m <= power; ++m) {
                Rational c = (m % 2 == 0) ? falling : -falling;
                primitive += Expr(c) * pow(var, power - m) * scale;
                falling *= Rational(power - m);
                scale *= inverse_slope;
            }
            primitive *= exp(theta);
        } else if (wave == Wave::Sin) {
            primitive = integrate_sin(power, var, theta, inverse_slope);
        } else {
            primitive = integrate_cos(power, var, theta, inverse_slope);
        }
        antiderivative.add(coefficient * primitive);
    }
    Expr upper = std::move(antiderivative).build();
    return upper - substitute(upper, std::map<Var, Expr>{{v, lower}});
}

}  // namespace jetlaw
