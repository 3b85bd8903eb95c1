#pragma once

#include <functional>
#include <map>
#include <optional>

#include "jetlaw/expr.hpp"

namespace jetlaw {

/// Derivation of an expression determined by its action on variables.
/// `rule(v)` returns the image of the symbol or jet coordinate v; the chain
/// rule is applied through every function and reciprocal atom.
Expr apply_derivation(const Expr& e, const std::function<Expr(const Var&)>& rule);

/// Partial derivative, all other symbols and jet coordinates held fixed.
Expr diff_partial(const Expr& e, const Var& v);

/// Simultaneous substitution. Variables without a binding are kept.
Expr substitute(const Expr& e, const std::map<Var, Expr>& bindings);
Expr substitute(const Expr& e, const std::function<std::optional<Expr>(const Var&)>& binding);

/// Definite integral from `lower` to v, as a function of v alone:
/// the result H has dH/dv = e and H|_{v=lower} = 0.
///
/// Every term must be, in v, a power v^k (k >= 0) times at most one of
/// exp(a*v + b), sin(a*v + b), cos(a*v + b) with a, b free of v; any other
/// dependence on v throws UnsupportedIntegrand.
Expr integrate_univar(const Expr& e, const Var& v, const Expr& lower);

}  // namespace jetlaw
