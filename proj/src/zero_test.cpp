#include "jetlaw/zero_test.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace jetlaw {

bool in_decidable_fragment(const Expr& e) {
    for (const auto& term : e.terms()) {
        for (const auto& [atom, k] : term.monomial) {
            switch (atom.kind()) {
                case AtomKind::Symbol:
                case AtomKind::Jet: break;
                case AtomKind::Exp:
                    if (!in_decidable_fragment(atom.argument())) return false;
                    break;
                default: return false;
            }
        }
    }
    return true;
}

ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& options) {
    if (e.is_zero_literal()) return {true, false};
    if (in_decidable_fragment(e)) return {false, false};

    const auto vars = free_vars(e);
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> denominator(1, 8);

    int accepted = 0;
    const int max_attempts = 20 * std::max(options.samples, 1);
    for (int attempt = 0; attempt < max_attempts && accepted < options.samples; ++attempt) {
        std::map<Var, double> point;
        for (const auto& v : vars) {
            const int q = denominator(rng);
            std::uniform_int_distribution<int> numerator(-2 * q, 2 * q);
            point[v] = Rational(numerator(rng), q).to_double();
        }
        const Valuation at = [&point](const Var& v) { return point.at(v); };
        double value = 0.0, scale = 0.0;
        for (const auto& term : e.terms()) {
            const double t = evaluate(make_term(term.coefficient, term.monomial), at);
            value += t;
            scale += std::fabs(t);
        }
        if (!std::isfinite(value) || !std::isfinite(scale)) continue;
        ++accepted;
        if (std::fabs(value) > options.tolerance * std::max(1.0, scale)) return {false, true};
    }
    // No admissible sample point at all: nothing supports a zero verdict.
    if (accepted == 0) return {false, true};
    return {true, true};
}

}  // namespace jetlaw
