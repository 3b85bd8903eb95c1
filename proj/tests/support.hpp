#pragma once

// Seeded generators of random expressions and currents shared by the unit
// and acceptance tests.

#include <cstdint>
#include <random>
#include <vector>

#include "jetlaw/calculus.hpp"
#include "jetlaw/conservation.hpp"
#include "jetlaw/jet.hpp"

namespace support {

using namespace jetlaw;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    Rational rational() {
        int n = 0;
        while (n == 0) n = integer(-4, 4);
        return Rational(n, integer(1, 3));
    }

    template <class T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(integer(0, static_cast<int>(items.size()) - 1))];
    }

    Expr monomial(const std::vector<Expr>& atoms, int max_degree) {
        Expr m(rational());
        const int degree = integer(0, max_degree);
        for (int k = 0; k < degree; ++k) m *= pick(atoms);
        return m;
    }

    Expr polynomial(const std::vector<Expr>& atoms, int max_degree, int max_terms) {
        Expr p(0);
        const int terms = integer(1, max_terms);
        for (int k = 0; k < terms; ++k) p += monomial(atoms, max_degree);
        return p;
    }

    /// F(eta, w[0,1], ..., w[0,r]) with r <= max_order, polynomial of degree
    /// <= 3, optionally with one term multiplied by exp(c*w[0,l]) or exp(c*eta).
    Expr eta_side(int max_order, bool decorate) { return side(Direction::Second, max_order, decorate); }
    /// G(xi, w[1,0], ..., w[r,0]), same shape.
    Expr xi_side(int max_order, bool decorate) { return side(Direction::First, max_order, decorate); }

    /// Differential function in fr over jets of order <= max_order,
    /// principal ones included, with occasional exp and sin factors.
    Expr differential_function(const Frame& fr, int max_order, int max_degree, bool transcendental) {
        std::vector<Expr> atoms{Expr::symbol(fr.independent(Direction::First)),
                                Expr::symbol(fr.independent(Direction::Second))};
        for (int n = 0; n <= max_order; ++n)
            for (int i = 0; i <= n; ++i) atoms.push_back(fr.jet_expr(i, n - i));
        Expr e = polynomial(atoms, max_degree, 4);
        if (transcendental && chance(0.4)) e += monomial(atoms, 1) * exp(Expr(rational()) * pick(atoms));
        if (transcendental && chance(0.3)) e += monomial(atoms, 1) * sin(pick(atoms));
        return e;
    }

    /// Random expression for parse/print round trips.
    Expr expression(int depth) {
        static const std::vector<Expr> leaves = {
            Expr::symbol(Symbol::Xi), Expr::symbol(Symbol::Eta), Expr::symbol(Symbol::T), Expr::symbol(Symbol::X),
            Expr::jet("w", 0, 0),     Expr::jet("w", 1, 0),      Expr::jet("w", 0, 2),    Expr::jet("u", 1, 1),
            Expr::jet("u", 0, 3),     Expr::jet("v", 2, 0)};
        if (depth <= 0 || chance(0.3)) return chance(0.2) ? Expr(rational()) : pick(leaves);
        switch (integer(0, 8)) {
            case 0:
            case 1: return expression(depth - 1) + expression(depth - 1);
            case 2: return expression(depth - 1) - expression(depth - 1);
            case 3:
            case 4: return expression(depth - 1) * expression(depth - 1);
            case 5: {
                const Expr base = expression(depth - 1);
                return pow(base, base.is_zero_literal() ? integer(0, 3) : integer(-2, 3));
            }
            case 6: return exp(expression(depth - 1));
            case 7: return chance(0.5) ? sin(expression(depth - 1)) : cos(expression(depth - 1));
            default: return ln(pick(leaves) + Expr(integer(1, 3)));
        }
    }

private:
    Expr side(Direction dir, int max_order, bool decorate) {
        const Frame fr = Frame::lightcone();
        const int order = integer(1, max_order);
        std::vector<Expr> atoms{Expr::symbol(dir == Direction::First ? Symbol::Xi : Symbol::Eta)};
        for (int l = 1; l <= order; ++l) atoms.push_back(dir == Direction::First ? fr.jet_expr(l, 0) : fr.jet_expr(0, l));
        Expr e = polynomial(atoms, 3, 4);
        if (decorate) e += monomial(atoms, 1) * exp(Expr(Rational(integer(1, 2))) * pick(atoms));
        return e;
    }

    std::mt19937_64 rng_;
};

/// (D_eta H + C*w[0,1], -D_xi H - C*w[1,0]): conserved and trivial.
inline Current trivial_current(const Expr& h, const Rational& c) {
    const Frame fr = Frame::lightcone();
    return {fr, total_derivative(h, fr, Direction::Second) + Expr(c) * fr.jet_expr(0, 1),
            -total_derivative(h, fr, Direction::First) - Expr(c) * fr.jet_expr(1, 0)};
}

inline Current operator+(const Current& a, const Current& b) {
    return {a.frame, a.first + b.first, a.second + b.second};
}

}  // namespace support
