#pragma once

#include <map>

#include "jetlaw/expr.hpp"
#include "jetlaw/jet.hpp"
#include "jetlaw/zero_test.hpp"

namespace jetlaw {

/// Conserved-current candidate. Lightcone components (F, G) pair with
/// (D_xi, D_eta); spacetime components (T, X) pair with (D_t, D_x).
struct Current {
    Frame frame;
    Expr first;
    Expr second;
};

/// Light-cone current (F, G) with F = F(eta, w[0,1], ..., w[0,r1]) and
/// G = G(xi, w[1,0], ..., w[r2,0]). Construction validates the shape.
class CanonicalCurrent {
public:
    /// Throws PreconditionError if (f, g) does not have the canonical shape.
    CanonicalCurrent(Expr f, Expr g);
    explicit CanonicalCurrent(const Current& c);

    const Expr& f() const { return f_; }
    const Expr& g() const { return g_; }
    Current current() const { return {Frame::lightcone(), f_, g_}; }

    static bool is_canonical(const Current& c);

private:
    Expr f_;
    Expr g_;
};

/// Conservation-law multiplier: lambda (lightcone) or mu (spacetime).
struct Characteristic {
    Frame frame;
    Expr multiplier;
};

/// Characteristic together with a current (F0, G0) vanishing on solutions
/// such that Div(c) = multiplier * equation + Div(F0, G0) identically.
struct CharacteristicIdentity {
    Characteristic characteristic;
    Current remainder;
};

/// F = D_eta(f_tilde) + C*w[0,1] and G = D_xi(g_tilde) - C*w[1,0].
struct TrivialWitness {
    Expr f_tilde;
    Expr g_tilde;
    Rational constant;
};

/// Base point used when integrating in normalize_current. Unset
/// coordinates default to zero.
class ReferenceJetPoint {
public:
    ReferenceJetPoint() = default;
    ReferenceJetPoint& set(const Var& v, const Rational& value);
    Expr value(const Var& v) const;

private:
    std::map<Var, Rational> values_;
};

/// D_1 first + D_2 second in the unrestricted jet space.
Expr divergence(const Current& c);

bool verify_current(const Current& c, const ZeroTestOptions& options = {});

/// Brings a conserved light-cone current to canonical shape by adding
/// trivial currents. Throws NotConserved, UnsupportedIntegrand,
/// FrameMismatch.
CanonicalCurrent normalize_current(const Current& c, const ReferenceJetPoint& base = {});

/// lambda = sum_l (-D_eta)^(l-1) dF/dw[0,l] + sum_k (-D_xi)^(k-1) dG/dw[k,0].
Characteristic characteristic_canonical(const CanonicalCurrent& c);

/// Same lambda, plus the remainder obtained by integrating by parts
/// A*w[1,l] = D_eta(A*w[1,l-1]) - (D_eta A)*w[1,l-1] down to w[1,1].
CharacteristicIdentity characteristic_with_remainder(const CanonicalCurrent& c);

/// Space-time counterpart for a conserved current (T, X) free of principal
/// derivatives: mu = sum_j (-D_x)^j dT/du[1,j], remainder (0, X0) built
/// from D_x^k(u[2,0] - u[0,2]).
CharacteristicIdentity spacetime_characteristic_with_remainder(const Current& c);

bool is_trivial(const Current& c, const ReferenceJetPoint& base = {},
                const ZeroTestOptions& options = {});

/// Decomposition of a trivial canonical current. Throws PreconditionError
/// if the characteristic is nonzero and UnsupportedIntegrand if no
/// antiderivative exists in the supported class.
TrivialWitness trivial_witness(const CanonicalCurrent& c);

/// Euler criterion E(multiplier * equation) == 0.
bool is_characteristic(const Characteristic& ch, const ZeroTestOptions& options = {});

}  // namespace jetlaw
