#pragma once

// Floating-point verification of conservation laws along exact d'Alembert
// solutions u(t, x) = f(x + t) + g(x - t). Nothing here feeds back into the
// symbolic core.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jetlaw/conservation.hpp"

namespace jetlaw {

/// Parses "p/q" or a decimal literal. Throws std::invalid_argument.
double parse_real(std::string_view text);

/// One summand of a profile: sum_k c_k s^k, sin(a s + b), cos(a s + b) or
/// exp(a s + b).
struct ProfileAtom {
    enum class Kind { Poly, Sin, Cos, Exp };
    Kind kind = Kind::Poly;
    std::vector<double> coefficients;
    double a = 0.0;
    double b = 0.0;

    double derivative(int n, double s) const;
};

/// Unary function built as a finite sum of profile atoms.
class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<ProfileAtom> atoms) : atoms_(std::move(atoms)) {}

    /// "poly:c0,c1,...", "sin:a,b", "cos:a,b", "exp:a,b" joined with '+';
    /// "0" or an empty string is the zero profile. Coefficients may be
    /// rationals "p/q". Throws std::invalid_argument.
    static Profile parse(std::string_view text);

    double derivative(int n, double s) const;

private:
    std::vector<ProfileAtom> atoms_;
};

/// u(t, x) = f(x + t) + g(x - t).
class Solution {
public:
    Solution(Profile f, Profile g) : f_(std::move(f)), g_(std::move(g)) {}

    /// "<f-spec>;<g-spec>".
    static Solution parse(std::string_view text);

    /// d^i/dt^i d^j/dx^j u at (t, x).
    double u(int i, int j, double t, double x) const;
    /// d^k/dxi^k d^l/deta^l w at (xi, eta); mixed derivatives vanish.
    double w(int k, int l, double xi, double eta) const;

private:
    Profile f_;
    Profile g_;
};

using JetValues = std::map<JetIndex, double>;

/// All jets of order <= max_order (at most 10) at a point given in the
/// frame's own coordinates: (t, x) or (xi, eta).
JetValues eval_jet(const Solution& s, const Frame& fr, std::array<double, 2> point, int max_order);

struct Rectangle {
    double t0 = 0.0, t1 = 1.0;
    double x0 = 0.0, x1 = 1.0;
    /// Simpson subintervals per edge; even and >= 16.
    int nodes = 128;
};

struct ConservationResidual {
    /// |closed contour integral of T dx - X dt| with `nodes` subintervals.
    double residual = 0.0;
    /// residual(nodes/2) / residual(nodes); about 16 for Simpson when the
    /// current is conserved. NaN when residual is exactly zero.
    double ratio = 0.0;
};

/// Signed contour integral over the boundary of r in the (t, x) plane.
/// Light-cone currents (F, G) enter as (T, X) = (F - G, F + G).
double contour_integral(const Current& c, const Solution& s, const Rectangle& r);

ConservationResidual check_conservation(const Current& c, const Solution& s, const Rectangle& r);

/// Largest |Div(c) - multiplier*equation - Div(remainder)| over the sample
/// points, with every jet value shifted off the solution by a seeded random
/// rational in [-1, 1]. Points are in the frame's coordinates. The
/// remainder comes from characteristic_with_remainder (light cone, c
/// canonical) or spacetime_characteristic_with_remainder (space-time).
double check_characteristic_numeric(const Characteristic& ch, const Current& c, const Solution& s,
                                    std::span<const std::array<double, 2>> points,
                                    std::uint64_t seed = 42);

}  // namespace jetlaw
