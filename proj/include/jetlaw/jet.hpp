#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "jetlaw/expr.hpp"

namespace jetlaw {

enum class FrameId { Lightcone, Spacetime };
enum class Direction { First, Second };

/// Coordinate system of the wave equation.
///
///   Lightcone: independent (xi, eta), dependent w, equation w[1,1] = 0;
///              principal derivatives are the mixed ones w[k,l], k,l >= 1.
///   Spacetime: independent (t, x), dependent u, equation u[2,0] - u[0,2] = 0;
///              principal derivatives are u[i,j] with i >= 2.
class Frame {
public:
    static Frame lightcone() { return Frame(FrameId::Lightcone); }
    static Frame spacetime() { return Frame(FrameId::Spacetime); }
    /// Accepts "lightcone" or "spacetime"; throws std::invalid_argument.
    static Frame from_name(std::string_view name);

    FrameId id() const { return id_; }
    std::string_view name() const;
    Symbol independent(Direction d) const;
    std::string dependent() const;
    JetIndex jet(int first, int second) const { return {dependent(), first, second}; }
    Expr jet_expr(int first, int second) const { return Expr::jet(jet(first, second)); }

    bool is_principal(const JetIndex& j) const;
    /// Left-hand side of the equation.
    Expr equation() const;

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    explicit Frame(FrameId id) : id_(id) {}
    FrameId id_;
};

/// Throws FrameMismatch if e mentions a symbol or dependent variable that
/// does not belong to fr.
void check_frame(const Expr& e, const Frame& fr);

/// Highest derivative order among fr's jet coordinates in e; nullopt when
/// e involves none.
std::optional<int> order_bound(const Expr& e, const Frame& fr);

/// Unrestricted total derivative in the whole jet space.
Expr total_derivative(const Expr& e, const Frame& fr, Direction dir);

/// Total derivative evaluated on solutions. e must already be free of
/// principal derivatives; PreconditionError names the offending jet.
Expr restricted_derivative(const Expr& e, const Frame& fr, Direction dir);

/// Eliminates principal derivatives: Lightcone sets mixed jets to zero,
/// Spacetime rewrites u[i,j] -> u[i mod 2, j + 2*(i div 2)].
Expr reduce_to_solutions(const Expr& e, const Frame& fr);

/// Euler operator sum_{i,j} (-D_1)^i (-D_2)^j d/du_{ij} L over the jets
/// occurring in L, computed in the unrestricted jet space.
Expr euler_operator(const Expr& lagrangian, const Frame& fr);

}  // namespace jetlaw
