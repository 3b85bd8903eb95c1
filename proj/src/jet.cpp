#include "jetlaw/jet.hpp"

#include <stdexcept>

#include "jetlaw/calculus.hpp"
#include "jetlaw/errors.hpp"

namespace jetlaw {

namespace {

JetIndex shifted(const JetIndex& j, Direction dir) {
    return dir == Direction::First ? JetIndex{j.name, j.first + 1, j.second}
                                   : JetIndex{j.name, j.first, j.second + 1};
}

// Non-principal representative of a jet on the solution manifold; nullopt
// when it vanishes there.
std::optional<JetIndex> reduced_jet(const JetIndex& j, const Frame& fr) {
    if (fr.id() == FrameId::Lightcone) {
        if (j.first >= 1 && j.second >= 1) return std::nullopt;
        return j;
    }
    return JetIndex{j.name, j.first % 2, j.second + 2 * (j.first / 2)};
}

void require_reduced(const Expr& e, const Frame& fr) {
    for (const auto& j : jets_of(e))
        if (fr.is_principal(j))
            throw PreconditionError("principal derivative " + to_string(Var{j}) + " in " + print(e) +
                                    " (expected an expression reduced to solutions)");
}

}  // namespace

Frame Frame::from_name(std::string_view name) {
    if (name == "lightcone") return lightcone();
    if (name == "spacetime") return spacetime();
    throw std::invalid_argument("unknown frame '" + std::string(name) +
                                "' (expected lightcone or spacetime)");
}

std::string_view Frame::name() const { return id_ == FrameId::Lightcone ? "lightcone" : "spacetime"; }

Symbol Frame::independent(Direction d) const {
    if (id_ == FrameId::Lightcone) return d == Direction::First ? Symbol::Xi : Symbol::Eta;
    return d == Direction::First ? Symbol::T : Symbol::X;
}

std::string Frame::dependent() const { return id_ == FrameId::Lightcone ? "w" : "u"; }

bool Frame::is_principal(const JetIndex& j) const {
    if (id_ == FrameId::Lightcone) return j.first >= 1 && j.second >= 1;
    return j.first >= 2;
}

Expr Frame::equation() const {
    if (id_ == FrameId::Lightcone) return jet_expr(1, 1);
    return jet_expr(2, 0) - jet_expr(0, 2);
}

void check_frame(const Expr& e, const Frame& fr) {
    const std::string dep = fr.dependent();
    for (const auto& v : free_vars(e)) {
        if (const auto* s = std::get_if<Symbol>(&v)) {
            if (*s != fr.independent(Direction::First) && *s != fr.independent(Direction::Second))
                throw FrameMismatch("symbol '" + std::string(symbol_name(*s)) + "' does not belong to the " +
                                    std::string(fr.name()) + " frame");
        } else if (std::get<JetIndex>(v).name != dep) {
            throw FrameMismatch("dependent variable '" + std::get<JetIndex>(v).name +
                                "' does not belong to the " + std::string(fr.name()) + " frame (expected '" +
                                dep + "')");
        }
    }
}

std::optional<int> order_bound(const Expr& e, const Frame& fr) {
    std::optional<int> r;
    for (const auto& j : jets_of(e))
        if (j.name == fr.dependent() && (!r || j.order() > *r)) r = j.order();
    return r;
}

Expr total_derivative(const Expr& e, const Frame& fr, Direction dir) {
    check_frame(e, fr);
    const Symbol own = fr.independent(dir);
    return apply_derivation(e, [&](const Var& v) -> Expr {
        if (const auto* s = std::get_if<Symbol>(&v)) return *s == own ? Expr(1) : Expr();
        return Expr::jet(shifted(std::get<JetIndex>(v), dir));
    });
}

Expr restricted_derivative(const Expr& e, const Frame& fr, Direction dir) {
    check_frame(e, fr);
    require_reduced(e, fr);
    const Symbol own = fr.independent(dir);
    // Reduction is a ring map fixing non-principal jets, so it can be
    // applied to the image of each jet instead of to the whole result.
    return apply_derivation(e, [&](const Var& v) -> Expr {
        if (const auto* s = std::get_if<Symbol>(&v)) return *s == own ? Expr(1) : Expr();
        auto r = reduced_jet(shifted(std::get<JetIndex>(v), dir), fr);
        return r ? Expr::jet(*r) : Expr();
    });
}

Expr reduce_to_solutions(const Expr& e, const Frame& fr) {
    const std::string dep = fr.dependent();
    return substitute(e, [&](const Var& v) -> std::optional<Expr> {
        const auto* j = std::get_if<JetIndex>(&v);
        if (!j || j->name != dep || !fr.is_principal(*j)) return std::nullopt;
        auto r = reduced_jet(*j, fr);
        return r ? Expr::jet(*r) : Expr();
    });
}

Expr euler_operator(const Expr& lagrangian, const Frame& fr) {
    check_frame(lagrangian, fr);
    ExprBuilder out;
    for (const auto& j : jets_of(lagrangian)) {
        Expr term = diff_partial(lagrangian, Var{j});
        for (int i = 0; i < j.first && !term.is_zero_literal(); ++i)
            term = -total_derivative(term, fr, Direction::First);
        for (int i = 0; i < j.second && !term.is_zero_literal(); ++i)
            term = -total_derivative(term, fr, Direction::Second);
        out.add(term);
    }
    return std::move(out).build();
}

}  // namespace jetlaw
