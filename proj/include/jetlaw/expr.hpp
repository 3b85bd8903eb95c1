#pragma once

// Immutable symbolic expressions over jet coordinates.
//
// An Expr is always held in canonical form: a sum of terms, each a nonzero
// rational coefficient times a monomial. Every constructor and arithmetic
// operator returns canonical values, so structural equality (operator==) is
// equality of canonical forms.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "jetlaw/rational.hpp"

namespace jetlaw {

/// Independent variables of the two supported frames.
enum class Symbol : std::uint8_t { Xi, Eta, T, X };

std::string_view symbol_name(Symbol s);
std::optional<Symbol> symbol_from_name(std::string_view name);

/// Jet coordinate name[first, second]: the derivative of the dependent
/// variable `name` taken `first` times in the frame's first independent
/// variable and `second` times in its second one.
struct JetIndex {
    std::string name;
    int first = 0;
    int second = 0;

    int order() const { return first + second; }
    auto operator<=>(const JetIndex&) const = default;
};

/// Anything that can be differentiated against, integrated over or
/// substituted for.
using Var = std::variant<Symbol, JetIndex>;

std::string to_string(const Var& v);

struct Term;

class Expr {
public:
    /// The zero expression.
    Expr() = default;
    Expr(const Rational& c);
    Expr(long c) : Expr(Rational(c)) {}
    Expr(int c) : Expr(Rational(c)) {}

    static Expr symbol(Symbol s);
    static Expr jet(JetIndex index);
    static Expr jet(std::string name, int first, int second);
    static Expr var(const Var& v);

    std::span<const Term> terms() const;

    /// True for the literal zero. Canonical forms make this exact on the
    /// decidable fragment; see zero_test.hpp for the general test.
    bool is_zero_literal() const { return !terms_ || terms_->empty(); }
    std::optional<Rational> constant_value() const;

    Expr operator-() const;
    Expr& operator+=(const Expr& o);
    Expr& operator-=(const Expr& o);
    Expr& operator*=(const Expr& o);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend bool operator==(const Expr& a, const Expr& b);

private:
    friend class ExprBuilder;
    explicit Expr(std::shared_ptr<const std::vector<Term>> terms) : terms_(std::move(terms)) {}

    std::shared_ptr<const std::vector<Term>> terms_;
};

enum class AtomKind : std::uint8_t { Symbol, Jet, Exp, Sin, Cos, Ln, Reciprocal };

/// A multiplicative base inside a monomial. Function atoms (exp, sin, cos,
/// ln) carry a canonical argument; a Reciprocal atom carries a canonical
/// multi-term sum S and stands for 1/S.
class Atom {
public:
    static Atom symbol(Symbol s);
    static Atom jet(JetIndex index);
    /// Builds a function atom without simplification; use the free
    /// functions exp/sin/cos/ln/pow to construct expressions.
    static Atom function(AtomKind kind, Expr argument);

    AtomKind kind() const { return kind_; }
    bool is_function() const { return kind_ != AtomKind::Symbol && kind_ != AtomKind::Jet; }
    Symbol symbol() const { return symbol_; }
    const JetIndex& jet() const { return jet_; }
    const Expr& argument() const;
    /// Printed argument; orders function atoms of the same kind.
    const std::string& key() const;
    std::optional<Var> as_var() const;

    friend bool operator==(const Atom& a, const Atom& b);
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

private:
    struct Payload {
        Expr argument;
        std::string key;
    };

    AtomKind kind_ = AtomKind::Symbol;
    Symbol symbol_ = Symbol::Xi;
    JetIndex jet_;
    std::shared_ptr<const Payload> payload_;
};

using Factor = std::pair<Atom, int>;
/// Factors sorted ascending by atom with nonzero exponents. Exp atoms
/// always carry exponent 1; Reciprocal atoms carry positive exponents.
using Monomial = std::vector<Factor>;

struct Term {
    Rational coefficient;
    Monomial monomial;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Graded lexicographic order: total degree first, then the exponent of
/// the greatest atom. Returns <0, 0, >0.
int compare_monomials(const Monomial& a, const Monomial& b);

/// Accumulates terms and emits a canonical Expr.
class ExprBuilder {
public:
    void add(const Rational& coefficient, const Monomial& monomial);
    void add(const Expr& e, const Rational& scale = Rational(1));
    Expr build() &&;

private:
    struct Less {
        bool operator()(const Monomial& a, const Monomial& b) const {
            return compare_monomials(a, b) < 0;
        }
    };
    std::map<Monomial, Rational, Less> terms_;
};

Expr make_term(const Rational& coefficient, Monomial monomial);

Expr exp(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr ln(const Expr& a);
/// Integer power. Negative powers of multi-term sums become Reciprocal
/// atoms; throws std::domain_error for negative powers of zero.
Expr pow(const Expr& base, int exponent);

/// Returns e. Expressions are canonical by construction; kept as an
/// explicit entry point for callers that want to state intent.
Expr normalize(const Expr& e);

std::string print(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Parses the text grammar
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor | '/' int)*
///   factor := base ('^' ['-'] int)?
///   base   := int | symbol | name '[' int ',' int ']' | name
///           | func '(' expr ')' | '(' expr ')'
/// with symbol in {xi, eta, t, x} and func in {exp, sin, cos, ln}. A bare
/// name denotes the dependent variable itself, name[0,0].
Expr parse(std::string_view text);

/// Symbols and jet coordinates occurring anywhere in e, including inside
/// function arguments.
std::set<Var> free_vars(const Expr& e);
std::set<JetIndex> jets_of(const Expr& e);
bool depends_on(const Expr& e, const Var& v);

using Valuation = std::function<double(const Var&)>;
double evaluate(const Expr& e, const Valuation& values);

/// Exact evaluation; nullopt when e contains exp/sin/cos/ln or a
/// reciprocal of a sum vanishing at the point.
std::optional<Rational> evaluate_exact(const Expr& e,
                                       const std::function<Rational(const Var&)>& values);

}  // namespace jetlaw
