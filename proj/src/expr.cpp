#include "jetlaw/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jetlaw {

namespace {

constexpr std::string_view kSymbolNames[] = {"xi", "eta", "t", "x"};

std::string_view function_name(AtomKind kind) {
    switch (kind) {
        case AtomKind::Exp: return "exp";
        case AtomKind::Sin: return "sin";
        case AtomKind::Cos: return "cos";
        case AtomKind::Ln: return "ln";
        default: return "";
    }
}

int degree(const Monomial& m) {
    int d = 0;
    for (const auto& [atom, k] : m) d += k;
    return d;
}

Monomial multiply_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::optional<Expr> exp_argument;
    auto push = [&](const Atom& atom, int k) {
        if (atom.kind() == AtomKind::Exp) {
            exp_argument = exp_argument ? *exp_argument + atom.argument() : atom.argument();
            return;
        }
        if (k != 0) out.emplace_back(atom, k);
    };
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const auto c = a[i].first <=> b[j].first;
        if (c < 0) {
            push(a[i].first, a[i].second);
            ++i;
        } else if (c > 0) {
            push(b[j].first, b[j].second);
            ++j;
        } else {
            if (a[i].first.kind() == AtomKind::Exp) {
                push(a[i].first, 1);
                push(b[j].first, 1);
            } else {
                push(a[i].first, a[i].second + b[j].second);
            }
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) push(a[i].first, a[i].second);
    for (; j < b.size(); ++j) push(b[j].first, b[j].second);
    if (exp_argument && !exp_argument->is_zero_literal()) {
        Factor f{Atom::function(AtomKind::Exp, *exp_argument), 1};
        auto pos = std::lower_bound(out.begin(), out.end(), f,
                                    [](const Factor& x, const Factor& y) { return x.first < y.first; });
        out.insert(pos, std::move(f));
    }
    return out;
}

// 1/S for a sum S with at least two terms, scaled so the leading term of
// the stored sum has coefficient one.
Expr reciprocal_of_sum(const Expr& sum) {
    const Rational lead = sum.terms().front().coefficient;
    Expr monic = sum * Expr(lead.inverse());
    return make_term(lead.inverse(), Monomial{{Atom::function(AtomKind::Reciprocal, monic), 1}});
}

void collect_vars(const Expr& e, std::set<Var>& out) {
    for (const auto& term : e.terms()) {
        for (const auto& [atom, k] : term.monomial) {
            if (auto v = atom.as_var()) {
                out.insert(*v);
            } else {
                collect_vars(atom.argument(), out);
            }
        }
    }
}

std::string print_factor(const Atom& atom, int k) {
    std::string base;
    switch (atom.kind()) {
        case AtomKind::Symbol: base = std::string(symbol_name(atom.symbol())); break;
        case AtomKind::Jet:
            base = atom.jet().name + "[" + std::to_string(atom.jet().first) + "," +
                   std::to_string(atom.jet().second) + "]";
            break;
        case AtomKind::Reciprocal: return "(" + atom.key() + ")^-" + std::to_string(k);
        default: base = std::string(function_name(atom.kind())) + "(" + atom.key() + ")"; break;
    }
    if (k != 1) base += "^" + std::to_string(k);
    return base;
}

}  // namespace

std::string_view symbol_name(Symbol s) { return kSymbolNames[static_cast<int>(s)]; }

std::optional<Symbol> symbol_from_name(std::string_view name) {
    for (int i = 0; i < 4; ++i)
        if (kSymbolNames[i] == name) return static_cast<Symbol>(i);
    return std::nullopt;
}

std::string to_string(const Var& v) {
    if (const auto* s = std::get_if<Symbol>(&v)) return std::string(symbol_name(*s));
    const auto& j = std::get<JetIndex>(v);
    return j.name + "[" + std::to_string(j.first) + "," + std::to_string(j.second) + "]";
}

// --- Atom ---------------------------------------------------------------

Atom Atom::symbol(Symbol s) {
    Atom a;
    a.kind_ = AtomKind::Symbol;
    a.symbol_ = s;
    return a;
}

Atom Atom::jet(JetIndex index) {
    Atom a;
    a.kind_ = AtomKind::Jet;
    a.jet_ = std::move(index);
    return a;
}

Atom Atom::function(AtomKind kind, Expr argument) {
    if (kind == AtomKind::Symbol || kind == AtomKind::Jet)
        throw std::invalid_argument("Atom::function needs a function kind");
    Atom a;
    a.kind_ = kind;
    std::string key = print(argument);
    a.payload_ = std::make_shared<const Payload>(Payload{std::move(argument), std::move(key)});
    return a;
}

const Expr& Atom::argument() const {
    if (!payload_) throw std::logic_error("atom has no argument");
    return payload_->argument;
}

const std::string& Atom::key() const {
    if (!payload_) throw std::logic_error("atom has no argument");
    return payload_->key;
}

std::optional<Var> Atom::as_var() const {
    if (kind_ == AtomKind::Symbol) return Var{symbol_};
    if (kind_ == AtomKind::Jet) return Var{jet_};
    return std::nullopt;
}

bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    switch (a.kind_) {
        case AtomKind::Symbol: return a.symbol_ <=> b.symbol_;
        case AtomKind::Jet: return a.jet_ <=> b.jet_;
        default: return a.payload_->key <=> b.payload_->key;
    }
}

// --- monomial order -------------------------------------------------------

int compare_monomials(const Monomial& a, const Monomial& b) {
    const int da = degree(a), db = degree(b);
    if (da != db) return da < db ? -1 : 1;
    auto i = a.rbegin(), j = b.rbegin();
    while (i != a.rend() || j != b.rend()) {
        int ea = 0, eb = 0;
        if (j == b.rend() || (i != a.rend() && (i->first <=> j->first) > 0)) {
            ea = i->second;
            ++i;
        } else if (i == a.rend() || (i->first <=> j->first) < 0) {
            eb = j->second;
            ++j;
        } else {
            ea = i->second;
            eb = j->second;
            ++i;
            ++j;
        }
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
}

// --- builder ------------------------------------------------------------

void ExprBuilder::add(const Rational& coefficient, const Monomial& monomial) {
    if (coefficient.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
    if (!inserted) it->second += coefficient;
}

void ExprBuilder::add(const Expr& e, const Rational& scale) {
    if (scale.is_zero()) return;
    for (const auto& t : e.terms()) add(t.coefficient * scale, t.monomial);
}

Expr ExprBuilder::build() && {
    auto out = std::make_shared<std::vector<Term>>();
    out->reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        if (!it->second.is_zero()) out->push_back(Term{it->second, it->first});
    terms_.clear();
    if (out->empty()) return Expr();
    return Expr(std::shared_ptr<const std::vector<Term>>(std::move(out)));
}

Expr make_term(const Rational& coefficient, Monomial monomial) {
    ExprBuilder b;
    b.add(coefficient, monomial);
    return std::move(b).build();
}

// --- Expr ----------------------------------------------------------------

Expr::Expr(const Rational& c) {
    if (!c.is_zero()) terms_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{c, {}}});
}

Expr Expr::symbol(Symbol s) { return make_term(Rational(1), Monomial{{Atom::symbol(s), 1}}); }

Expr Expr::jet(JetIndex index) {
    if (index.first < 0 || index.second < 0) throw std::invalid_argument("negative jet index");
    return make_term(Rational(1), Monomial{{Atom::jet(std::move(index)), 1}});
}

Expr Expr::jet(std::string name, int first, int second) {
    return jet(JetIndex{std::move(name), first, second});
}

Expr Expr::var(const Var& v) {
    if (const auto* s = std::get_if<Symbol>(&v)) return symbol(*s);
    return jet(std::get<JetIndex>(v));
}

std::span<const Term> Expr::terms() const {
    if (!terms_) return {};
    return {terms_->data(), terms_->size()};
}

std::optional<Rational> Expr::constant_value() const {
    if (is_zero_literal()) return Rational(0);
    if (terms_->size() == 1 && terms_->front().monomial.empty()) return terms_->front().coefficient;
    return std::nullopt;
}

Expr Expr::operator-() const {
    if (is_zero_literal()) return *this;
    auto out = std::make_shared<std::vector<Term>>(*terms_);
    for (auto& t : *out) t.coefficient = -t.coefficient;
    return Expr(std::shared_ptr<const std::vector<Term>>(std::move(out)));
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero_literal()) return b;
    if (b.is_zero_literal()) return a;
    // Both operands are sorted descending: merge.
    auto out = std::make_shared<std::vector<Term>>();
    out->reserve(a.terms_->size() + b.terms_->size());
    const auto& x = *a.terms_;
    const auto& y = *b.terms_;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const int c = compare_monomials(x[i].monomial, y[j].monomial);
        if (c > 0) {
            out->push_back(x[i++]);
        } else if (c < 0) {
            out->push_back(y[j++]);
        } else {
            Rational s = x[i].coefficient + y[j].coefficient;
            if (!s.is_zero()) out->push_back(Term{std::move(s), x[i].monomial});
            ++i;
            ++j;
        }
    }
    for (; i < x.size(); ++i) out->push_back(x[i]);
    for (; j < y.size(); ++j) out->push_back(y[j]);
    if (out->empty()) return Expr();
    return Expr(std::shared_ptr<const std::vector<Term>>(std::move(out)));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero_literal() || b.is_zero_literal()) return Expr();
    if (auto c = b.constant_value(); c && c->is_one()) return a;
    if (auto c = a.constant_value(); c && c->is_one()) return b;
    ExprBuilder builder;
    for (const auto& s : a.terms())
        for (const auto& t : b.terms())
            builder.add(s.coefficient * t.coefficient, multiply_monomials(s.monomial, t.monomial));
    return std::move(builder).build();
}

Expr& Expr::operator+=(const Expr& o) { return *this = *this + o; }
Expr& Expr::operator-=(const Expr& o) { return *this = *this - o; }
Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.terms_ == b.terms_) return true;
    const auto x = a.terms(), y = b.terms();
    return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

// --- constructors of transcendental terms ---------------------------------

Expr exp(const Expr& a) {
    if (a.is_zero_literal()) return Expr(1);
    if (a.terms().size() == 1) {
        const auto& t = a.terms().front();
        if (t.coefficient.is_one() && t.monomial.size() == 1 && t.monomial[0].second == 1 &&
            t.monomial[0].first.kind() == AtomKind::Ln)
            return t.monomial[0].first.argument();
    }
    return make_term(Rational(1), Monomial{{Atom::function(AtomKind::Exp, a), 1}});
}

Expr sin(const Expr& a) {
    if (a.is_zero_literal()) return Expr();
    if (a.terms().front().coefficient.sign() < 0) return -sin(-a);
    return make_term(Rational(1), Monomial{{Atom::function(AtomKind::Sin, a), 1}});
}

Expr cos(const Expr& a) {
    if (a.is_zero_literal()) return Expr(1);
    if (a.terms().front().coefficient.sign() < 0) return cos(-a);
    return make_term(Rational(1), Monomial{{Atom::function(AtomKind::Cos, a), 1}});
}

Expr ln(const Expr& a) {
    if (a.is_zero_literal()) throw std::domain_error("ln(0)");
    if (auto c = a.constant_value(); c && c->is_one()) return Expr();
    if (a.terms().size() == 1) {
        const auto& t = a.terms().front();
        if (t.coefficient.is_one() && t.monomial.size() == 1 &&
            t.monomial[0].first.kind() == AtomKind::Exp)
            return t.monomial[0].first.argument();
    }
    return make_term(Rational(1), Monomial{{Atom::function(AtomKind::Ln, a), 1}});
}

Expr pow(const Expr& base, int exponent) {
    if (exponent == 0) return Expr(1);
    if (exponent > 0) {
        Expr result(1), square = base;
        for (unsigned n = static_cast<unsigned>(exponent); n; n >>= 1) {
            if (n & 1u) result *= square;
            if (n > 1) square *= square;
        }
        return result;
    }
    if (base.is_zero_literal()) throw std::domain_error("negative power of zero");
    const unsigned magnitude = static_cast<unsigned>(-static_cast<long>(exponent));
    if (base.terms().size() > 1) return pow(reciprocal_of_sum(base), static_cast<int>(magnitude));

    const auto& term = base.terms().front();
    Monomial monomial;
    Expr expanded(1);
    for (const auto& [atom, k] : term.monomial) {
        switch (atom.kind()) {
            case AtomKind::Exp:
                expanded *= exp(atom.argument() * Expr(exponent));
                break;
            case AtomKind::Reciprocal:
                expanded *= pow(atom.argument(), k * static_cast<int>(magnitude));
                break;
            default: monomial.emplace_back(atom, k * exponent); break;
        }
    }
    return make_term(term.coefficient.pow(exponent), std::move(monomial)) * expanded;
}

Expr normalize(const Expr& e) { return e; }

// --- printing ----------------------------------------------------------

std::string print(const Expr& e) {
    if (e.is_zero_literal()) return "0";
    std::string out;
    bool first = true;
    for (const auto& term : e.terms()) {
        const bool negative = term.coefficient.sign() < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Rational magnitude = term.coefficient.abs();
        std::string body;
        for (const auto& [atom, k] : term.monomial) {
            if (!body.empty()) body += "*";
            body += print_factor(atom, k);
        }
        if (body.empty()) {
            out += magnitude.str();
        } else if (magnitude.is_one()) {
            out += body;
        } else {
            out += magnitude.str() + "*" + body;
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << print(e); }

// --- inspection & evaluation -----------------------------------------------

std::set<Var> free_vars(const Expr& e) {
    std::set<Var> out;
    collect_vars(e, out);
    return out;
}

std::set<JetIndex> jets_of(const Expr& e) {
    std::set<JetIndex> out;
    for (const auto& v : free_vars(e))
        if (const auto* j = std::get_if<JetIndex>(&v)) out.insert(*j);
    return out;
}

bool depends_on(const Expr& e, const Var& v) {
    for (const auto& term : e.terms()) {
        for (const auto& [atom, k] : term.monomial) {
            if (auto own = atom.as_var()) {
                if (*own == v) return true;
            } else if (depends_on(atom.argument(), v)) {
                return true;
            }
        }
    }
    return false;
}

double evaluate(const Expr& e, const Valuation& values) {
    double sum = 0.0;
    for (const auto& term : e.terms()) {
        double product = term.coefficient.to_double();
        for (const auto& [atom, k] : term.monomial) {
            double v = 0.0;
            switch (atom.kind()) {
                case AtomKind::Symbol:
                case AtomKind::Jet: v = values(*atom.as_var()); break;
                case AtomKind::Exp: v = std::exp(evaluate(atom.argument(), values)); break;
                case AtomKind::Sin: v = std::sin(evaluate(atom.argument(), values)); break;
                case AtomKind::Cos: v = std::cos(evaluate(atom.argument(), values)); break;
                case AtomKind::Ln: v = std::log(evaluate(atom.argument(), values)); break;
                case AtomKind::Reciprocal: v = 1.0 / evaluate(atom.argument(), values); break;
            }
            product *= k == 1 ? v : std::pow(v, k);
        }
        sum += product;
    }
    return sum;
}

std::optional<Rational> evaluate_exact(const Expr& e,
                                       const std::function<Rational(const Var&)>& values) {
    Rational sum;
    for (const auto& term : e.terms()) {
        Rational product = term.coefficient;
        for (const auto& [atom, k] : term.monomial) {
            Rational v;
            if (auto var = atom.as_var()) {
                v = values(*var);
            } else if (atom.kind() == AtomKind::Reciprocal) {
                auto s = evaluate_exact(atom.argument(), values);
                if (!s || s->is_zero()) return std::nullopt;
                v = s->inverse();
            } else {
                return std::nullopt;
            }
            if (v.is_zero() && k < 0) return std::nullopt;
            product *= v.pow(k);
        }
        sum += product;
    }
    return sum;
}

}  // namespace jetlaw
