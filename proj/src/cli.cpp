#include "jetlaw/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "jetlaw/config.hpp"
#include "jetlaw/conservation.hpp"
#include "jetlaw/errors.hpp"
#include "jetlaw/frame_transform.hpp"
#include "jetlaw/golden.hpp"
#include "jetlaw/numeric_oracle.hpp"

namespace jetlaw::cli {

namespace {

using json = nlohmann::json;

// Bad user input; maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A check that ran and came out negative; maps to exit code 1.
class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<std::string> config_path;
    std::optional<std::string> format, seed, samples, tolerance;
    std::vector<std::string> reference;

    std::string frame = "lightcone";
    std::optional<std::string> first, second, multiplier, input;
    std::string expr;

    std::string to, kind = "current";
    std::string solution, rect = "0,1,0,1";
    int nodes = 128;
};

Expr parse_field(const std::string& text, const std::string& label) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        std::ostringstream os;
        os << "cannot parse " << label << " \"" << text << "\": " << e.what() << "\n  " << text << "\n  "
           << std::string(std::min(e.position(), text.size()), ' ') << '^';
        throw InputError(os.str());
    }
}

Frame frame_named(const std::string& name) {
    try {
        return Frame::from_name(name);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

json read_document(const Options& o, std::istream& in) {
    std::string text;
    if (*o.input == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
    } else {
        std::ifstream file(*o.input);
        if (!file) throw InputError("cannot read input document " + *o.input);
        text.assign(std::istreambuf_iterator<char>(file), {});
    }
    try {
        json doc = json::parse(text);
        if (!doc.is_object()) throw InputError("input document must be a JSON object");
        return doc;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed input document: ") + e.what());
    }
}

std::string string_field(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_string()) throw InputError(std::string("input document lacks string field \"") + key + "\"");
    return it->get<std::string>();
}

Current read_current(const Options& o, std::istream& in) {
    Current c{frame_named(o.frame), Expr(0), Expr(0)};
    if (o.input) {
        const json doc = read_document(o, in);
        c.frame = frame_named(string_field(doc, "frame"));
        c.first = parse_field(string_field(doc, "first"), "first component");
        c.second = parse_field(string_field(doc, "second"), "second component");
    } else {
        if (!o.first || !o.second) throw InputError("a current needs --first and --second, or --input");
        c.first = parse_field(*o.first, "first component");
        c.second = parse_field(*o.second, "second component");
    }
    try {
        check_frame(c.first, c.frame);
        check_frame(c.second, c.frame);
    } catch (const FrameMismatch& e) {
        throw InputError(e.what());
    }
    return c;
}

Characteristic read_characteristic(const Options& o, std::istream& in) {
    Characteristic ch{frame_named(o.frame), Expr(0)};
    if (o.input) {
        const json doc = read_document(o, in);
        ch.frame = frame_named(string_field(doc, "frame"));
        ch.multiplier = parse_field(string_field(doc, "multiplier"), "multiplier");
    } else {
        if (!o.multiplier) throw InputError("a characteristic needs --multiplier or --input");
        ch.multiplier = parse_field(*o.multiplier, "multiplier");
    }
    try {
        check_frame(ch.multiplier, ch.frame);
    } catch (const FrameMismatch& e) {
        throw InputError(e.what());
    }
    return ch;
}

json current_document(const Current& c, const char* kind = "current") {
    return {{"kind", kind}, {"frame", std::string(c.frame.name())}, {"first", print(c.first)}, {"second", print(c.second)}};
}

json characteristic_document(const Characteristic& ch) {
    return {{"kind", "characteristic"}, {"frame", std::string(ch.frame.name())}, {"multiplier", print(ch.multiplier)}};
}

Current as_lightcone(const Current& c) {
    return c.frame.id() == FrameId::Lightcone ? c : current_to_lightcone(c);
}

class Command {
public:
    Command(const Options& o, const Config& cfg, std::istream& in, std::ostream& out)
        : o_(o), cfg_(cfg), in_(in), out_(out) {}

    int parse_cmd() {
        const Expr e = parse_field(o_.expr, "expression");
        if (json_out()) {
            emit_json({{"kind", "expression"}, {"expr", print(e)}});
        } else {
            out_ << print(e) << '\n';
        }
        return kOk;
    }

    int verify() {
        const Current c = read_current(o_, in_);
        const bool ok = verify_current(c, cfg_.zero_test());
        if (json_out()) {
            emit_json({{"kind", "verification"}, {"frame", std::string(c.frame.name())}, {"conserved", ok}});
        } else {
            out_ << "conserved: " << (ok ? "true" : "false") << '\n';
        }
        return ok ? kOk : kCheckFailed;
    }

    int normalize() {
        const CanonicalCurrent canonical = normalized(read_current(o_, in_));
        emit_current(canonical.current(), "canonical-current");
        return kOk;
    }

    int characteristic() {
        const Current c = read_current(o_, in_);
        Characteristic ch = characteristic_canonical(normalized(c));
        if (c.frame.id() == FrameId::Spacetime) ch = characteristic_to_spacetime(ch);
        if (json_out()) {
            emit_json(characteristic_document(ch));
        } else if (is_zero(ch.multiplier, cfg_.zero_test()).zero) {
            out_ << "0 (trivial)\n";
        } else {
            out_ << print(ch.multiplier) << '\n';
        }
        return kOk;
    }

    int is_trivial_cmd() {
        const Current c = read_current(o_, in_);
        requires_conserved(c);
        const bool trivial = is_trivial(as_lightcone(c), cfg_.reference_point(), cfg_.zero_test());
        if (json_out()) {
            emit_json({{"kind", "triviality"}, {"frame", std::string(c.frame.name())}, {"trivial", trivial}});
        } else {
            out_ << "trivial: " << (trivial ? "true" : "false") << '\n';
        }
        return trivial ? kOk : kCheckFailed;
    }

    int witness() {
        const TrivialWitness w = trivial_witness(normalized(read_current(o_, in_)));
        if (json_out()) {
            emit_json({{"kind", "witness"},
                  {"frame", "lightcone"},
                  {"first", print(w.f_tilde)},
                  {"second", print(w.g_tilde)},
                  {"constant", w.constant.str()}});
        } else {
            out_ << "f_tilde: " << print(w.f_tilde) << "\ng_tilde: " << print(w.g_tilde)
                 << "\nconstant: " << w.constant << '\n';
        }
        return kOk;
    }

    int is_characteristic_cmd() {
        const Characteristic ch = read_characteristic(o_, in_);
        const Expr euler = euler_operator(ch.multiplier * ch.frame.equation(), ch.frame);
        const bool ok = is_characteristic(ch, cfg_.zero_test());
        if (json_out()) {
            emit_json({{"kind", "characteristic-check"},
                  {"frame", std::string(ch.frame.name())},
                  {"characteristic", ok},
                  {"euler", print(euler)}});
        } else {
            out_ << "characteristic: " << (ok ? "true" : "false") << '\n';
            if (!ok) out_ << "euler: " << print(euler) << '\n';
        }
        return ok ? kOk : kCheckFailed;
    }

    int pullback() {
        const Frame target = frame_named(o_.to);
        if (o_.kind == "current") {
            const Current c = read_current(o_, in_);
            if (c.frame == target) throw InputError("current is already in the " + o_.to + " frame");
            const Current image = target.id() == FrameId::Spacetime ? current_to_spacetime(c) : current_to_lightcone(c);
            emit_json(current_document(image));
        } else {
            const Characteristic ch = read_characteristic(o_, in_);
            if (ch.frame == target) throw InputError("characteristic is already in the " + o_.to + " frame");
            const Characteristic image =
                target.id() == FrameId::Spacetime ? characteristic_to_spacetime(ch) : characteristic_to_lightcone(ch);
            emit_json(characteristic_document(image));
        }
        return kOk;
    }

    int numcheck() {
        const Current c = read_current(o_, in_);
        Solution solution = parse_solution();
        Rectangle rect = parse_rect();
        ConservationResidual r;
        try {
            r = check_conservation(c, solution, rect);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        const bool ok = r.residual < cfg_.tolerance;
        if (json_out()) {
            emit_json({{"kind", "numeric-check"},
                  {"residual", r.residual},
                  {"ratio", std::isnan(r.ratio) ? json(nullptr) : json(r.ratio)},
                  {"nodes", rect.nodes},
                  {"conserved", ok}});
        } else {
            out_ << std::setprecision(6) << "residual: " << r.residual << "\nratio: " << r.ratio
                 << "\nconserved: " << (ok ? "true" : "false") << '\n';
        }
        return ok ? kOk : kCheckFailed;
    }

    int golden() {
        const auto results = run_golden(cfg_);
        std::size_t passed = 0;
        for (const auto& r : results) passed += r.pass ? 1 : 0;
        if (json_out()) {
            json cases = json::array();
            for (const auto& r : results) cases.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            emit_json({{"kind", "golden"}, {"cases", cases}, {"passed", passed}, {"total", results.size()}});
        } else {
            for (std::size_t k = 0; k < results.size(); ++k) {
                const auto& r = results[k];
                out_ << std::setw(3) << k + 1 << "  " << std::left << std::setw(32) << r.name << std::right
                     << (r.pass ? "pass" : "FAIL");
                if (!r.pass) out_ << "  " << r.detail;
                out_ << '\n';
            }
            out_ << passed << '/' << results.size() << " pass\n";
        }
        return passed == results.size() ? kOk : kCheckFailed;
    }

private:
    bool json_out() const { return cfg_.format == OutputFormat::Json; }

    void emit_json(const json& doc) { out_ << doc.dump(2) << '\n'; }

    void emit_current(const Current& c, const char* kind) {
        if (json_out()) {
            emit_json(current_document(c, kind));
        } else {
            out_ << "frame: " << c.frame.name() << "\nfirst: " << print(c.first) << "\nsecond: " << print(c.second)
                 << '\n';
        }
    }

    void requires_conserved(const Current& c) {
        if (!verify_current(c, cfg_.zero_test())) throw CheckFailure("current is not conserved");
    }

    CanonicalCurrent normalized(const Current& c) {
        try {
            return normalize_current(as_lightcone(c), cfg_.reference_point());
        } catch (const NotConserved& e) {
            throw CheckFailure(e.what());
        }
    }

    Solution parse_solution() const {
        if (o_.solution.empty()) throw InputError("numcheck needs --solution \"<f-spec>;<g-spec>\"");
        try {
            return Solution::parse(o_.solution);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }

    Rectangle parse_rect() const {
        std::vector<double> v;
        std::stringstream ss(o_.rect);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                v.push_back(parse_real(item));
            } catch (const std::invalid_argument& e) {
                throw InputError(std::string("--rect: ") + e.what());
            }
        }
        if (v.size() != 4) throw InputError("--rect needs t0,t1,x0,x1");
        return Rectangle{v[0], v[1], v[2], v[3], o_.nodes};
    }

    const Options& o_;
    const Config& cfg_;
    std::istream& in_;
    std::ostream& out_;
};

void add_current_options(CLI::App* sub, Options& o) {
    sub->add_option("--frame", o.frame, "lightcone or spacetime")->capture_default_str();
    sub->add_option("--first", o.first, "first component (F or T)");
    sub->add_option("--second", o.second, "second component (G or X)");
    sub->add_option("--input", o.input, "JSON current document, '-' for stdin");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
    Options o;
    CLI::App app{"Conservation laws of the 1+1 wave equation in jet space", "jetlaw"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--config", o.config_path, "key=value configuration file");
    app.add_option("--format", o.format, "text or json");
    app.add_option("--seed", o.seed, "seed for the probabilistic zero test");
    app.add_option("--samples", o.samples, "sample count for the probabilistic zero test");
    app.add_option("--tolerance", o.tolerance, "numeric tolerance for numcheck and golden");
    app.add_option("--ref", o.reference, "base-point override var=value, repeatable");

    auto* parse_sub = app.add_subcommand("parse", "print the canonical form of an expression");
    parse_sub->add_option("expr", o.expr, "expression")->required();

    auto* verify_sub = app.add_subcommand("verify", "check that a current is conserved");
    add_current_options(verify_sub, o);
    auto* normalize_sub = app.add_subcommand("normalize", "bring a conserved current to canonical form");
    add_current_options(normalize_sub, o);
    auto* char_sub = app.add_subcommand("characteristic", "characteristic of a conserved current");
    add_current_options(char_sub, o);
    auto* trivial_sub = app.add_subcommand("is-trivial", "decide whether a conserved current is trivial");
    add_current_options(trivial_sub, o);
    auto* witness_sub = app.add_subcommand("witness", "potentials exhibiting a trivial current");
    add_current_options(witness_sub, o);

    auto* is_char_sub = app.add_subcommand("is-characteristic", "Euler test for a multiplier");
    is_char_sub->add_option("--frame", o.frame, "lightcone or spacetime")->capture_default_str();
    is_char_sub->add_option("--multiplier", o.multiplier, "multiplier expression");
    is_char_sub->add_option("--input", o.input, "JSON characteristic document, '-' for stdin");

    auto* pullback_sub = app.add_subcommand("pullback", "map a current or characteristic to the other frame");
    add_current_options(pullback_sub, o);
    pullback_sub->add_option("--to", o.to, "target frame")->required()->check(CLI::IsMember({"spacetime", "lightcone"}));
    pullback_sub->add_option("--kind", o.kind, "current or characteristic")
        ->capture_default_str()
        ->check(CLI::IsMember({"current", "characteristic"}));
    pullback_sub->add_option("--multiplier", o.multiplier, "multiplier expression");

    auto* numcheck_sub = app.add_subcommand("numcheck", "contour-integral check along an exact solution");
    add_current_options(numcheck_sub, o);
    numcheck_sub->add_option("--solution", o.solution, "\"<f-spec>;<g-spec>\"")->required();
    numcheck_sub->add_option("--rect", o.rect, "t0,t1,x0,x1")->capture_default_str();
    numcheck_sub->add_option("--nodes", o.nodes, "Simpson subintervals per edge")->capture_default_str();

    auto* golden_sub = app.add_subcommand("golden", "run the regression suite");

    std::vector<const char*> argv{"jetlaw"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        Config cfg;
        if (o.config_path) cfg.load_file(*o.config_path);
        cfg.load_environment(env);
        if (o.format) cfg.set("format", *o.format);
        if (o.seed) cfg.set("seed", *o.seed);
        if (o.samples) cfg.set("samples", *o.samples);
        if (o.tolerance) cfg.set("tolerance", *o.tolerance);
        for (const auto& r : o.reference) cfg.set("reference", r);

        Command cmd(o, cfg, in, out);
        if (parse_sub->parsed()) return cmd.parse_cmd();
        if (verify_sub->parsed()) return cmd.verify();
        if (normalize_sub->parsed()) return cmd.normalize();
        if (char_sub->parsed()) return cmd.characteristic();
        if (trivial_sub->parsed()) return cmd.is_trivial_cmd();
        if (witness_sub->parsed()) return cmd.witness();
        if (is_char_sub->parsed()) return cmd.is_characteristic_cmd();
        if (pullback_sub->parsed()) return cmd.pullback();
        if (numcheck_sub->parsed()) return cmd.numcheck();
        if (golden_sub->parsed()) return cmd.golden();
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const FrameMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const CheckFailure& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const NotConserved& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const PreconditionError& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const UnsupportedIntegrand& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kCheckFailed;
    }
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    return run(args, in, out, err, [](const char* name) { return std::getenv(name); });
}

}  // namespace jetlaw::cli
