#include "jetlaw/config.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace jetlaw {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

Var parse_var(const std::string& text) {
    if (auto s = symbol_from_name(text)) return *s;
    const Expr e = parse(text);
    if (e.terms().size() == 1 && e.terms()[0].coefficient.is_one() && e.terms()[0].monomial.size() == 1 &&
        e.terms()[0].monomial[0].second == 1) {
        if (auto v = e.terms()[0].monomial[0].first.as_var()) return *v;
    }
    throw std::invalid_argument("'" + text + "' is not a symbol or jet coordinate");
}

}  // namespace

void Config::set(std::string_view raw_key, std::string_view raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    try {
        if (key == "seed") {
            seed = std::stoull(value);
        } else if (key == "samples") {
            samples = std::stoi(value);
            if (samples < 1) throw std::invalid_argument("samples must be positive");
        } else if (key == "tolerance") {
            tolerance = std::stod(value);
        } else if (key == "format") {
            if (value == "text") {
                format = OutputFormat::Text;
            } else if (value == "json") {
                format = OutputFormat::Json;
            } else {
                throw std::invalid_argument("format must be text or json");
            }
        } else if (key == "reference") {
            std::size_t start = 0;
            while (start <= value.size()) {
                const auto end = value.find(';', start);
                const std::string item = trim(std::string_view(value).substr(start, end - start));
                if (!item.empty()) {
                    const auto eq = item.find('=');
                    if (eq == std::string::npos) throw std::invalid_argument("reference entry needs var=value");
                    reference[parse_var(trim(item.substr(0, eq)))] = Rational::parse(trim(item.substr(eq + 1)));
                }
                if (end == std::string::npos) break;
                start = end + 1;
            }
        } else {
            throw std::invalid_argument("unknown configuration key '" + key + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("config " + key + "=" + value + ": " + e.what());
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("config " + key + "=" + value + ": out of range");
    }
}

void Config::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path.string());
    std::string line;
    while (std::getline(in, line)) {
        const std::string content = trim(line.substr(0, line.find('#')));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line without '=': " + content);
        set(content.substr(0, eq), content.substr(eq + 1));
    }
}

void Config::load_environment(const std::function<const char*(const char*)>& getenv) {
    for (const char* key : {"seed", "samples", "tolerance", "format", "reference"}) {
        std::string name = "JETLAW_";
        for (const char* c = key; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
        if (const char* value = getenv(name.c_str())) set(key, value);
    }
}

ZeroTestOptions Config::zero_test() const {
    ZeroTestOptions options;
    options.samples = samples;
    options.seed = seed;
    return options;
}

ReferenceJetPoint Config::reference_point() const {
    ReferenceJetPoint point;
    for (const auto& [v, value] : reference) point.set(v, value);
    return point;
}

}  // namespace jetlaw
