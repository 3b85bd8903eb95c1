#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "jetlaw/conservation.hpp"
#include "jetlaw/zero_test.hpp"

namespace jetlaw {

enum class OutputFormat { Text, Json };

/// Run-time settings. Sources in increasing precedence: defaults, a
/// key=value file, JETLAW_* environment variables, command-line flags.
///
/// Keys: seed, samples, tolerance, format (text|json) and reference, a
/// ';'-separated list of var=value base-point overrides such as
/// "xi=1; w[1,0]=1/2".
struct Config {
    std::uint64_t seed = 42;
    int samples = 8;
    double tolerance = 1e-8;
    OutputFormat format = OutputFormat::Text;
    std::map<Var, Rational> reference;

    /// Throws std::invalid_argument for unknown keys or bad values.
    void set(std::string_view key, std::string_view value);
    void load_file(const std::filesystem::path& path);
    void load_environment(const std::function<const char*(const char*)>& getenv);

    ZeroTestOptions zero_test() const;
    ReferenceJetPoint reference_point() const;
};

}  // namespace jetlaw
