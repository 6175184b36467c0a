#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vecwp {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Subcommand { distance, analyze, classify, tykhonov_check, dh_check, perturb, pipeline, probe, replicate };
enum class OutputFormat { record, csv };

std::string_view to_string(Subcommand s);
/// Throws InputError for an unknown name.
Subcommand parse_subcommand(const std::string& name);
OutputFormat parse_format(const std::string& name);

struct RunConfig {
    Subcommand subcommand = Subcommand::replicate;
    /// Exactly one of problem (registry label) and config (file path).
    std::string problem;
    std::string config;
    /// 0 means the registry default (201 for config files).
    std::size_t grid = 0;
    double sigma = 0.1;
    std::size_t n = 1;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    /// Comma separated vectors.
    std::vector<std::string> points;
    std::string y;
    std::string xi;
    std::string out;
    OutputFormat format = OutputFormat::record;
};

/// Runs one subcommand. Returns 0 on success, 1 when a certificate or an
/// assertion fails, 2 on an error (reported as error.kind / error.message).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace vecwp
