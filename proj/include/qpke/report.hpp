// report.hpp
// Experiment configuration, dispatch and report emission behind the qpke CLI.

#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qpke/adversary.hpp"
#include "qpke/keys.hpp"

namespace qpke {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Command { symtest, attack, compound, helstrom, psuccess, smin, keycheck };
enum class OutputFormat { json, csv };

std::string_view to_string(Command command);
Command parse_command(std::string_view text);
std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

struct RunConfig {
    Command command = Command::psuccess;
    std::uint64_t master_seed = 0;
    bool seed_generated = false;
    std::uint64_t trials = 0;
    OutputFormat format = OutputFormat::json;
    std::string output_path = "-";  // "-" is standard output
    unsigned threads = 1;

    // Key family and scheme.
    FamilyKind family = FamilyKind::rotation;
    int key_bits = 1;
    std::size_t register_dim = 2;
    double overlap_bound = 0.99;
    double holevo_margin = 10.0;
    std::uint64_t family_seed = 0;
    double tilt = std::numbers::pi / 2.0;  // angle of U_1

    // Attack and analysis.
    int copies_t = 2;        // T
    int copies = 2;          // N for symtest
    double overlap = 0.0;    // lambda for symtest
    int codeword_len = 1;    // s (maximum s with sweep / psuccess)
    bool sweep = false;
    AttackMode mode = AttackMode::bernoulli;
    std::string plaintext = "both";  // "0", "1", "both" or "random"
    double prior = 0.5;
    double epsilon = 0.125;

    // Throws ParameterError (field named in the message) or
    // SimulationSizeError before any computation runs.
    void validate() const;

    KeyFamilySpec family_spec() const;
    nlohmann::ordered_json to_json() const;
};

struct ExperimentReport {
    nlohmann::ordered_json config;
    std::vector<std::string> columns;
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    std::string version{kVersion};
    double elapsed = 0.0;  // wall-clock seconds
};

ExperimentReport run(const RunConfig& config);

// Serialized results array: the part of a report that must be byte-identical
// across reruns with the same configuration.
std::string results_payload(const ExperimentReport& report);

std::string render(const ExperimentReport& report, OutputFormat format);

// Writes to path, or to standard output for "-". Throws IoError.
void emit(const ExperimentReport& report, OutputFormat format, const std::string& path);

// Doubles are kept to 12 significant digits in every output format.
double round_sig12(double value);
std::string format_sig12(double value);

}  // namespace qpke
