#include "qpke/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qpke/analysis.hpp"
#include "qpke/errors.hpp"
#include "qpke/experiments.hpp"
#include "qpke/symmetry.hpp"

namespace qpke {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kMaxTrials = 1'000'000'000ULL;
constexpr unsigned kMaxThreads = 256;

// Stream tags: one per (command, row) so rows never share randomness.
constexpr std::uint64_t kSymtestTag = 0x100;
constexpr std::uint64_t kAttackTag = 0x200;
constexpr std::uint64_t kCompoundTag = 0x300;
constexpr std::uint64_t kHelstromTag = 0x400;

ordered_json number(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return round_sig12(value);
}

std::size_t checked_power(std::size_t base, int exponent, std::size_t guard,
                          const std::string& what) {
    std::size_t total = 1;
    for (int i = 0; i < exponent; ++i) {
        if (total > guard / base) {
            throw SimulationSizeError(what, guard + 1, guard);
        }
        total *= base;
    }
    return total;
}

std::optional<int> fixed_plaintext(const std::string& plaintext) {
    if (plaintext == "0") {
        return 0;
    }
    if (plaintext == "1") {
        return 1;
    }
    return std::nullopt;
}

DeterministicScheme make_scheme(const RunConfig& config) {
    KeyFamily family(config.family_spec());
    return DeterministicScheme::tilted(std::move(family), config.tilt);
}

TrialPlan plan_for(const RunConfig& config, std::uint64_t tag) {
    return {config.master_seed, tag, config.trials, config.threads};
}

// ---------------------------------------------------------------------------
// Commands

void run_symtest(const RunConfig& config, ExperimentReport& report) {
    report.columns = {"copies",      "register_dim", "overlap",    "trials",
                      "zeros",       "p_zero_empirical", "std_error", "p_zero_exact",
                      "prediction",  "deviation",    "sigma"};
    if (config.trials == 0) {
        return;
    }
    const std::size_t d = config.register_dim;
    const StateVector xi = StateVector::basis(d, 0);
    std::vector<Complex> chi_amps(d);
    chi_amps[0] = config.overlap;
    chi_amps[1] = std::sqrt(std::max(0.0, 1.0 - config.overlap * config.overlap));
    const StateVector chi(std::move(chi_amps));

    const double exact = p_zero_exact(xi, chi, config.copies);
    const double prediction = q_closed_form(config.copies, state_overlap(xi, chi));
    const auto estimate = simulate_symmetry_test(xi, chi, config.copies,
                                                 plan_for(config, kSymtestTag));
    const double se = binomial_std_error(prediction, estimate.trials);

    ordered_json row;
    row["copies"] = config.copies;
    row["register_dim"] = d;
    row["overlap"] = number(config.overlap);
    row["trials"] = estimate.trials;
    row["zeros"] = estimate.hits;
    row["p_zero_empirical"] = number(estimate.rate());
    row["std_error"] = number(se);
    row["p_zero_exact"] = number(exact);
    row["prediction"] = number(prediction);
    row["deviation"] = number(std::abs(estimate.rate() - prediction));
    row["sigma"] = number(sigma_count(estimate.rate(), prediction, se));
    report.results.push_back(std::move(row));
}

void run_attack(const RunConfig& config, ExperimentReport& report) {
    report.columns = {"copies_t", "plaintext", "trials",    "errors", "error_rate",
                      "std_error", "prediction", "deviation", "sigma"};
    if (config.trials == 0) {
        return;
    }
    const DeterministicScheme scheme = make_scheme(config);
    const double error_b1 = mean_one_bit_error(scheme, config.copies_t);

    std::vector<int> plaintexts;
    if (config.plaintext == "both") {
        plaintexts = {0, 1};
    } else if (auto b = fixed_plaintext(config.plaintext)) {
        plaintexts = {*b};
    } else {
        plaintexts = {-1};  // drawn per trial
    }
    for (int b : plaintexts) {
        const std::optional<int> fixed = b >= 0 ? std::optional<int>(b) : std::nullopt;
        const auto estimate = simulate_forward_search_errors(
            scheme, config.copies_t, fixed, config.prior,
            plan_for(config, kAttackTag + static_cast<std::uint64_t>(b + 1)));
        const double prediction =
            b == 0 ? 0.0 : (b == 1 ? error_b1 : (1.0 - config.prior) * error_b1);
        const double se = binomial_std_error(prediction, estimate.trials);

        ordered_json row;
        row["copies_t"] = config.copies_t;
        row["plaintext"] = b >= 0 ? std::to_string(b) : std::string("random");
        row["trials"] = estimate.trials;
        row["errors"] = estimate.hits;
        row["error_rate"] = number(estimate.rate());
        row["std_error"] = number(se);
        row["prediction"] = number(prediction);
        row["deviation"] = number(std::abs(estimate.rate() - prediction));
        row["sigma"] = number(sigma_count(estimate.rate(), prediction, se));
        report.results.push_back(std::move(row));
    }
}

void run_compound(const RunConfig& config, ExperimentReport& report) {
    report.columns = {"copies_t",  "codeword_len", "mode",      "trials",    "successes",
                      "success_rate", "std_error", "prediction", "deviation", "sigma"};
    const DeterministicScheme scheme = make_scheme(config);
    if (!scheme.orthogonal()) {
        throw UnsupportedModeError(
            "compound: the attack analysis needs orthogonal ciphertexts; use the default tilt");
    }
    if (config.trials == 0) {
        return;
    }
    const int first = config.sweep ? 1 : config.codeword_len;
    for (int s = first; s <= config.codeword_len; ++s) {
        CompoundTrialOptions options;
        options.copies = config.copies_t;
        options.length = s;
        options.mode = config.mode;
        options.plaintext = fixed_plaintext(config.plaintext);
        const auto estimate = simulate_compound_attack(
            scheme, options, plan_for(config, kCompoundTag + static_cast<std::uint64_t>(s)));

        double prediction = p_success_closed(config.copies_t, s);
        if (options.plaintext) {
            prediction = p_success_conditional(config.copies_t, s, *options.plaintext);
        }
        const double se = binomial_std_error(prediction, estimate.trials);

        ordered_json row;
        row["copies_t"] = config.copies_t;
        row["codeword_len"] = s;
        row["mode"] = std::string(to_string(config.mode));
        row["trials"] = estimate.trials;
        row["successes"] = estimate.hits;
        row["success_rate"] = number(estimate.rate());
        row["std_error"] = number(se);
        row["prediction"] = number(prediction);
        row["deviation"] = number(std::abs(estimate.rate() - prediction));
        row["sigma"] = number(sigma_count(estimate.rate(), prediction, se));
        report.results.push_back(std::move(row));
    }
}

void run_helstrom(const RunConfig& config, ExperimentReport& report) {
    report.columns = {"key_bits",   "copies_t",  "prior",
                      "helstrom",   "attack_success_prediction",
                      "trials",     "successes", "attack_success_empirical",
                      "std_error",  "excess_sigma"};
    const DeterministicScheme scheme = make_scheme(config);
    const auto instance = build_discrimination_instance(scheme, config.copies_t, config.prior);
    const double helstrom = helstrom_success(instance);

    ordered_json row;
    row["key_bits"] = config.key_bits;
    row["copies_t"] = config.copies_t;
    row["prior"] = number(config.prior);
    row["helstrom"] = number(helstrom);

    const bool attack_possible = config.copies_t >= 2;
    double prediction = 0.0;
    if (attack_possible) {
        prediction = config.prior + (1.0 - config.prior) *
                                        (1.0 - mean_one_bit_error(scheme, config.copies_t));
        row["attack_success_prediction"] = number(prediction);
    } else {
        row["attack_success_prediction"] = nullptr;
    }

    if (attack_possible && config.trials > 0) {
        const auto errors = simulate_forward_search_errors(
            scheme, config.copies_t, std::nullopt, config.prior, plan_for(config, kHelstromTag));
        const BinomialEstimate successes{errors.trials, errors.trials - errors.hits};
        const double se = binomial_std_error(prediction, successes.trials);
        const double excess = successes.rate() - helstrom;
        row["trials"] = successes.trials;
        row["successes"] = successes.hits;
        row["attack_success_empirical"] = number(successes.rate());
        row["std_error"] = number(se);
        row["excess_sigma"] = se > 0.0 ? number(excess / se) : ordered_json(nullptr);
    } else {
        row["trials"] = config.trials;
        row["successes"] = nullptr;
        row["attack_success_empirical"] = nullptr;
        row["std_error"] = nullptr;
        row["excess_sigma"] = nullptr;
    }
    report.results.push_back(std::move(row));
}

void run_psuccess(const RunConfig& config, ExperimentReport& report) {
    report.columns = {"s", "p_b0", "p_b1", "p_avg", "closed_form", "deviation"};
    const SuccessTable table = success_table(config.copies_t, config.codeword_len);
    for (const auto& r : table.rows) {
        ordered_json row;
        row["s"] = r.length;
        row["p_b0"] = number(r.p_success_b0);
        row["p_b1"] = number(r.p_success_b1);
        row["p_avg"] = number(r.p_success);
        row["closed_form"] = number(r.closed_form);
        row["deviation"] = number(std::abs(r.p_success - r.closed_form));
        report.results.push_back(std::move(row));
    }
}

void run_smin(const RunConfig& config, ExperimentReport& report) {
    report.columns = {"copies_t", "epsilon", "tight", "simple", "verified",
                      "p_success_at_tight", "label"};
    const SecurityThreshold threshold(config.epsilon);
    const int tight = s_min_tight(config.copies_t, threshold);
    const int simple = s_min_simple(config.copies_t, threshold);
    const double p_at_tight = p_success_closed(config.copies_t, tight);

    ordered_json row;
    row["copies_t"] = config.copies_t;
    row["epsilon"] = number(config.epsilon);
    row["tight"] = tight;
    row["simple"] = simple;
    row["verified"] = p_at_tight <= 0.5 + config.epsilon && simple >= tight;
    row["p_success_at_tight"] = number(p_at_tight);
    row["label"] = "sufficient against the symmetry-test attack";
    report.results.push_back(std::move(row));
}

void run_keycheck(const RunConfig& config, ExperimentReport& report) {
    report.columns = {"family",       "key_bits",      "register_dim", "copies_t",
                      "overlap_bound", "exhaustive",   "holevo_ratio", "holevo_margin",
                      "holevo_pass",  "orthogonal",    "max_ciphertext_overlap"};
    const KeyFamilySpec spec = config.family_spec();
    const DeterministicScheme scheme = make_scheme(config);
    const OverlapBound bound = scheme.family().pairwise_overlap_bound();
    const HolevoCheck holevo = holevo_check(spec);

    ordered_json row;
    row["family"] = std::string(to_string(spec.kind));
    row["key_bits"] = spec.key_bits;
    row["register_dim"] = spec.register_dim;
    row["copies_t"] = spec.max_copies;
    row["overlap_bound"] = number(bound.value);
    row["exhaustive"] = bound.exhaustive;
    row["holevo_ratio"] = number(holevo.ratio);
    row["holevo_margin"] = number(spec.holevo_margin);
    row["holevo_pass"] = holevo.pass;
    row["orthogonal"] = scheme.orthogonal();
    row["max_ciphertext_overlap"] = number(scheme.max_ciphertext_overlap());
    report.results.push_back(std::move(row));
}

std::string csv_cell(const ordered_json& value) {
    if (value.is_null()) {
        return "";
    }
    if (value.is_number_float()) {
        return format_sig12(value.get<double>());
    }
    if (value.is_string()) {
        const auto text = value.get<std::string>();
        if (text.find_first_of(",\"\n") == std::string::npos) {
            return text;
        }
        std::string quoted = "\"";
        for (char c : text) {
            quoted += c;
            if (c == '"') {
                quoted += '"';
            }
        }
        return quoted + "\"";
    }
    return value.dump();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Command command) {
    switch (command) {
        case Command::symtest:
            return "symtest";
        case Command::attack:
            return "attack";
        case Command::compound:
            return "compound";
        case Command::helstrom:
            return "helstrom";
        case Command::psuccess:
            return "psuccess";
        case Command::smin:
            return "smin";
        case Command::keycheck:
            return "keycheck";
    }
    return "unknown";
}

Command parse_command(std::string_view text) {
    for (auto c : {Command::symtest, Command::attack, Command::compound, Command::helstrom,
                   Command::psuccess, Command::smin, Command::keycheck}) {
        if (to_string(c) == text) {
            return c;
        }
    }
    throw ParameterError("command: unknown command '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat format) {
    return format == OutputFormat::json ? "json" : "csv";
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "json") {
        return OutputFormat::json;
    }
    if (text == "csv") {
        return OutputFormat::csv;
    }
    throw ParameterError("format: expected 'json' or 'csv', got '" + std::string(text) + "'");
}

KeyFamilySpec RunConfig::family_spec() const {
    KeyFamilySpec spec;
    spec.kind = family;
    spec.key_bits = key_bits;
    spec.register_dim = register_dim;
    spec.max_copies = copies_t;
    spec.overlap_bound = overlap_bound;
    spec.holevo_margin = holevo_margin;
    spec.family_seed = family_seed;
    return spec;
}

void RunConfig::validate() const {
    if (trials > kMaxTrials) {
        throw ParameterError("trials: at most " + std::to_string(kMaxTrials));
    }
    if (threads < 1 || threads > kMaxThreads) {
        throw ParameterError("threads: must lie in [1, " + std::to_string(kMaxThreads) + "]");
    }
    if (plaintext != "0" && plaintext != "1" && plaintext != "both" && plaintext != "random") {
        throw ParameterError("plaintext: expected 0, 1, both or random");
    }
    if (!(prior >= 0.0 && prior <= 1.0)) {
        throw ParameterError("prior: p must lie in [0, 1]");
    }

    const bool uses_family = command == Command::attack || command == Command::compound ||
                             command == Command::helstrom || command == Command::keycheck;
    if (uses_family) {
        if (!(tilt > 0.0 && tilt <= std::numbers::pi / 2.0)) {
            throw ParameterError("tilt: angle of U_1 must lie in (0, pi/2]");
        }
        family_spec().validate();
    }

    switch (command) {
        case Command::symtest:
            if (copies < 1) {
                throw ParameterError("copies: N must be at least 1");
            }
            if (static_cast<std::size_t>(copies) > kMaxPermutationRegisters) {
                throw SimulationSizeError("copies: N exceeds permutation guard",
                                          static_cast<std::size_t>(copies),
                                          kMaxPermutationRegisters);
            }
            if (register_dim < 2) {
                throw ParameterError("register-dim: d must be at least 2");
            }
            if (!(overlap >= 0.0 && overlap <= 1.0)) {
                throw ParameterError("overlap: lambda must lie in [0, 1]");
            }
            checked_power(register_dim, copies, kMaxStateDim, "d^N exceeds simulation guard");
            break;
        case Command::attack:
            if (copies_t < 2) {
                throw ParameterError("copies-t: the attack needs T >= 2");
            }
            if (static_cast<std::size_t>(copies_t) > kMaxPermutationRegisters) {
                throw SimulationSizeError("copies-t: T exceeds permutation guard",
                                          static_cast<std::size_t>(copies_t),
                                          kMaxPermutationRegisters);
            }
            checked_power(register_dim, copies_t, kMaxStateDim, "d^T exceeds simulation guard");
            break;
        case Command::compound:
            if (copies_t < 2) {
                throw ParameterError("copies-t: the attack needs T >= 2");
            }
            if (codeword_len < 1 || codeword_len > kMaxCodewordLength) {
                throw ParameterError("codeword-len: s must lie in [1, 64]");
            }
            if (mode == AttackMode::quantum) {
                if (static_cast<std::size_t>(copies_t) > kMaxPermutationRegisters) {
                    throw SimulationSizeError("copies-t: T exceeds permutation guard",
                                              static_cast<std::size_t>(copies_t),
                                              kMaxPermutationRegisters);
                }
                checked_power(register_dim, copies_t, kMaxStateDim,
                              "d^T exceeds simulation guard");
            }
            break;
        case Command::helstrom:
            if (copies_t < 1) {
                throw ParameterError("copies-t: T must be at least 1");
            }
            if (key_bits > kMaxEnsembleKeyBits) {
                throw SimulationSizeError("key-bits: ensemble 2^n exceeds guard",
                                          std::size_t{1} << std::min(key_bits, 62),
                                          std::size_t{1} << kMaxEnsembleKeyBits);
            }
            checked_power(register_dim, copies_t, kMaxOperatorDim,
                          "d^T exceeds operator dimension guard");
            if (copies_t > static_cast<int>(kMaxPermutationRegisters) && trials > 0) {
                throw SimulationSizeError("copies-t: T exceeds permutation guard",
                                          static_cast<std::size_t>(copies_t),
                                          kMaxPermutationRegisters);
            }
            break;
        case Command::psuccess:
            if (copies_t < 2) {
                throw ParameterError("copies-t: T must be at least 2");
            }
            if (codeword_len < 1 || codeword_len > kMaxCodewordLength) {
                throw ParameterError("codeword-len: s must lie in [1, 64]");
            }
            break;
        case Command::smin:
            if (copies_t < 2) {
                throw ParameterError("copies-t: T must be at least 2");
            }
            if (!(epsilon > 0.0 && epsilon < 0.5)) {
                throw ParameterError("epsilon: threshold must lie in (0, 1/2)");
            }
            break;
        case Command::keycheck:
            break;
    }
}

ordered_json RunConfig::to_json() const {
    ordered_json j;
    j["command"] = std::string(to_string(command));
    j["seed"] = master_seed;
    j["seed_generated"] = seed_generated;
    j["trials"] = trials;
    j["threads"] = threads;
    j["format"] = std::string(to_string(format));
    j["out"] = output_path;
    j["family"] = std::string(to_string(family));
    j["key_bits"] = key_bits;
    j["register_dim"] = register_dim;
    j["overlap_bound"] = overlap_bound;
    j["holevo_margin"] = holevo_margin;
    j["family_seed"] = family_seed;
    j["tilt"] = tilt;
    j["copies_t"] = copies_t;
    j["copies"] = copies;
    j["overlap"] = overlap;
    j["codeword_len"] = codeword_len;
    j["sweep"] = sweep;
    j["mode"] = std::string(to_string(mode));
    j["plaintext"] = plaintext;
    j["prior"] = prior;
    j["epsilon"] = epsilon;
    return j;
}

ExperimentReport run(const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.config = config.to_json();
    switch (config.command) {
        case Command::symtest:
            run_symtest(config, report);
            break;
        case Command::attack:
            run_attack(config, report);
            break;
        case Command::compound:
            run_compound(config, report);
            break;
        case Command::helstrom:
            run_helstrom(config, report);
            break;
        case Command::psuccess:
            run_psuccess(config, report);
            break;
        case Command::smin:
            run_smin(config, report);
            break;
        case Command::keycheck:
            run_keycheck(config, report);
            break;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report.elapsed = elapsed.count();
    return report;
}

std::string results_payload(const ExperimentReport& report) { return report.results.dump(); }

std::string render(const ExperimentReport& report, OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json doc;
        doc["config"] = report.config;
        doc["results"] = report.results;
        doc["version"] = report.version;
        doc["elapsed"] = round_sig12(report.elapsed);
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? "," : "") << report.columns[i];
    }
    out << '\n';
    for (const auto& row : report.results) {
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            const auto it = row.find(report.columns[i]);
            out << (i ? "," : "") << (it == row.end() ? std::string() : csv_cell(*it));
        }
        out << '\n';
    }
    return out.str();
}

void emit(const ExperimentReport& report, OutputFormat format, const std::string& path) {
    const std::string text = render(report, format);
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) {
            throw IoError("failed writing report to standard output");
        }
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw IoError("failed writing report to '" + path + "'");
    }
}

double round_sig12(double value) {
    if (!std::isfinite(value) || value == 0.0) {
        return value;
    }
    return std::stod(format_sig12(value));
}

std::string format_sig12(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

}  // namespace qpke
