// qpke: command-line front end for the quantum public-key attack laboratory.
//
// Exit codes: 0 success, 2 usage error, 3 simulation-size guard, 4 I/O error.

#include <cstdint>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "qpke/errors.hpp"
#include "qpke/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string family = "rotation";
    std::string mode = "bernoulli";
};

void add_common(CLI::App& sub, qpke::RunConfig& config, CommonFlags& flags) {
    sub.add_option("--seed", flags.seed, "Master seed (u64); generated and reported if omitted");
    sub.add_option("--trials", config.trials, "Monte Carlo trials");
    sub.add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--out", config.output_path, "Output path ('-' for stdout)");
    sub.add_option("--threads", config.threads, "Worker threads (results do not depend on it)");
}

void add_family(CLI::App& sub, qpke::RunConfig& config, CommonFlags& flags) {
    sub.add_option("--family", flags.family, "Public-key family")
        ->check(CLI::IsMember({"rotation", "random"}));
    sub.add_option("--key-bits", config.key_bits, "Private key length n");
    sub.add_option("--register-dim", config.register_dim, "Public-key dimension d");
    sub.add_option("--family-seed", config.family_seed, "Seed of the random family");
    sub.add_option("--overlap-bound", config.overlap_bound,
                   "Pairwise overlap bound delta for the random family");
    sub.add_option("--tilt", config.tilt, "Angle of U_1 in radians (pi/2 = orthogonal)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forward-search attacks on quantum public-key bit encryption"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qpke::kVersion));

    qpke::RunConfig config;
    CommonFlags flags;

    auto* symtest = app.add_subcommand("symtest", "Symmetry test on |0> vs an overlap-lambda state");
    add_common(*symtest, config, flags);
    symtest->add_option("--copies", config.copies, "Number of registers N");
    symtest->add_option("--overlap", config.overlap, "Overlap lambda = |<xi|chi>|");
    symtest->add_option("--register-dim", config.register_dim, "Register dimension d");

    auto* attack = app.add_subcommand("attack", "Forward search attack by symmetry test");
    add_common(*attack, config, flags);
    add_family(*attack, config, flags);
    attack->add_option("--copies-t", config.copies_t, "Public-key copies T");
    attack->add_option("--plaintext", config.plaintext, "0, 1, both or random")
        ->check(CLI::IsMember({"0", "1", "both", "random"}));
    attack->add_option("--prior", config.prior, "P(b = 0) when the plaintext is random");

    auto* compound = app.add_subcommand("compound", "Compound attack on the parity scheme");
    add_common(*compound, config, flags);
    add_family(*compound, config, flags);
    compound->add_option("--copies-t", config.copies_t, "Public-key copies T");
    compound->add_option("--codeword-len", config.codeword_len, "Codeword length s");
    compound->add_flag("--sweep", config.sweep, "Report every s from 1 to --codeword-len");
    compound->add_option("--mode", flags.mode, "Attack simulation mode")
        ->check(CLI::IsMember({"quantum", "bernoulli"}));
    compound->add_option("--plaintext", config.plaintext, "0 or 1 fixes the plaintext; random or both draw it uniformly")
        ->check(CLI::IsMember({"0", "1", "random", "both"}));

    auto* helstrom = app.add_subcommand("helstrom", "Optimal discrimination of rho_0 vs rho_1");
    add_common(*helstrom, config, flags);
    add_family(*helstrom, config, flags);
    helstrom->add_option("--copies-t", config.copies_t, "Public-key copies T");
    helstrom->add_option("--prior", config.prior, "Prior probability of plaintext 0");

    auto* psuccess = app.add_subcommand("psuccess", "Compound-attack success table");
    add_common(*psuccess, config, flags);
    psuccess->add_option("--copies-t", config.copies_t, "Public-key copies T");
    psuccess->add_option("--codeword-len", config.codeword_len, "Largest codeword length s");

    auto* smin = app.add_subcommand("smin", "Codeword length needed for a security threshold");
    add_common(*smin, config, flags);
    smin->add_option("--copies-t", config.copies_t, "Public-key copies T");
    smin->add_option("--epsilon", config.epsilon, "Advantage threshold epsilon in (0, 1/2)");

    auto* keycheck = app.add_subcommand("keycheck", "Overlap and Holevo checks on a key family");
    add_common(*keycheck, config, flags);
    add_family(*keycheck, config, flags);
    keycheck->add_option("--copies-t", config.copies_t, "Public-key copies T");
    keycheck->add_option("--holevo-margin", config.holevo_margin, "Margin c in n >= c T log2 d");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        config.command = qpke::parse_command(app.get_subcommands().front()->get_name());
        config.format = qpke::parse_output_format(flags.format);
        config.family = qpke::parse_family_kind(flags.family);
        config.mode = qpke::parse_attack_mode(flags.mode);
        if (app.get_subcommands().front()->count("--seed") > 0) {
            config.master_seed = flags.seed;
        } else {
            std::random_device device;
            config.master_seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
            config.seed_generated = true;
        }

        const qpke::ExperimentReport report = qpke::run(config);
        qpke::emit(report, config.format, config.output_path);
        return 0;
    } catch (const qpke::SimulationSizeError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const qpke::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const qpke::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
}
