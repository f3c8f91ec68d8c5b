// murank: decide the mu-rank of noncommutative quadratic forms on three or
// four generators and produce verified factorizations Q = L^2 / Q = L1*L2
// over the skew polynomial ring z_j z_i = mu_ij z_i z_j.

#include "murank/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"mu-rank classification and factorization of noncommutative quadratic forms"};
    app.require_subcommand(1);

    murank::CliConfig cfg;
    std::string backend = "exact";

    auto add_common = [&](CLI::App* cmd, bool with_form) {
        cmd->add_option("--n", cfg.n, "number of generators (3 or 4)")->check(CLI::IsMember({3, 4}));
        cmd->add_option("--mu", cfg.mu_text,
                        "mu parameters as upper-triangle list, e.g. \"mu12=2,mu13=1/2\"");
        cmd->add_option("--backend", backend, "scalar backend")
            ->check(CLI::IsMember({"exact", "complex"}));
        cmd->add_option("--tol", cfg.tol, "zero tolerance for the complex backend");
        cmd->add_flag("--json", cfg.json_output, "emit JSON instead of text");
        cmd->add_option("--file", cfg.file, "JSON bundle input ('-' for stdin)");
        if (with_form)
            cmd->add_option("--form", cfg.form_text,
                            "quadratic form, e.g. \"z1^2 + 4z1*z2\" ('-' for stdin)");
    };

    auto* classify = app.add_subcommand("classify", "report the mu-rank of a form");
    add_common(classify, true);
    auto* factor = app.add_subcommand("factor", "construct a verified factorization");
    add_common(factor, true);
    auto* minors = app.add_subcommand("minors", "evaluate the full table of mu-minors and mu-determinants");
    add_common(minors, true);
    auto* expand = app.add_subcommand("expand", "normal-ordered product of two linear forms");
    add_common(expand, false);
    expand->add_option("--l1", cfg.l1_text, "first linear form, e.g. \"1,2,0,-1/2\"")->required();
    expand->add_option("--l2", cfg.l2_text, "second linear form")->required();
    auto* verify = app.add_subcommand("verify", "re-expand a factorization against a form");
    add_common(verify, true);
    auto* fuzz = app.add_subcommand("fuzz", "differential ground-truth suite on random instances");
    add_common(fuzz, false);
    fuzz->add_option("--seed", cfg.seed, "master seed");
    fuzz->add_option("--trials", cfg.trials, "number of trials");

    CLI11_PARSE(app, argc, argv);

    using Command = murank::CliConfig::Command;
    if (classify->parsed()) cfg.command = Command::classify;
    if (factor->parsed()) cfg.command = Command::factor;
    if (minors->parsed()) cfg.command = Command::minors;
    if (expand->parsed()) cfg.command = Command::expand;
    if (verify->parsed()) cfg.command = Command::verify;
    if (fuzz->parsed()) cfg.command = Command::fuzz;
    cfg.backend = backend == "complex" ? murank::CliConfig::Backend::complex_fp
                                       : murank::CliConfig::Backend::exact;

    return murank::run(cfg, std::cin, std::cout, std::cerr);
}
