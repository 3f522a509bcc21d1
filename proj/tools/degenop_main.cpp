#include <CLI11.hpp>

#include "degenop/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"similarity-transform calculus, generation analysis and numerical "
                 "verification for degenerate elliptic operators on the half-space"};
    app.require_subcommand(1);

    degenop::RunOptions options;
    std::string config, out = ".";

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* copt = cmd->add_option("--config", config, "configuration file (JSON)");
        if (config_required) copt->required();
        cmd->add_option("--out", out, "output directory");
        cmd->add_option("--seed", options.seed, "random seed");
        cmd->add_option("--threads", options.threads, "worker threads for scans");
        cmd->add_option("--format", options.format, "payload format (json|csv)");
    };

    add_common(app.add_subcommand("analyze", "validation, indicial data, generation "
                                             "windows, domain description, flags"),
               true);
    add_common(app.add_subcommand("reduce", "canonical-form reduction pipeline"), true);
    add_common(app.add_subcommand("solve", "resolvent solve on a truncated mesh"), true);
    add_common(app.add_subcommand("verify", "numerical verification suites"), false);
    add_common(app.add_subcommand("selftest", "transform-calculus invariant suites"),
               false);

    CLI11_PARSE(app, argc, argv);

    options.command = app.get_subcommands().front()->get_name();
    options.config_path = config;
    options.out_dir = out;
    return degenop::run(options);
}
