#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixedp/config.hpp"
#include "mixedp/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"mixed local/nonlocal p-Laplacian eigenvalue and Fucik-spectrum laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    std::int64_t seed = -1;
    int threads = 0;

    app.add_option("--config", config_path, "flat key=value configuration file");
    app.add_option("--set", overrides, "override a config key, e.g. --set params.p=2.5");
    app.add_option("--out", out_dir, "output directory for results.csv and manifest.json");
    app.add_option("--seed", seed, "random seed (overrides the config)");
    app.add_option("--threads", threads, "worker threads (overrides the config)");

    const std::vector<std::string> subs{"hardy", "eig1",        "eig2", "fucik",
                                        "faber-krahn", "hks",  "nodal-check", "check"};
    for (const auto& name : subs) app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    std::string sub = app.get_subcommands().front()->get_name();

    mixedp::RunConfig cfg;
    try {
        mixedp::ConfigMap map;
        if (!config_path.empty()) map = mixedp::parse_config_file(config_path);
        for (const auto& ov : overrides) mixedp::apply_override(map, ov);
        cfg = mixedp::RunConfig::from_map(map);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return mixedp::kExitConfigError;
    }
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (threads > 0) cfg.threads = threads;

    return mixedp::run_subcommand(sub, cfg, out_dir);
}
