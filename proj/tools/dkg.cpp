// dkg: manifest-driven batch runner for the DKG spectral laboratory.
#include "dkg/manifest.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"dkg - pseudospectral Dirac-Klein-Gordon laboratory"};

    dkg::RunOptions opts;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    app.add_option("--manifest", opts.manifest_path, "Path to the JSON run manifest")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", opts.out_dir, "Output directory (default: out)");
    auto* seed_opt = app.add_option("--seed", seed, "Override the manifest seed");
    auto* eps_opt =
        app.add_option("--epsilon", epsilon, "Override the '+' exponent epsilon (default 0.01)");
    app.add_flag("--override-hypotheses", opts.override_hypotheses,
                 "Run estimate checks outside their hypothesis region (exploratory)");

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) opts.seed = seed;
    if (*eps_opt) opts.epsilon = epsilon;

    return dkg::run_manifest(opts, std::cout);
}
