// Batch front-end: one JSON manifest per invocation drives a simulation,
// a verification sweep, norm evaluations, the region calculator, or a
// dilation-exponent measurement. All artifacts land under an output
// directory with fixed names and embed the manifest hash and seed.
#pragma once

#include "dkg/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dkg {

// Exit codes: 0 success, 1 usage/invalid manifest, 2 blow-up, 3 a
// verification trend check failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBlowUp = 2;
inline constexpr int kExitVerifyFailed = 3;

struct RunOptions {
    std::string manifest_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    bool override_hypotheses = false;
};

// FNV-1a over the canonical (re-serialized) manifest text.
std::uint64_t manifest_hash(const nlohmann::json& manifest);

int run_manifest(const RunOptions& opts, std::ostream& log);
int run_manifest_json(const nlohmann::json& manifest, const RunOptions& opts, std::ostream& log);

} // namespace dkg
