#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardyop/classify.hpp"
#include "hardyop/json_io.hpp"
#include "hardyop/operators.hpp"
#include "hardyop/weights.hpp"

namespace hardyop {

struct NamedOp {
    std::string name;
    WeightedCompOp op;
};

/// Values a sweep parameter takes: an explicit list, a linspace or points on a circle.
struct SweepRange {
    std::vector<Complex> values;
};

struct SweepSpec {
    std::optional<SweepRange> nu, c, alpha, q;
    bool empty() const { return !nu && !c && !alpha && !q; }
};

struct RunConfig {
    WeightSequence space = WeightSequence::fock();
    std::vector<NamedOp> operators;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    bool check_self_adjoint = false;
    bool check_co_isometry = false;
    bool check_adjoint_pair = false;
    bool check_norm_growth = false;
    bool check_kernel_props = false;
    std::vector<std::size_t> dims;
    SampleGrid grid;
    Tolerances tolerances;
    std::string output_path = "report";
    std::string output_format = "json";
    SweepSpec sweep;
    std::uint64_t seed = 0;
};

/// Validates a config document. Throws ConfigError naming the offending field.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::string& path);

struct RunOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
};

struct RunResult {
    int exit_status = 0;
    std::vector<std::string> files;
};

/// Exit status: 0 when every verdict agrees or makes no claim, 2 on any
/// Disagree or ParadoxCandidate.
RunResult run(const RunConfig& cfg, const RunOptions& opts);
/// Cartesian product over the declared (nu, c, alpha, q) ranges.
RunResult sweep(const RunConfig& cfg, const RunOptions& opts);

/// Full JSON report of a run without touching the filesystem.
Json run_report(const RunConfig& cfg, const RunOptions& opts);

}  // namespace hardyop
