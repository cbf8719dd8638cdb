#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstar/energy.hpp"
#include "lstar/genusgf.hpp"
#include "lstar/irrgf.hpp"

namespace lstar::expt {

/// Seed used when none is supplied; fixed so every run is reproducible.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// SplitMix64, the PRNG behind every stochastic path.  The algorithm is
/// pinned so sequences are reproducible across platforms and languages:
///   state += 0x9e3779b97f4a7c15
///   z = state; z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   output = z ^ (z >> 31)
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// Stream seed for one sweep length: one SplitMix64 step of seed xor salt.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

/// count i.i.d. uniform sequences over {A,C,G,U} of length n; base = top
/// two bits of each SplitMix64 output, A,C,G,U in bit order 0..3.
std::vector<std::string> random_sequences(int n, int count, std::uint64_t seed);

struct ExperimentConfig {
    std::vector<int> lengths;
    int batch = 100;
    std::uint64_t seed = kDefaultSeed;
    EnergyModel model = EnergyModel::loop();
    int genus = 0;  // 1 switches to the exhaustive oracle path (lengths <= 12)
    double eta = 0.0;  // 0 = default 6e/16
    std::string output_dir;
    irr::LoopWeights loop_weights = irr::LoopWeights::defaults();
    int theory_order = 400;
    int threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
    int n = 0;
    double mean_q = 0.0;
    double std_q = 0.0;
    double ratio_exp = 0.0;
    double ratio_theory = 0.0;
};

struct ProbRow {
    int m = 0;
    double p_emp = 0.0;
    double p_theory = 0.0;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepRow> rows;
    std::vector<ProbRow> probs;  // from the largest length
};

/// Theory probability table matching a config: loop model uses the loop
/// weight series, the arc model uses the eta-weighted genus series.
irr::ProbabilityTable theory_table(const ExperimentConfig& config);

SweepResult run_sweep(const ExperimentConfig& config);

/// Writes sweep.csv, probs.csv, plot.gp and config.json into dir.
/// Re-running the same config reproduces the files byte for byte.
void emit_report(const SweepResult& result, const std::string& dir);

/// JSON round-trip for configs (ExperimentConfig fields verbatim).
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

}  // namespace lstar::expt
