#include "lstar/expt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "json.hpp"

#include "lstar/fold.hpp"
#include "lstar/oracle.hpp"

namespace lstar::expt {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 rng(seed ^ (salt * 0x9e3779b97f4a7c15ULL));
    return rng.next();
}

std::vector<std::string> random_sequences(int n, int count, std::uint64_t seed) {
    if (count < 1) throw contract_violation("random_sequences: count must be >= 1");
    if (n < 1) throw contract_violation("random_sequences: n must be >= 1");
    static const char kBases[4] = {'A', 'C', 'G', 'U'};
    SplitMix64 rng(seed);
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        std::string seq(static_cast<std::size_t>(n), 'A');
        for (int k = 0; k < n; ++k) seq[static_cast<std::size_t>(k)] = kBases[rng.next() >> 62];
        out.push_back(std::move(seq));
    }
    return out;
}

namespace {

double effective_eta(const ExperimentConfig& c) {
    return c.eta > 0.0 ? c.eta : gf::default_eta();
}

void validate(const ExperimentConfig& c) {
    if (c.lengths.empty()) throw contract_violation("sweep: no lengths given");
    if (!std::is_sorted(c.lengths.begin(), c.lengths.end()))
        throw contract_violation("sweep: lengths must be sorted ascending");
    if (c.batch < 1) throw contract_violation("sweep: batch must be >= 1");
    if (c.genus < 0 || c.genus > 1)
        throw not_implemented_genus("sweep: genus must be 0 or 1");
    if (c.genus == 1) {
        if (c.lengths.back() > oracle::kMaxFoldVertices)
            throw cap_exceeded("sweep: genus-1 lengths are capped at 12 (oracle path)");
        if (c.model.kind == EnergyModel::Kind::loop_based)
            throw contract_violation("sweep: the loop model is genus-0 only");
    }
}

// per-sequence measurements
struct Counts {
    std::int64_t total = 0;
    std::vector<std::int64_t> x_m;  // by length, index 1..n
};

Counts measure_fold(const std::string& seq, const EnergyModel& model) {
    auto result = fold::fold(seq, model, /*sparsified=*/true);
    Counts c;
    c.total = result.stats.total;
    c.x_m = result.stats.x_m;
    return c;
}

Counts measure_oracle_genus1(const std::string& seq, const EnergyModel& model) {
    auto table = oracle::mfe_exhaustive(seq, 1, model);
    auto cands = oracle::candidates_exhaustive(table);
    Counts c;
    c.total = static_cast<std::int64_t>(cands.size());
    c.x_m.assign(static_cast<std::size_t>(table.n) + 1, 0);
    for (auto [i, j] : cands) ++c.x_m[static_cast<std::size_t>(j - i + 1)];
    return c;
}

}  // namespace

irr::ProbabilityTable theory_table(const ExperimentConfig& config) {
    int order = std::max(config.theory_order, config.lengths.empty() ? 0 : config.lengths.back());
    if (config.model.kind == EnergyModel::Kind::loop_based) {
        auto fstar = irr::loop_irreducible_gf(config.loop_weights, order);
        auto f = irr::loop_full_gf(fstar, order);
        return irr::probability_table(to_doubles(fstar), to_doubles(f));
    }
    double eta = effective_eta(config);
    auto dstar = irr::irreducible_gf_eta(config.genus, eta, order);
    auto d = irr::structure_gf_eta(config.genus, eta, order);
    return irr::probability_table(to_doubles(dstar), to_doubles(d));
}

SweepResult run_sweep(const ExperimentConfig& config) {
    validate(config);
    auto theory = theory_table(config);

    SweepResult result;
    result.config = config;
    result.config.eta = effective_eta(config);

    unsigned hw = std::thread::hardware_concurrency();
    int threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(hw > 0 ? hw : 1);

    for (int n : config.lengths) {
        auto seqs = random_sequences(n, config.batch, derive_seed(config.seed, static_cast<std::uint64_t>(n)));
        std::vector<Counts> counts(seqs.size());

        auto worker = [&](int first) {
            for (std::size_t s = static_cast<std::size_t>(first); s < seqs.size();
                 s += static_cast<std::size_t>(threads))
                counts[s] = config.genus == 1 ? measure_oracle_genus1(seqs[s], config.model)
                                              : measure_fold(seqs[s], config.model);
        };
        if (threads > 1 && seqs.size() > 1) {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        } else {
            worker(0);
        }

        // fixed reduction order: sequence index
        double omega = 0.5 * n * (n + 1.0);
        double mean = 0.0;
        for (const auto& c : counts) mean += static_cast<double>(c.total);
        mean /= static_cast<double>(counts.size());
        double var = 0.0;
        for (const auto& c : counts) {
            double d = static_cast<double>(c.total) - mean;
            var += d * d;
        }
        var /= static_cast<double>(counts.size());

        SweepRow row;
        row.n = n;
        row.mean_q = mean;
        row.std_q = std::sqrt(var);
        row.ratio_exp = mean / omega;
        row.ratio_theory = irr::expected_candidates(theory, n).normalized;
        result.rows.push_back(row);

        if (n == config.lengths.back()) {
            result.probs.clear();
            for (int m = 1; m <= n; ++m) {
                double acc = 0.0;
                for (const auto& c : counts)
                    acc += static_cast<double>(c.x_m[static_cast<std::size_t>(m)]);
                acc /= static_cast<double>(counts.size());
                ProbRow p;
                p.m = m;
                p.p_emp = acc / static_cast<double>(n - m + 1);
                p.p_theory = theory.at(m);
                result.probs.push_back(p);
            }
        }
    }
    return result;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw io_error("write failed for " + path.string());
}

}  // namespace

std::string config_to_json(const ExperimentConfig& c) {
    json model{{"kind", c.model.kind == EnergyModel::Kind::loop_based ? "loop" : "arc"},
               {"arc_score", c.model.arc_score},
               {"hairpin_score", c.model.hairpin_score},
               {"interior_score", c.model.interior_score},
               {"multi_score", c.model.multi_score},
               {"min_hairpin_unpaired", c.model.min_hairpin_unpaired},
               {"interior_span_cap", c.model.interior_span_cap}};
    json j{{"lengths", c.lengths},
           {"batch", c.batch},
           {"seed", c.seed},
           {"model", model},
           {"genus", c.genus},
           {"eta", c.eta},
           {"output_dir", c.output_dir}};
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    c.lengths = j.at("lengths").get<std::vector<int>>();
    c.batch = j.value("batch", 100);
    c.seed = j.value("seed", kDefaultSeed);
    c.genus = j.value("genus", 0);
    c.eta = j.value("eta", 0.0);
    c.output_dir = j.value("output_dir", std::string());
    if (j.contains("model")) {
        const auto& m = j.at("model");
        std::string kind = m.value("kind", "loop");
        c.model = kind == "arc" ? EnergyModel::arc() : EnergyModel::loop();
        c.model.arc_score = m.value("arc_score", c.model.arc_score);
        c.model.hairpin_score = m.value("hairpin_score", c.model.hairpin_score);
        c.model.interior_score = m.value("interior_score", c.model.interior_score);
        c.model.multi_score = m.value("multi_score", c.model.multi_score);
        c.model.min_hairpin_unpaired =
            m.value("min_hairpin_unpaired", c.model.min_hairpin_unpaired);
        c.model.interior_span_cap = m.value("interior_span_cap", c.model.interior_span_cap);
    }
    return c;
}

void emit_report(const SweepResult& result, const std::string& dir) {
    fs::path base(dir);
    std::error_code ec;
    fs::create_directories(base, ec);
    if (ec) throw io_error("cannot create directory " + base.string() + ": " + ec.message());

    std::string sweep = "n,mean_Q,std_Q,ratio_exp,ratio_theory\n";
    for (const auto& r : result.rows)
        sweep += std::to_string(r.n) + "," + fmt(r.mean_q) + "," + fmt(r.std_q) + "," +
                 fmt(r.ratio_exp) + "," + fmt(r.ratio_theory) + "\n";
    write_file(base / "sweep.csv", sweep);

    std::string probs = "m,P_emp,P_theory\n";
    for (const auto& p : result.probs)
        probs += std::to_string(p.m) + "," + fmt(p.p_emp) + "," + fmt(p.p_theory) + "\n";
    write_file(base / "probs.csv", probs);

    std::string plot =
        "set datafile separator \",\"\n"
        "set key top right\n"
        "set xlabel \"n\"\n"
        "set ylabel \"expected candidates / Omega(n)\"\n"
        "set style line 1 lc rgb \"#1f77b4\" lw 2\n"
        "set style line 2 lc rgb \"#d62728\" lw 2 dashtype 2\n"
        "plot \"sweep.csv\" skip 1 using 1:4 with lines ls 1 title \"experiment\", \\\n"
        "     \"sweep.csv\" skip 1 using 1:5 with lines ls 2 title \"theory\"\n";
    write_file(base / "plot.gp", plot);

    write_file(base / "config.json", config_to_json(result.config));
}

}  // namespace lstar::expt
