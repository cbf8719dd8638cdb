// lstar: generating functions, candidate-set theory and sparsified DP
// folding for RNA structures of fixed topological genus.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lstar/expt.hpp"
#include "lstar/fold.hpp"
#include "lstar/genusgf.hpp"
#include "lstar/irrgf.hpp"
#include "lstar/kernels.hpp"
#include "lstar/oracle.hpp"

namespace {

using namespace lstar;

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << content;
}

std::string read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read " + path);
    std::string seq, line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '>') continue;  // FASTA header
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) seq += c;
    }
    return seq;
}

// ---- gf ----------------------------------------------------------------

struct GfArgs {
    int genus = 0;
    int order = gf::kDefaultTestOrder;
    bool irreducible = false;
    bool arcs = false;
    double eta = 0.0;
    std::string output;
};

int run_gf(const GfArgs& a) {
    std::string out;
    if (a.arcs) {
        auto table = a.irreducible ? irr::irreducible_arc_filtered(a.genus, a.order)
                                   : gf::arc_filtered_gf(a.genus, a.order);
        out = "n,l,count\n";
        for (int n = 0; n <= table.order; ++n)
            for (std::size_t l = 0; l < table.rows[static_cast<std::size_t>(n)].size(); ++l)
                out += std::to_string(n) + "," + std::to_string(l) + "," +
                       table.rows[static_cast<std::size_t>(n)][l].get_str() + "\n";
    } else if (a.eta > 0.0) {
        auto s = a.irreducible ? irr::irreducible_gf_eta(a.genus, a.eta, a.order)
                               : irr::structure_gf_eta(a.genus, a.eta, a.order);
        out = "n,weight\n";
        for (int n = 0; n <= a.order; ++n)
            out += std::to_string(n) + "," + fmt(s[n]) + "\n";
    } else {
        auto s = a.irreducible ? irr::irreducible_gf(a.genus, a.order)
                               : gf::structure_gf(a.genus, a.order);
        out = "n,count\n";
        for (int n = 0; n <= a.order; ++n)
            out += std::to_string(n) + "," + s[n].get_num().get_str() + "\n";
    }
    write_or_print(a.output, out);
    return 0;
}

// ---- theory ------------------------------------------------------------

struct TheoryArgs {
    std::string model = "arc";
    int genus = 0;
    int order = gf::kDefaultAsymptoticOrder;
    double eta = 0.0;
    double hairpin_factor = 0.0, interior_factor = 0.0, multi_factor = 0.0, pair_prob = 0.0;
    int fit_lo = 0, fit_hi = 0;
    std::string out_dir;
};

int run_theory(const TheoryArgs& a) {
    irr::ProbabilityTable table;
    std::vector<double> all_series;
    if (a.model == "loop") {
        auto w = irr::LoopWeights::defaults();
        if (a.hairpin_factor > 0) w.hairpin_factor = a.hairpin_factor;
        if (a.interior_factor > 0) w.interior_factor = a.interior_factor;
        if (a.multi_factor > 0) w.multi_factor = a.multi_factor;
        if (a.pair_prob > 0) w.pair_prob = a.pair_prob;
        auto fstar = irr::loop_irreducible_gf(w, a.order);
        auto f = irr::loop_full_gf(fstar, a.order);
        all_series = to_doubles(f);
        table = irr::probability_table(to_doubles(fstar), all_series);
    } else {
        double eta = a.eta > 0 ? a.eta : gf::default_eta();
        auto dstar = irr::irreducible_gf_eta(a.genus, eta, a.order);
        auto d = irr::structure_gf_eta(a.genus, eta, a.order);
        all_series = to_doubles(d);
        table = irr::probability_table(to_doubles(dstar), all_series);
    }

    int lo = a.fit_lo > 0 ? a.fit_lo : a.order / 4;
    int hi = a.fit_hi > 0 ? a.fit_hi : a.order;
    auto fit = irr::polymer_zeta_fit(table, lo, hi);
    auto growth = irr::growth_estimate(all_series);

    std::string summary = "key,value\n";
    summary += "gamma," + fmt(growth.gamma) + "\n";
    summary += "subexp," + fmt(growth.subexp) + "\n";
    summary += "constant," + fmt(growth.constant) + "\n";
    summary += "fit_b," + fmt(fit.b) + "\n";
    summary += "fit_c," + fmt(fit.c) + "\n";
    summary += "fit_residual," + fmt(fit.residual) + "\n";
    summary += "plateau," + fmt(table.at(a.order)) + "\n";

    if (a.out_dir.empty()) {
        std::cout << summary;
        return 0;
    }
    std::filesystem::create_directories(a.out_dir);
    std::string probs = "m,P\n";
    for (int m = 1; m <= a.order; ++m)
        probs += std::to_string(m) + "," + fmt(table.at(m)) + "\n";
    std::string expect = "n,E,Ebar\n";
    for (int n = 1; n <= a.order; ++n) {
        auto e = irr::expected_candidates(table, n);
        expect += std::to_string(n) + "," + fmt(e.expected) + "," + fmt(e.normalized) + "\n";
    }
    write_or_print(a.out_dir + "/probs.csv", probs);
    write_or_print(a.out_dir + "/expectations.csv", expect);
    write_or_print(a.out_dir + "/summary.csv", summary);
    std::cout << summary;
    return 0;
}

// ---- oracle ------------------------------------------------------------

struct OracleArgs {
    bool check_gf = false;
    int max_n = 10;
    int max_genus = 2;
    int counts_n = -1;
    int genus = 0;
    bool irreducible = false;
    bool by_arcs = false;
    std::string output;
};

int run_oracle(const OracleArgs& a) {
    if (a.check_gf) {
        int failures = 0;
        for (int g = 0; g <= a.max_genus; ++g) {
            int cap = g == 2 ? std::min(a.max_n, 10) : a.max_n;
            auto d = gf::structure_gf(g, cap);
            auto dstar = irr::irreducible_gf(g, cap);
            auto e = gf::arc_filtered_gf(g, cap);
            auto estar = irr::irreducible_arc_filtered(g, cap);
            for (int n = 0; n <= cap; ++n) {
                long oracle_d = oracle::count_structures(n, g, false);
                long oracle_ds = oracle::count_structures(n, g, true);
                if (d[n] != oracle_d) {
                    ++failures;
                    std::cout << "MISMATCH d_" << g << "(" << n << "): gf=" << d[n]
                              << " oracle=" << oracle_d << "\n";
                }
                if (dstar[n] != oracle_ds) {
                    ++failures;
                    std::cout << "MISMATCH d*_" << g << "(" << n << "): gf=" << dstar[n]
                              << " oracle=" << oracle_ds << "\n";
                }
                auto by_arcs = oracle::count_structures_by_arcs(n, g, false);
                auto by_arcs_irr = oracle::count_structures_by_arcs(n, g, true);
                for (std::size_t l = 0; l < by_arcs.size(); ++l) {
                    if (e.get(n, static_cast<int>(l)) != by_arcs[l]) {
                        ++failures;
                        std::cout << "MISMATCH e_" << g << "(" << n << "," << l << ")\n";
                    }
                    if (estar.get(n, static_cast<int>(l)) != by_arcs_irr[l]) {
                        ++failures;
                        std::cout << "MISMATCH e*_" << g << "(" << n << "," << l << ")\n";
                    }
                }
            }
        }
        if (failures == 0) {
            std::cout << "OK\n";
            return 0;
        }
        std::cout << failures << " mismatches\n";
        return 1;
    }
    if (a.counts_n < 0)
        throw contract_violation("oracle: choose --check-gf or --counts N");
    std::string out;
    if (a.by_arcs) {
        out = "n,l,count\n";
        for (int n = 0; n <= a.counts_n; ++n) {
            auto row = oracle::count_structures_by_arcs(n, a.genus, a.irreducible);
            for (std::size_t l = 0; l < row.size(); ++l)
                out += std::to_string(n) + "," + std::to_string(l) + "," +
                       std::to_string(row[l]) + "\n";
        }
    } else {
        out = "n,count\n";
        for (int n = 0; n <= a.counts_n; ++n)
            out += std::to_string(n) + "," +
                   std::to_string(oracle::count_structures(n, a.genus, a.irreducible)) + "\n";
    }
    write_or_print(a.output, out);
    return 0;
}

// ---- fold --------------------------------------------------------------

struct FoldArgs {
    std::string sequence;
    std::string file;
    std::string model = "loop";
    bool sparse = true;
    double arc_score = 1.0;
    double hairpin = -0.5, interior = 1.0, multi = -5.0;
    int min_hairpin_unpaired = 1;
    int interior_span_cap = 0;
    std::string stats_json, stats_csv, dump_table;
};

EnergyModel make_model(const FoldArgs& a) {
    EnergyModel m = a.model == "arc" ? EnergyModel::arc(a.arc_score) : EnergyModel::loop();
    m.hairpin_score = a.hairpin;
    m.interior_score = a.interior;
    m.multi_score = a.multi;
    m.min_hairpin_unpaired = a.min_hairpin_unpaired;
    m.interior_span_cap = a.interior_span_cap;
    return m;
}

int run_fold(const FoldArgs& a) {
    std::string seq = a.sequence;
    if (seq.empty() && !a.file.empty()) seq = read_sequence_file(a.file);
    if (seq.empty()) throw bad_sequence("no sequence given");
    auto result = fold::fold(seq, make_model(a), a.sparse);

    std::cout << result.dot_bracket << "\n";
    std::cout << "score: " << fmt(result.score) << "\n";
    std::cout << "candidates: " << result.stats.total << " of "
              << static_cast<long long>(result.stats.omega)
              << " (ratio " << fmt(result.stats.ratio) << ")\n";
    std::cout << "split_visits: " << result.table.split_visits
              << (a.sparse ? " (sparsified)" : " (full)") << "\n";

    if (!a.stats_json.empty()) {
        nlohmann::json j{{"n", result.table.n},
                         {"score", result.score},
                         {"structure", result.dot_bracket},
                         {"sparsified", a.sparse},
                         {"candidates", result.stats.total},
                         {"omega", result.stats.omega},
                         {"ratio", result.stats.ratio},
                         {"split_visits", result.table.split_visits},
                         {"x_m", result.stats.x_m}};
        write_or_print(a.stats_json, j.dump(2) + "\n");
    }
    if (!a.stats_csv.empty()) {
        std::string out = "m,X_m\n";
        for (std::size_t m = 1; m < result.stats.x_m.size(); ++m)
            out += std::to_string(m) + "," + std::to_string(result.stats.x_m[m]) + "\n";
        write_or_print(a.stats_csv, out);
    }
    if (!a.dump_table.empty()) {
        std::string out = "i,j,L,V,W\n";
        for (int i = 0; i < result.table.n; ++i)
            for (int j = i; j < result.table.n; ++j)
                out += std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                       fmt(result.table.l(i, j)) + "," +
                       (j > i ? fmt(result.table.v(i, j)) : "") + "," +
                       (j > i ? fmt(result.table.w(i, j)) : "") + "\n";
        write_or_print(a.dump_table, out);
    }
    return 0;
}

// ---- sweep -------------------------------------------------------------

struct SweepArgs {
    std::string config_path;
    std::vector<int> lengths;
    int batch = 100;
    std::uint64_t seed = expt::kDefaultSeed;
    std::string model = "loop";
    int genus = 0;
    double eta = 0.0;
    std::string out_dir;
    int order = gf::kDefaultAsymptoticOrder;
    int threads = 0;
    FoldArgs model_knobs;
};

int run_sweep_cmd(const SweepArgs& a) {
    expt::ExperimentConfig config;
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) throw io_error("cannot read " + a.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        config = expt::config_from_json(ss.str());
    } else {
        config.lengths = a.lengths;
        config.batch = a.batch;
        config.seed = a.seed;
        FoldArgs knobs = a.model_knobs;
        knobs.model = a.model;
        config.model = make_model(knobs);
        config.genus = a.genus;
        config.eta = a.eta;
    }
    if (!a.out_dir.empty()) config.output_dir = a.out_dir;
    if (config.output_dir.empty())
        throw contract_violation("sweep: an output directory is required (--out)");
    config.theory_order = std::max(a.order, config.lengths.empty() ? 0 : config.lengths.back());
    config.threads = a.threads;

    auto result = expt::run_sweep(config);
    expt::emit_report(result, config.output_dir);
    for (const auto& row : result.rows)
        std::cout << "n=" << row.n << " mean_Q=" << fmt(row.mean_q)
                  << " ratio_exp=" << fmt(row.ratio_exp)
                  << " ratio_theory=" << fmt(row.ratio_theory) << "\n";
    std::cout << "report written to " << config.output_dir << "\n";
    return 0;
}

// ---- asym --------------------------------------------------------------

struct AsymArgs {
    std::string series = "d0";
    int order = gf::kDefaultAsymptoticOrder;
    double eta = 0.0;
};

int run_asym(const AsymArgs& a) {
    std::vector<double> coeffs;
    const std::string& s = a.series;
    auto genus_of = [&](std::size_t prefix_len) {
        return std::stoi(s.substr(prefix_len));
    };
    if (s == "catalan") {
        coeffs = to_doubles(gf::catalan_gf(a.order));
    } else if (s == "f0") {
        coeffs = to_doubles(irr::loop_full_gf(
            irr::loop_irreducible_gf(irr::LoopWeights::defaults(), a.order), a.order));
    } else if (s == "fstar0") {
        coeffs = to_doubles(irr::loop_irreducible_gf(irr::LoopWeights::defaults(), a.order));
    } else if (s.rfind("dstareta", 0) == 0) {
        double eta = a.eta > 0 ? a.eta : gf::default_eta();
        coeffs = to_doubles(irr::irreducible_gf_eta(genus_of(8), eta, a.order));
    } else if (s.rfind("deta", 0) == 0) {
        double eta = a.eta > 0 ? a.eta : gf::default_eta();
        coeffs = to_doubles(irr::structure_gf_eta(genus_of(4), eta, a.order));
    } else if (s.rfind("dstar", 0) == 0) {
        coeffs = to_doubles(irr::irreducible_gf(genus_of(5), a.order));
    } else if (s.rfind("d", 0) == 0) {
        coeffs = to_doubles(gf::structure_gf(genus_of(1), a.order));
    } else {
        throw contract_violation("asym: unknown series " + s);
    }
    auto est = irr::growth_estimate(coeffs);
    std::cout << "series,order,gamma,subexp,constant\n";
    std::cout << s << "," << a.order << "," << fmt(est.gamma) << "," << fmt(est.subexp)
              << "," << fmt(est.constant) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Candidate-set combinatorics and Lambda*-sparsified RNA folding"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string kernel = "auto";
    app.add_option("--kernel", kernel, "Kernel backend: auto, scalar, avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    GfArgs gf_args;
    auto* gf_cmd = app.add_subcommand("gf", "Emit generating-function coefficient tables");
    gf_cmd->add_option("--genus", gf_args.genus, "Genus (0..2)")->check(CLI::Range(0, 2));
    gf_cmd->add_option("--order", gf_args.order, "Truncation order")
        ->check(CLI::Range(0, 4000));
    gf_cmd->add_flag("--irreducible", gf_args.irreducible, "Irreducible structures");
    gf_cmd->add_flag("--arcs", gf_args.arcs, "Bivariate table by arc count");
    gf_cmd->add_option("--eta", gf_args.eta, "Weight per arc (float series)");
    gf_cmd->add_option("-o,--output", gf_args.output, "Output file (default stdout)");

    TheoryArgs th;
    auto* th_cmd = app.add_subcommand("theory", "Candidate probabilities and expectations");
    th_cmd->add_option("--model", th.model, "arc or loop")
        ->check(CLI::IsMember({"arc", "loop"}));
    th_cmd->add_option("--genus", th.genus, "Genus for the arc model")->check(CLI::Range(0, 2));
    th_cmd->add_option("--order", th.order, "Series order")->check(CLI::Range(8, 4000));
    th_cmd->add_option("--eta", th.eta, "Arc weight (default 6e/16)");
    th_cmd->add_option("--hairpin-factor", th.hairpin_factor, "Loop GF hairpin factor");
    th_cmd->add_option("--interior-factor", th.interior_factor, "Loop GF interior factor");
    th_cmd->add_option("--multi-factor", th.multi_factor, "Loop GF multiloop factor");
    th_cmd->add_option("--pair-prob", th.pair_prob, "Loop GF pairing probability");
    th_cmd->add_option("--fit-lo", th.fit_lo, "Polymer fit window start");
    th_cmd->add_option("--fit-hi", th.fit_hi, "Polymer fit window end");
    th_cmd->add_option("-o,--out-dir", th.out_dir, "Directory for CSV tables");

    OracleArgs oa;
    auto* or_cmd = app.add_subcommand("oracle", "Brute-force counts and GF verification");
    or_cmd->add_flag("--check-gf", oa.check_gf, "Compare GF coefficients against enumeration");
    or_cmd->add_option("--max-n", oa.max_n, "Largest n for --check-gf")->check(CLI::Range(0, 12));
    or_cmd->add_option("--max-genus", oa.max_genus, "Largest genus for --check-gf")
        ->check(CLI::Range(0, 2));
    or_cmd->add_option("--counts", oa.counts_n, "Emit counts for n = 0..N")
        ->check(CLI::Range(0, 14));
    or_cmd->add_option("--genus", oa.genus, "Genus filter")->check(CLI::Range(0, 3));
    or_cmd->add_flag("--irreducible", oa.irreducible, "Irreducible only");
    or_cmd->add_flag("--by-arcs", oa.by_arcs, "Break counts down by arc count");
    or_cmd->add_option("-o,--output", oa.output, "Output file (default stdout)");

    FoldArgs fa;
    auto* fo_cmd = app.add_subcommand("fold", "Fold one sequence");
    fo_cmd->add_option("sequence", fa.sequence, "Sequence over A,C,G,U");
    fo_cmd->add_option("--file", fa.file, "Read the sequence from a file");
    fo_cmd->add_option("--model", fa.model, "arc or loop")
        ->check(CLI::IsMember({"arc", "loop"}));
    fo_cmd->add_flag("--sparse,!--no-sparse", fa.sparse,
                     "Candidate-sparsified split rule (default on)");
    fo_cmd->add_option("--arc-score", fa.arc_score, "Arc model score per pair");
    fo_cmd->add_option("--hairpin", fa.hairpin, "Loop model hairpin score");
    fo_cmd->add_option("--interior", fa.interior, "Loop model interior score");
    fo_cmd->add_option("--multi", fa.multi, "Loop model multiloop score");
    fo_cmd->add_option("--min-hairpin-unpaired", fa.min_hairpin_unpaired,
                       "Minimum unpaired bases under a hairpin arc")
        ->check(CLI::Range(1, 10));
    fo_cmd->add_option("--interior-span-cap", fa.interior_span_cap,
                       "Cap on interior-loop unpaired span (0 = none)");
    fo_cmd->add_option("--stats-json", fa.stats_json, "Write candidate stats as JSON");
    fo_cmd->add_option("--stats-csv", fa.stats_csv, "Write the X_m histogram as CSV");
    fo_cmd->add_option("--dump-table", fa.dump_table, "Write L/V/W tables as CSV");

    SweepArgs sa;
    auto* sw_cmd = app.add_subcommand("sweep", "Batch folding sweep with theory comparison");
    sw_cmd->add_option("--config", sa.config_path, "JSON config (ExperimentConfig fields)");
    sw_cmd->add_option("--lengths", sa.lengths, "Sequence lengths, ascending")
        ->delimiter(',');
    sw_cmd->add_option("--batch", sa.batch, "Sequences per length");
    sw_cmd->add_option("--seed", sa.seed, "PRNG seed (default 1729)");
    sw_cmd->add_option("--model", sa.model, "arc or loop")
        ->check(CLI::IsMember({"arc", "loop"}));
    sw_cmd->add_option("--genus", sa.genus, "0 (DP) or 1 (oracle path, n <= 12)")
        ->check(CLI::Range(0, 1));
    sw_cmd->add_option("--eta", sa.eta, "Arc weight for the theory curve");
    sw_cmd->add_option("--out", sa.out_dir, "Report directory");
    sw_cmd->add_option("--order", sa.order, "Theory series order");
    sw_cmd->add_option("--threads", sa.threads, "Worker threads (0 = hardware)");
    sw_cmd->add_option("--arc-score", sa.model_knobs.arc_score, "Arc model score per pair");
    sw_cmd->add_option("--hairpin", sa.model_knobs.hairpin, "Loop hairpin score");
    sw_cmd->add_option("--interior", sa.model_knobs.interior, "Loop interior score");
    sw_cmd->add_option("--multi", sa.model_knobs.multi, "Loop multiloop score");
    sw_cmd->add_option("--interior-span-cap", sa.model_knobs.interior_span_cap,
                       "Interior loop span cap (0 = none)");

    AsymArgs aa;
    auto* as_cmd = app.add_subcommand("asym", "Coefficient growth estimation");
    as_cmd->add_option("--series", aa.series,
                       "catalan, d<g>, dstar<g>, deta<g>, dstareta<g>, f0, fstar0");
    as_cmd->add_option("--order", aa.order, "Series order")->check(CLI::Range(120, 4000));
    as_cmd->add_option("--eta", aa.eta, "Arc weight for eta series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (kernel != "auto")
            kernels::select(kernel == "avx2" ? kernels::Backend::avx2
                                             : kernels::Backend::scalar);
        if (gf_cmd->parsed()) return run_gf(gf_args);
        if (th_cmd->parsed()) return run_theory(th);
        if (or_cmd->parsed()) return run_oracle(oa);
        if (fo_cmd->parsed()) return run_fold(fa);
        if (sw_cmd->parsed()) return run_sweep_cmd(sa);
        if (as_cmd->parsed()) return run_asym(aa);
    } catch (const lstar::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
