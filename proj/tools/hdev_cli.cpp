// hdev: command-line front end for the h-index deviation toolkit.
//
//   hdev indices     --input profiles.csv
//   hdev fit         --input profiles.csv --family er
//   hdev deviations  --input profiles.csv --delta paper
//   hdev stats       --input items.csv [--yearly per_year.csv] [--drop-final-year]
//   hdev expected    --input items.csv --pmax 1000
//   hdev simulate    --model lotka --seed 7 --n 300
//
// Exit status: 0 success, 1 invalid input, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdev/hdev.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string input;
    std::string input_format;  // empty: by extension
    std::string format = "csv";
    std::string out;
    bool keep_all = false;
};

hdev::Corpus load_profiles(const CommonOptions& o) {
    hdev::ProfileFormat fmt = hdev::format_from_path(o.input);
    if (o.input_format == "csv") fmt = hdev::ProfileFormat::Csv;
    if (o.input_format == "json") fmt = hdev::ProfileFormat::Json;
    return hdev::ingest_profiles(o.input, fmt);
}

hdev::Corpus filtered_profiles(const CommonOptions& o) {
    auto corpus = load_profiles(o);
    if (o.keep_all) return corpus;
    auto res = hdev::apply_exclusions(corpus);
    for (const auto& ex : res.excluded)
        std::cerr << "excluded " << ex.researcher_id << ": " << ex.reason << '\n';
    return std::move(res.retained);
}

/// Runs `emit` against the --out file, or stdout when none was given.
template <class F>
void with_output(const std::string& path, F&& emit) {
    if (path.empty() || path == "-") {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hdev::ValidationError(path, 0, "", "cannot open for writing");
    emit(out);
}

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_input = true) {
    if (needs_input) cmd->add_option("--input,-i", o.input, "Input file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out,-o", o.out, "Output path (default: stdout)");
}

std::vector<hdev::FitPoint> fit_points(const hdev::Corpus& corpus, bool use_hm) {
    std::vector<hdev::FitPoint> pts;
    pts.reserve(corpus.profiles.size());
    for (const auto& prof : corpus.profiles) {
        const auto idx = hdev::index_set(prof);
        pts.push_back({static_cast<double>(idx.P), static_cast<double>(idx.C), use_hm ? idx.h_m : idx.h});
    }
    return pts;
}

// ---------------------------------------------------------------------------

void run_indices(const CommonOptions& o) {
    const auto corpus = filtered_profiles(o);
    std::vector<hdev::IndexSet> rows;
    for (const auto& prof : corpus.profiles) rows.push_back(hdev::index_set(prof));
    with_output(o.out, [&](std::ostream& out) {
        if (o.format == "json")
            out << hdev::to_json_array<hdev::IndexSet>(rows).dump(2) << '\n';
        else
            hdev::write_indices_csv(out, rows);
    });
}

struct FitCommand {
    std::string family = "er";
    std::optional<double> lo, hi;
    std::string index = "h";
    std::string profile_out;
    double profile_lo = 0.05, profile_hi = 4.0;
    std::size_t profile_n = 80;
};

void run_fit(const CommonOptions& o, const FitCommand& f) {
    const auto family = hdev::parse_family(f.family);
    if (!family) throw UsageError("unknown family '" + f.family + "'");
    auto bounds = hdev::default_bounds(*family);
    if (f.lo) bounds.lo = *f.lo;
    if (f.hi) bounds.hi = *f.hi;
    if (!(bounds.lo > 0.0 && bounds.lo < bounds.hi)) throw UsageError("bounds must satisfy 0 < lo < hi");

    const auto corpus = filtered_profiles(o);
    const auto pts = fit_points(corpus, f.index == "hm");
    const auto result = hdev::fit(pts, *family, bounds);
    if (result.degenerate) std::cerr << "warning: degenerate fit (all h equal, exponent pinned at a bound)\n";

    with_output(o.out, [&](std::ostream& out) {
        auto j = hdev::to_json(result);
        j["index"] = f.index;
        out << j.dump(2) << '\n';
    });

    if (!f.profile_out.empty()) {
        if (f.profile_n < 1 || !(f.profile_lo > 0.0) || f.profile_hi < f.profile_lo)
            throw UsageError("invalid chi2 profile grid");
        std::vector<double> grid;
        for (std::size_t i = 0; i < f.profile_n; ++i)
            grid.push_back(f.profile_n == 1 ? f.profile_lo
                                            : f.profile_lo + (f.profile_hi - f.profile_lo) * static_cast<double>(i) /
                                                                 static_cast<double>(f.profile_n - 1));
        const auto prof = hdev::chi2_profile(pts, *family, grid);
        with_output(f.profile_out, [&](std::ostream& out) { hdev::write_chi2_profile_csv(out, prof); });
    }
}

struct DeviationCommand {
    std::string delta = "paper";
    std::optional<double> delta_hm;
};

void run_deviations(const CommonOptions& o, const DeviationCommand& d) {
    const auto corpus = filtered_profiles(o);
    hdev::ReferenceCurve curve_h = hdev::published_h_curve();
    hdev::ReferenceCurve curve_hm = hdev::published_hm_curve();

    if (d.delta == "paper") {
        if (d.delta_hm) throw UsageError("--delta-hm only applies with a numeric --delta");
    } else if (d.delta == "fit") {
        if (d.delta_hm) throw UsageError("--delta-hm only applies with a numeric --delta");
        if (corpus.profiles.size() < 30)
            std::cerr << "warning: fitting a reference curve to only " << corpus.profiles.size() << " profiles\n";
        curve_h = hdev::fitted_curve(fit_points(corpus, false));
        curve_hm = hdev::fitted_curve(fit_points(corpus, true));
    } else {
        double value = 0.0;
        std::size_t used = 0;
        try {
            value = std::stod(d.delta, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != d.delta.size() || !(value > 0.0))
            throw UsageError("--delta must be 'paper', 'fit' or a positive number");
        curve_h.halfwidth_rule = hdev::ConstantHalfwidth{value};
        curve_hm.halfwidth_rule = hdev::ConstantHalfwidth{d.delta_hm.value_or(value)};
    }

    const auto rows = hdev::deviation_report(corpus, curve_h, curve_hm);
    with_output(o.out, [&](std::ostream& out) {
        if (o.format == "json")
            out << hdev::to_json_array<hdev::DeviationReport>(rows).dump(2) << '\n';
        else
            hdev::write_deviations_csv(out, rows);
    });
}

struct StatsCommand {
    std::string yearly;
    bool drop_final_year = false;
    std::string out_dir;
};

void run_stats(const CommonOptions& o, const StatsCommand& s) {
    const auto corpus = hdev::ingest_citation_corpus(
        o.input, s.yearly.empty() ? std::nullopt : std::optional<std::filesystem::path>(s.yearly));
    const auto dist = hdev::ccdf(corpus);
    std::optional<std::vector<hdev::LorenzPoint>> curve;
    try {
        curve = hdev::lorenz(corpus);
    } catch (const hdev::DomainError& e) {
        std::cerr << "lorenz curve skipped: " << e.what() << '\n';
    }
    std::optional<std::vector<hdev::AgePoint>> ages;
    if (!s.yearly.empty()) ages = hdev::age_profile(corpus, s.drop_final_year);

    std::cerr << "items: " << dist.n_items() << ", p(1) = " << hdev::fixed(dist.p(1), 3);
    if (curve)
        std::cerr << ", share of bottom 60%: " << hdev::fixed(hdev::lorenz_at(*curve, 0.60), 3)
                  << ", share of top 25%: " << hdev::fixed(1.0 - hdev::lorenz_at(*curve, 0.75), 3)
                  << ", gini: " << hdev::fixed(hdev::gini(*curve), 3);
    std::cerr << '\n';

    if (!s.out_dir.empty()) {
        std::filesystem::create_directories(s.out_dir);
        const std::filesystem::path dir(s.out_dir);
        with_output((dir / "ccdf.csv").string(), [&](std::ostream& out) { hdev::write_ccdf_csv(out, dist); });
        with_output((dir / "ccdf.json").string(),
                    [&](std::ostream& out) { out << hdev::to_json(dist).dump(2) << '\n'; });
        if (curve)
            with_output((dir / "lorenz.csv").string(),
                        [&](std::ostream& out) { hdev::write_lorenz_csv(out, *curve); });
        if (ages)
            with_output((dir / "age_profile.csv").string(),
                        [&](std::ostream& out) { hdev::write_age_profile_csv(out, *ages); });
        return;
    }
    with_output(o.out, [&](std::ostream& out) {
        if (o.format == "json") {
            out << hdev::to_json(dist).dump(2) << '\n';
            return;
        }
        hdev::write_ccdf_csv(out, dist);
        if (curve) {
            out << '\n';
            hdev::write_lorenz_csv(out, *curve);
        }
        if (ages) {
            out << '\n';
            hdev::write_age_profile_csv(out, *ages);
        }
    });
}

void run_expected(const CommonOptions& o, std::int64_t p_max) {
    if (p_max < 1) throw UsageError("--pmax must be at least 1");
    const auto corpus = hdev::ingest_citation_corpus(o.input);
    const auto curve = hdev::expected_h_curve(hdev::ccdf(corpus), p_max);
    with_output(o.out, [&](std::ostream& out) { hdev::write_expected_h_csv(out, curve); });
}

struct SimulateCommand {
    std::string model = "lotka";
    std::uint64_t seed = 1;
    std::size_t n = 300;
    hdev::Lotkaian lotka;
    hdev::HirschConstantRate hirsch;
};

void run_simulate(const CommonOptions& o, const SimulateCommand& s) {
    hdev::GeneratorConfig cfg;
    cfg.seed = s.seed;
    cfg.n_researchers = s.n;
    if (s.model == "lotka")
        cfg.model = s.lotka;
    else
        cfg.model = s.hirsch;
    try {
        hdev::validate(cfg);
    } catch (const hdev::DomainError& e) {
        throw UsageError(e.what());
    }
    const auto corpus = hdev::generate(cfg);
    with_output(o.out, [&](std::ostream& out) {
        hdev::write_profiles(out, corpus, o.format == "json" ? hdev::ProfileFormat::Json : hdev::ProfileFormat::Csv);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"h-index deviation toolkit"};
    app.require_subcommand(1, 1);

    CommonOptions common;
    auto add_input_format = [&](CLI::App* cmd) {
        cmd->add_option("--input-format", common.input_format, "Profile input format (default: by extension)")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--keep-all", common.keep_all, "Skip the zero-citation exclusion rule");
    };

    auto* indices = app.add_subcommand("indices", "Per-researcher P, C, h, h_m, h/P, C/P");
    add_common(indices, common);
    add_input_format(indices);

    FitCommand fitc;
    auto* fitcmd = app.add_subcommand("fit", "Fit a power-law model for h across all profiles");
    add_common(fitcmd, common);
    add_input_format(fitcmd);
    fitcmd->add_option("--family", fitc.family, "Model family")->check(CLI::IsMember({"hirsch", "er", "gs"}));
    fitcmd->add_option("--lo", fitc.lo, "Lower exponent bound");
    fitcmd->add_option("--hi", fitc.hi, "Upper exponent bound");
    fitcmd->add_option("--index", fitc.index, "Fit h or h_m")->check(CLI::IsMember({"h", "hm"}));
    fitcmd->add_option("--profile-out", fitc.profile_out, "Write a chi2-versus-exponent CSV here");
    fitcmd->add_option("--profile-lo", fitc.profile_lo, "First exponent of the chi2 profile grid");
    fitcmd->add_option("--profile-hi", fitc.profile_hi, "Last exponent of the chi2 profile grid");
    fitcmd->add_option("--profile-n", fitc.profile_n, "Number of chi2 profile grid points");

    DeviationCommand devc;
    auto* devcmd = app.add_subcommand("deviations", "delta_h and delta_h_m per researcher");
    add_common(devcmd, common);
    add_input_format(devcmd);
    devcmd->add_option("--delta", devc.delta, "Half-width mode: paper, fit, or a number");
    devcmd->add_option("--delta-hm", devc.delta_hm, "Half-width for h_m when --delta is a number");

    StatsCommand statc;
    auto* statcmd = app.add_subcommand("stats", "ccdf, Lorenz curve and age profile of a citation corpus");
    add_common(statcmd, common);
    statcmd->add_option("--yearly", statc.yearly, "Per-year citation CSV")->check(CLI::ExistingFile);
    statcmd->add_flag("--drop-final-year", statc.drop_final_year, "Omit the last (partial) citation year");
    statcmd->add_option("--out-dir", statc.out_dir, "Write ccdf.csv, ccdf.json, lorenz.csv, age_profile.csv here");

    std::int64_t p_max = 1000;
    auto* expcmd = app.add_subcommand("expected", "Expected h versus P from a citation corpus");
    add_common(expcmd, common);
    expcmd->add_option("--pmax", p_max, "Largest P on the curve");

    SimulateCommand simc;
    auto* simcmd = app.add_subcommand("simulate", "Generate a synthetic profile file");
    add_common(simcmd, common, false);
    simcmd->add_option("--model", simc.model, "Generative model")->check(CLI::IsMember({"lotka", "hirsch"}));
    simcmd->add_option("--seed", simc.seed, "Random seed");
    simcmd->add_option("--n", simc.n, "Number of researchers");
    simcmd->add_option("--theta", simc.lotka.theta, "Lotkaian exponent (> 1)");
    simcmd->add_option("--papers-min", simc.lotka.papers_min, "Fewest papers per researcher (lotka)");
    simcmd->add_option("--papers-max", simc.lotka.papers_max, "Most papers per researcher (lotka)");
    simcmd->add_option("--cap", simc.lotka.citation_cap, "Citation cap per paper (lotka)");
    simcmd->add_option("--authors-max", simc.lotka.authors_max, "Most authors per paper (lotka)");
    simcmd->add_option("--paper-rate", simc.hirsch.papers_per_year, "Papers per year (hirsch)");
    simcmd->add_option("--citation-rate", simc.hirsch.citations_per_paper_year,
                       "Citations per paper per year (hirsch)");
    simcmd->add_option("--career-min", simc.hirsch.career_min, "Shortest career in years (hirsch)");
    simcmd->add_option("--career-max", simc.hirsch.career_max, "Longest career in years (hirsch)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (indices->parsed()) run_indices(common);
        else if (fitcmd->parsed()) run_fit(common, fitc);
        else if (devcmd->parsed()) run_deviations(common, devc);
        else if (statcmd->parsed()) run_stats(common, statc);
        else if (expcmd->parsed()) run_expected(common, p_max);
        else if (simcmd->parsed()) run_simulate(common, simc);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const hdev::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const hdev::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return EXIT_SUCCESS;
}
