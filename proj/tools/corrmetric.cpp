// corrmetric: correlation dissimilarity measures, metric audits, the
// theta counterexample family, and clustering-coherence comparisons.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "corrmetric/clustering.hpp"
#include "corrmetric/counterexample.hpp"
#include "corrmetric/io.hpp"
#include "corrmetric/metric_audit.hpp"
#include "corrmetric/serialize.hpp"

namespace {

using namespace corrmetric;

constexpr double kIngestTol = 1e-6;  // validation slack for user-supplied matrices

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

void print_matrix(std::ostringstream& out, const Eigen::MatrixXd& m, const char* indent) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << indent;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ' ';
            out << fmt6(m(i, j));
        }
        out << '\n';
    }
}

std::string triple_label(int i, int j, int k, const std::vector<std::string>& names) {
    return "(" + names[static_cast<std::size_t>(i)] + "," + names[static_cast<std::size_t>(j)] +
           ";" + names[static_cast<std::size_t>(k)] + ")";
}

std::vector<std::string> default_names(Eigen::Index n) {
    std::vector<std::string> names;
    for (Eigen::Index i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
    return names;
}

struct CommonOpts {
    std::string input_path;
    bool input_is_matrix = false;
    std::string format = "table";
    std::string output_path;
    double tol = 1e-9;
};

// Writes the primary document to stdout or --output.
void emit(const CommonOpts& opts, const json& doc, const std::string& table) {
    const std::string text = opts.format == "json" ? doc.dump(2) + "\n" : table;
    if (!opts.output_path.empty()) {
        std::ofstream file(opts.output_path);
        if (!file) throw Error("cannot open file for writing: " + opts.output_path);
        file << text;
    } else {
        std::cout << text;
    }
}

struct NamedCorrelation {
    CorrelationMatrix corr;
    std::vector<std::string> names;
};

// Correlation input for commands accepting --input [--matrix] or --theta.
NamedCorrelation load_correlation(const CommonOpts& opts, std::optional<double> theta) {
    if (theta) {
        CounterexampleSpec spec = build_counterexample(ThetaParams(*theta));
        return {std::move(spec.correlation), {"X", "Y", "Z"}};
    }
    if (opts.input_path.empty()) {
        throw Error("provide --input or --theta");
    }
    if (opts.input_is_matrix) {
        Eigen::MatrixXd m = read_matrix_csv(opts.input_path);
        const Eigen::Index n = m.rows();
        return {validate_correlation(std::move(m), kIngestTol), default_names(n)};
    }
    DataMatrix data = read_data_csv(opts.input_path);
    std::vector<std::string> names = data.var_names();
    return {pearson_correlation(data), std::move(names)};
}

std::string report_table(const MetricReport& report, const std::vector<std::string>& names,
                         const std::string& measure_label) {
    std::ostringstream out;
    out << "measure: " << measure_label << '\n';
    out << "symmetric: " << yesno(report.symmetric) << '\n';
    out << "nonneg_zero_diag: " << yesno(report.nonneg_zero_diag) << '\n';
    out << "tolerance: " << fmt6(report.tolerance) << '\n';
    out << "is_metric: " << yesno(report.is_metric) << '\n';
    out << "is_ultrametric: " << yesno(report.is_ultrametric) << '\n';
    out << "triangle_violations: " << report.triangle_violations.size() << '\n';
    for (const auto& v : report.triangle_violations) {
        out << "  " << triple_label(v.i, v.j, v.k, names) << " margin " << fmt6(v.margin) << '\n';
    }
    out << "ultrametric_violations: " << report.ultrametric_violation_count;
    if (report.worst_ultrametric) {
        const auto& w = *report.worst_ultrametric;
        out << " (worst " << triple_label(w.i, w.j, w.k, names) << " margin " << fmt6(w.margin)
            << ")";
    }
    out << '\n';
    if (!report.zero_offdiagonal_pairs.empty()) {
        out << "warning: zero dissimilarity between distinct variables:";
        for (const auto& [i, j] : report.zero_offdiagonal_pairs) {
            out << " (" << names[static_cast<std::size_t>(i)] << ","
                << names[static_cast<std::size_t>(j)] << ")";
        }
        out << '\n';
    }
    return out.str();
}

int cmd_check(const CommonOpts& opts, MeasureKind measure) {
    NamedCorrelation loaded = load_correlation(opts, std::nullopt);
    const DissimilarityMatrix d = apply_measure(loaded.corr, measure);
    const MetricReport report = audit(d, opts.tol);

    json doc = to_json(report, loaded.names);
    doc["measure"] = to_string(measure);
    emit(opts, doc, report_table(report, loaded.names, to_string(measure)));
    return report.is_metric ? 0 : 2;
}

int cmd_counterexample(const CommonOpts& opts, std::optional<double> theta,
                       std::optional<std::size_t> grid) {
    if (theta) {
        CounterexampleSpec spec = build_counterexample(ThetaParams(*theta));
        const ViolationMargins m = margins(spec.theta);

        json doc = to_json(spec);
        doc["margins"] = to_json(m);
        doc["violated"] = json{{"pearson", m.pearson > 0.0},
                               {"abspearson", m.abs_pearson > 0.0},
                               {"sqrtpearson", m.sqrt_pearson > 0.0},
                               {"psquared", m.psquared > 0.0}};

        std::ostringstream table;
        table << "theta: " << fmt6(*theta) << '\n';
        table << "correlation:\n";
        print_matrix(table, spec.correlation.entries(), "  ");
        table << "latent: var_u " << fmt6(spec.latent.var_u) << ", var_vw "
              << fmt6(spec.latent.var_vw) << ", corr_vw " << fmt6(spec.latent.corr_vw) << '\n';
        table << "margins:\n";
        table << "  pearson     " << fmt6(m.pearson)
              << (m.pearson > 0.0 ? "  VIOLATED" : "  ok") << '\n';
        table << "  abspearson  " << fmt6(m.abs_pearson)
              << (m.abs_pearson > 0.0 ? "  VIOLATED" : "  ok") << '\n';
        table << "  sqrtpearson " << fmt6(m.sqrt_pearson)
              << (m.sqrt_pearson > 0.0 ? "  VIOLATED" : "  ok") << '\n';
        table << "  psquared    " << fmt6(m.psquared)
              << (m.psquared > 0.0 ? "  VIOLATED" : "  ok") << '\n';
        emit(opts, doc, table.str());
        return 0;
    }
    if (!grid) {
        throw Error("provide --theta or --grid");
    }

    // Grid mode: the sweep table goes to --output, the summary to stdout.
    const BoundaryEstimate boundary = sweep_boundary(*grid);
    json doc{{"grid_size", *grid},
             {"theta_star", boundary.theta_star},
             {"fraction_of_range", boundary.fraction_of_range}};
    std::ostringstream table;
    table << "grid_size: " << *grid << '\n';
    table << "theta_star: " << fmt6(boundary.theta_star) << '\n';
    table << "fraction_of_range: " << fmt6(boundary.fraction_of_range) << '\n';
    if (!opts.output_path.empty()) {
        write_sweep_csv(opts.output_path, sweep_margins(*grid));
        doc["sweep_file"] = opts.output_path;
        table << "sweep_file: " << opts.output_path << '\n';
    }
    std::cout << (opts.format == "json" ? doc.dump(2) + "\n" : table.str());
    return 0;
}

int cmd_sample(const CommonOpts& opts, double theta, std::size_t n_samples, std::uint64_t seed,
               MeasureKind measure) {
    const CounterexampleSpec spec = build_counterexample(ThetaParams(theta));
    const DataMatrix data = sample_triple(spec, SampleConfig{n_samples, seed});
    if (!opts.output_path.empty()) {
        write_data_csv(opts.output_path, data);
    }

    const CorrelationMatrix empirical = pearson_correlation(data);
    const Eigen::MatrixXd errors =
        (empirical.entries() - spec.correlation.entries()).cwiseAbs();
    const double max_abs_error = errors.maxCoeff();

    // 3-sigma plug-in bound 3(1 - rho^2)/sqrt(n) per off-diagonal entry,
    // evaluated at the analytic correlations.
    double bound_max = 0.0;
    Eigen::MatrixXd bounds = Eigen::MatrixXd::Zero(3, 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) {
            if (i == j) continue;
            const double rho = spec.correlation(i, j);
            bounds(i, j) = 3.0 * (1.0 - rho * rho) / std::sqrt(static_cast<double>(n_samples));
            bound_max = std::max(bound_max, bounds(i, j));
        }
    }
    const bool wide_confidence = bound_max > 0.05;

    const DissimilarityMatrix d = apply_measure(empirical, measure);
    const MetricReport report = audit(d, opts.tol);
    const std::vector<std::string> names = data.var_names();

    json doc{{"theta", theta},
             {"n_samples", n_samples},
             {"seed", seed},
             {"analytic", to_json(spec)["correlation"]},
             {"empirical", json::array()},
             {"max_abs_error", max_abs_error},
             {"error_bound_3sigma", bound_max},
             {"wide_confidence", wide_confidence},
             {"measure", to_string(measure)},
             {"audit", to_json(report, names)}};
    for (Eigen::Index i = 0; i < 3; ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < 3; ++j) row.push_back(empirical(i, j));
        doc["empirical"].push_back(std::move(row));
    }
    if (!opts.output_path.empty()) doc["data_file"] = opts.output_path;

    std::ostringstream table;
    table << "theta: " << fmt6(theta) << ", n: " << n_samples << ", seed: " << seed << '\n';
    table << "analytic correlation:\n";
    print_matrix(table, spec.correlation.entries(), "  ");
    table << "empirical correlation:\n";
    print_matrix(table, empirical.entries(), "  ");
    table << "max_abs_error: " << fmt6(max_abs_error) << '\n';
    table << "error_bound_3sigma: " << fmt6(bound_max)
          << (wide_confidence ? "  (wide confidence interval; increase --n)" : "") << '\n';
    if (!opts.output_path.empty()) table << "data_file: " << opts.output_path << '\n';
    table << report_table(report, names, to_string(measure));

    // The data file already went to --output; the document goes to stdout.
    std::cout << (opts.format == "json" ? doc.dump(2) + "\n" : table.str());
    return 0;
}

int cmd_transform(const CommonOpts& opts, const std::string& builtin_name,
                  const std::string& transform_file, std::size_t grid_count,
                  const std::string& apply_to, std::optional<double> theta) {
    std::optional<TransformSpec> spec;
    if (!builtin_name.empty()) {
        spec = TransformSpec::builtin_from_string(builtin_name);
        if (!spec) throw Error("unknown builtin transform: " + builtin_name);
    } else if (!transform_file.empty()) {
        spec = read_transform_csv(transform_file);
    } else {
        throw Error("provide --builtin or --transform-file");
    }

    const std::vector<double> grid = uniform_grid(default_analysis_max(*spec), grid_count);
    const TransformVerdict verdict = analyze_transform(*spec, grid);

    json doc{{"transform", spec->name()}, {"analysis", to_json(verdict)}};
    std::ostringstream table;
    table << "transform: " << spec->name() << '\n';
    table << "passes_origin: " << yesno(verdict.passes_origin) << '\n';
    table << "monotone_increasing: " << yesno(verdict.monotone_increasing) << '\n';
    table << "convexity: " << to_string(verdict.convexity) << '\n';
    table << "prediction: " << to_string(verdict.prediction) << '\n';

    if (!apply_to.empty()) {
        const auto measure = measure_from_string(apply_to);
        if (!measure) throw Error("unknown measure: " + apply_to);
        NamedCorrelation loaded = load_correlation(opts, theta);
        const DissimilarityMatrix base = apply_measure(loaded.corr, *measure);
        const DissimilarityMatrix composed = compose_transform(base, *spec);
        const MetricReport report = audit(composed, opts.tol);
        doc["applied"] = json{{"measure", to_string(*measure)},
                              {"provenance", composed.provenance()},
                              {"audit", to_json(report, loaded.names)}};
        table << "applied_to: " << to_string(*measure) << " -> " << composed.provenance()
              << '\n';
        table << report_table(report, loaded.names, composed.provenance());
    }
    emit(opts, doc, table.str());
    return 0;
}

int cmd_cluster(const CommonOpts& opts, MeasureKind measure_a, MeasureKind measure_b,
                LinkageKind linkage, const std::vector<std::size_t>& ks,
                std::optional<double> theta) {
    NamedCorrelation loaded = load_correlation(opts, theta);
    const CoherenceComparison cmp =
        compare_measures(loaded.corr, measure_a, measure_b, linkage, ks, loaded.names);

    std::ostringstream table;
    auto coherence_line = [&](const char* tag, MeasureKind m, const CoherenceIndex& ci) {
        table << tag << ": " << to_string(m) << " coherence " << fmt6(ci.value) << " via "
              << triple_label(ci.i, ci.j, ci.k, loaded.names) << '\n';
    };
    coherence_line("measure_a", measure_a, cmp.coherence_a);
    coherence_line("measure_b", measure_b, cmp.coherence_b);
    auto partition_text = [&](const Partition& p) {
        std::string s;
        for (const auto& group : p) {
            s += "{";
            for (std::size_t i = 0; i < group.size(); ++i) {
                if (i > 0) s += ",";
                s += loaded.names[static_cast<std::size_t>(group[i])];
            }
            s += "}";
        }
        return s;
    };
    for (const KAgreement& ka : cmp.at_k) {
        table << "k=" << ka.k << ": rand_index " << fmt6(ka.rand) << "  a="
              << partition_text(ka.partition_a) << "  b=" << partition_text(ka.partition_b)
              << '\n';
    }
    emit(opts, to_json(cmp), table.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlation dissimilarity toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::optional<double> theta;
    std::optional<std::size_t> grid;
    std::string measure_name = "pearson";
    std::string measure_b_name = "sqrtpearson";
    std::string linkage_name = "single";
    std::string builtin_name;
    std::string transform_file;
    std::string apply_to;
    std::size_t n_samples = 10000;
    std::uint64_t seed = 0;
    std::size_t analysis_grid = 256;
    std::vector<std::size_t> ks{2};

    auto add_common = [&](CLI::App* cmd, bool with_input) {
        if (with_input) {
            cmd->add_option("--input", opts.input_path, "input file (data CSV, or matrix CSV with --matrix)");
            cmd->add_flag("--matrix", opts.input_is_matrix, "treat --input as a correlation matrix");
        }
        cmd->add_option("--tol", opts.tol, "triangle tolerance for audits")->capture_default_str();
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"json", "table"}))
            ->capture_default_str();
        cmd->add_option("--output", opts.output_path, "output path (see subcommand help)");
    };

    CLI::App* check = app.add_subcommand(
        "check", "audit the metric properties of a measure on the input; exit 2 on violation");
    add_common(check, true);
    check->add_option("--measure", measure_name, "dissimilarity measure")
        ->check(CLI::IsMember({"pearson", "abspearson", "sqrtpearson", "psquared"}))
        ->capture_default_str();

    CLI::App* counter = app.add_subcommand(
        "counterexample",
        "evaluate the theta family: --theta prints the matrix and margins, --grid sweeps the "
        "range and writes the sweep table to --output");
    add_common(counter, false);
    counter->add_option("--theta", theta, "angle in (0, pi/2), radians");
    counter->add_option("--grid", grid, "sweep grid size (>= 100)");

    CLI::App* sample = app.add_subcommand(
        "sample", "draw Gaussian samples from the theta family; --output takes the data CSV");
    add_common(sample, false);
    sample->add_option("--theta", theta, "angle in (0, pi/2), radians")->required();
    sample->add_option("--n", n_samples, "number of samples")->capture_default_str();
    sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
    sample->add_option("--measure", measure_name, "measure for the empirical audit")
        ->check(CLI::IsMember({"pearson", "abspearson", "sqrtpearson", "psquared"}))
        ->capture_default_str();

    CLI::App* transform = app.add_subcommand(
        "transform",
        "analyze a transform for metric preservation; with --apply-to, also audit the "
        "transformed measure on the input");
    add_common(transform, true);
    transform->add_option("--builtin", builtin_name,
                          "square | sqrt | quarter_root_composite | circle_convex");
    transform->add_option("--transform-file", transform_file, "sampled transform CSV");
    transform->add_option("--grid", analysis_grid, "analysis grid density")
        ->capture_default_str();
    transform->add_option("--apply-to", apply_to, "measure to transform and audit");
    transform->add_option("--theta", theta, "use the theta-family correlation matrix");

    CLI::App* clusters = app.add_subcommand(
        "cluster", "compare clustering coherence of two measures on the input");
    add_common(clusters, true);
    clusters->add_option("--measure", measure_name, "first measure")
        ->check(CLI::IsMember({"pearson", "abspearson", "sqrtpearson", "psquared"}))
        ->capture_default_str();
    clusters->add_option("--measure-b", measure_b_name, "second measure")
        ->check(CLI::IsMember({"pearson", "abspearson", "sqrtpearson", "psquared"}))
        ->capture_default_str();
    clusters->add_option("--linkage", linkage_name, "linkage rule")
        ->check(CLI::IsMember({"single", "complete", "average"}))
        ->capture_default_str();
    clusters->add_option("--k", ks, "cluster counts to cut at")->delimiter(',');
    clusters->add_option("--theta", theta, "use the theta-family correlation matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const auto measure = measure_from_string(measure_name);
        if (check->parsed()) {
            return cmd_check(opts, *measure);
        }
        if (counter->parsed()) {
            return cmd_counterexample(opts, theta, grid);
        }
        if (sample->parsed()) {
            return cmd_sample(opts, *theta, n_samples, seed, *measure);
        }
        if (transform->parsed()) {
            return cmd_transform(opts, builtin_name, transform_file, analysis_grid, apply_to,
                                 theta);
        }
        if (clusters->parsed()) {
            const auto measure_b = measure_from_string(measure_b_name);
            if (!measure_b) throw Error("unknown measure: " + measure_b_name);
            return cmd_cluster(opts, *measure, *measure_b, *linkage_from_string(linkage_name),
                               ks, theta);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
