// tricl: triadic closure statistics and inference for multi-edge networks.

#include "tricl/countmodel.hpp"
#include "tricl/ghype.hpp"
#include "tricl/io.hpp"
#include "tricl/multigraph.hpp"
#include "tricl/statistics.hpp"
#include "tricl/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonInputs {
    std::string edges_path;
    std::string contacts_path;
    std::string meta_path;
    std::string attrs_path;
    std::string nodes_path;
};

void add_input_flags(CLI::App* cmd, CommonInputs& in, bool need_input) {
    auto* edges = cmd->add_option("--edges", in.edges_path, "edge-list CSV (source,target[,count])");
    auto* contacts =
        cmd->add_option("--contacts", in.contacts_path, "contact records 't i j [...]'");
    cmd->add_option("--meta", in.meta_path, "contact metadata 'node class [gender]'");
    cmd->add_option("--attrs", in.attrs_path, "node-attribute CSV (node,<attr>...)");
    cmd->add_option("--nodes", in.nodes_path, "declared node list (isolated nodes)");
    edges->excludes(contacts);
    if (need_input) {
        // exactly one of --edges / --contacts
        cmd->callback([&in, cmd] {
            if (in.edges_path.empty() && in.contacts_path.empty())
                throw CLI::ValidationError(cmd->get_name(), "one of --edges or --contacts is required");
        });
    }
}

tricl::MultiEdgeNetwork load_network(const CommonInputs& in) {
    std::vector<tricl::EdgeListRow> rows;
    std::vector<std::string> declared;
    if (!in.contacts_path.empty()) {
        rows = tricl::read_contact_records_file(in.contacts_path);
        if (!in.meta_path.empty()) {
            const auto meta = tricl::read_contact_metadata_file(in.meta_path);
            declared = meta.nodes;
            auto net = tricl::MultiEdgeNetwork::from_edge_list(rows, declared);
            for (const auto& [name, values] : meta.attributes) {
                std::vector<std::string> aligned(static_cast<std::size_t>(net.node_count()));
                for (std::size_t k = 0; k < meta.nodes.size(); ++k) {
                    const auto idx = net.find(meta.nodes[k]);
                    if (idx)
                        aligned[static_cast<std::size_t>(*idx)] = values[k];
                }
                for (std::size_t i = 0; i < aligned.size(); ++i)
                    if (aligned[i].empty())
                        throw tricl::InputError("metadata is missing node '" + net.labels()[i] +
                                                "'");
                net = net.with_attribute(name, aligned);
            }
            return net;
        }
        return tricl::MultiEdgeNetwork::from_edge_list(rows, declared);
    }
    rows = tricl::read_edge_list_csv_file(in.edges_path);
    if (!in.nodes_path.empty())
        declared = tricl::read_node_list_file(in.nodes_path);
    auto net = tricl::MultiEdgeNetwork::from_edge_list(rows, declared);
    if (!in.attrs_path.empty())
        net = tricl::read_attributes_csv_file(in.attrs_path, net);
    return net;
}

tricl::StatisticMatrix make_statistic(const tricl::MultiEdgeNetwork& net,
                                      const std::string& name) {
    if (name == "weighted_sp")
        return tricl::shared_partners_weighted(net);
    if (name == "unweighted_sp")
        return tricl::shared_partners_unweighted(net);
    if (name == "degree")
        return tricl::degree_covariate(net);
    if (name.rfind("match:", 0) == 0) {
        const std::string attr = name.substr(6);
        if (!net.has_attribute(attr))
            throw CLI::ValidationError("--covariate",
                                       "attribute '" + attr + "' not found (did you pass --attrs?)");
        return tricl::attribute_match(net, attr);
    }
    throw CLI::ValidationError("--covariate", "unknown statistic '" + name +
                                                  "' (use weighted_sp, unweighted_sp, degree, "
                                                  "match:<attr>)");
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw tricl::InputError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

std::optional<json> read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    json j;
    in >> j;
    return j;
}

struct ReportRow {
    std::string section, quantity;
    double reference;
    std::optional<double> computed;
    double tolerance;
    bool checked = true;  // pass/fail row vs informational
};

std::string markdown_report(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << "# Validation report\n\n";
    os << "| section | quantity | reference | computed | tolerance | status |\n";
    os << "|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        os << "| " << r.section << " | " << r.quantity << " | " << r.reference << " | ";
        if (!r.computed) {
            os << "-- | -- | skipped |\n";
            continue;
        }
        os << *r.computed << " | ";
        if (!r.checked) {
            os << "-- | reported |\n";
            continue;
        }
        os << "±" << r.tolerance << " | "
           << (std::abs(*r.computed - r.reference) <= r.tolerance ? "pass" : "FAIL") << " |\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"triadic closure statistics and inference for multi-edge networks"};
    app.require_subcommand(1);

    // ---- stats ----
    auto* stats = app.add_subcommand("stats", "compute dyad change-statistic matrices");
    CommonInputs stats_in;
    add_input_flags(stats, stats_in, true);
    std::vector<std::string> stat_names;
    std::string stats_out;
    std::string stats_format = "csv";
    stats->add_option("--stat", stat_names, "statistic name (repeatable)")->required();
    stats->add_option("--out", stats_out, "output directory (default: print to stdout)");
    stats->add_option("--format", stats_format, "csv|tsv|json")
        ->check(CLI::IsMember({"csv", "tsv", "json"}));

    // ---- fit ----
    auto* fit_cmd = app.add_subcommand("fit", "fit a gHypEG or count model");
    CommonInputs fit_in;
    add_input_flags(fit_cmd, fit_in, true);
    std::vector<std::string> covariate_names;
    std::string model_name = "ghype";
    std::string xi_mode = "config";
    std::string likelihood_mode;
    bool include_nonzero = false;
    std::string fit_out;
    fit_cmd->add_option("--covariate", covariate_names, "covariate statistic (repeatable)")
        ->required();
    fit_cmd->add_option("--model", model_name, "ghype|count")
        ->check(CLI::IsMember({"ghype", "count"}));
    fit_cmd->add_option("--xi", xi_mode, "config|meandeg (ghype)")
        ->check(CLI::IsMember({"config", "meandeg"}));
    fit_cmd->add_option("--likelihood", likelihood_mode, "exact|multinomial (ghype)")
        ->check(CLI::IsMember({"exact", "multinomial"}));
    fit_cmd->add_flag("--nonzero", include_nonzero, "include the nonzero term (count model)");
    fit_cmd->add_option("--out", fit_out, "FitResult JSON path");

    // ---- synth ----
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic validation network");
    std::string kind_name = "random_complete";
    int synth_n = 34;
    std::int64_t synth_m = 1000;
    int synth_ntri = 26;
    std::uint64_t synth_seed = 1;
    std::string synth_out;
    synth_cmd->add_option("--kind", kind_name, "random_complete|triangles|mixed")
        ->check(CLI::IsMember({"random_complete", "triangles", "mixed"}));
    synth_cmd->add_option("--n", synth_n, "node count");
    synth_cmd->add_option("--m", synth_m, "edge count");
    synth_cmd->add_option("--ntri", synth_ntri, "triangle count");
    synth_cmd->add_option("--seed", synth_seed, "generator seed");
    synth_cmd->add_option("--out", synth_out, "edge-list CSV path")->required();

    // ---- replicate ----
    auto* rep_cmd = app.add_subcommand("replicate", "replicate generation + gHypEG fits");
    std::string rep_kind = "triangles";
    int rep_n = 34;
    std::int64_t rep_m = 1000;
    int rep_ntri = 26;
    std::uint64_t rep_seed = 1;
    int rep_reps = 100;
    int rep_threads = static_cast<int>(std::thread::hardware_concurrency());
    std::string rep_cov = "weighted_sp";
    std::string rep_xi = "meandeg";
    std::string rep_likelihood;
    std::string rep_out;
    std::string rep_tsv;
    rep_cmd->add_option("--kind", rep_kind, "random_complete|triangles|mixed")
        ->check(CLI::IsMember({"random_complete", "triangles", "mixed"}));
    rep_cmd->add_option("--n", rep_n, "node count");
    rep_cmd->add_option("--m", rep_m, "edge count");
    rep_cmd->add_option("--ntri", rep_ntri, "triangle count");
    rep_cmd->add_option("--seed", rep_seed, "base seed; replication r uses seed + r");
    rep_cmd->add_option("--reps", rep_reps, "number of replications");
    rep_cmd->add_option("--threads", rep_threads, "worker threads");
    rep_cmd->add_option("--covariate", rep_cov, "weighted_sp|unweighted_sp")
        ->check(CLI::IsMember({"weighted_sp", "unweighted_sp"}));
    rep_cmd->add_option("--xi", rep_xi, "config|meandeg")
        ->check(CLI::IsMember({"config", "meandeg"}));
    rep_cmd->add_option("--likelihood", rep_likelihood, "exact|multinomial")
        ->check(CLI::IsMember({"exact", "multinomial"}));
    rep_cmd->add_option("--out", rep_out, "summary JSON path");
    rep_cmd->add_option("--tsv", rep_tsv, "per-replication coefficient TSV path");

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "assemble a validation report");
    std::string report_in;
    std::string report_out;
    report_cmd->add_option("--in", report_in, "directory with fit/replication JSON outputs")
        ->required();
    report_cmd->add_option("--out", report_out, "markdown output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "tricl: usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (stats->parsed()) {
            const auto net = load_network(stats_in);
            for (const auto& name : stat_names) {
                const auto stat = make_statistic(net, name);
                std::ostringstream body;
                if (stats_format == "csv") {
                    tricl::write_matrix_csv(body, net.labels(), stat.values);
                } else if (stats_format == "tsv") {
                    tricl::write_matrix_long_tsv(body, net.labels(), stat.values);
                } else {
                    json values = json::array();
                    for (tricl::Index i = 0; i < stat.values.rows(); ++i) {
                        json row = json::array();
                        for (tricl::Index j = 0; j < stat.values.cols(); ++j)
                            row.push_back(stat.values(i, j));
                        values.push_back(row);
                    }
                    body << json{{"name", name}, {"labels", net.labels()}, {"values", values}}
                                .dump(2)
                         << '\n';
                }
                if (stats_out.empty()) {
                    std::cout << body.str();
                } else {
                    fs::create_directories(stats_out);
                    const auto path = fs::path(stats_out) / (name + "." + stats_format);
                    tricl::write_text_file(path.string(), body.str());
                }
                const double r2 = net.node_count() >= 3 ? tricl::variance_explained(net, stat) : 0.0;
                std::cout << "R^2[" << name << "] = " << r2 << '\n';
            }
        } else if (fit_cmd->parsed()) {
            auto net = load_network(fit_in);
            std::vector<tricl::StatisticMatrix> covariates;
            for (const auto& name : covariate_names)
                covariates.push_back(make_statistic(net, name));
            tricl::FitResult result;
            if (model_name == "ghype") {
                tricl::GhypeFitOptions options;
                options.degree_corrected = xi_mode == "config";
                if (likelihood_mode == "exact")
                    options.likelihood = tricl::GhypeLikelihood::exact;
                else if (likelihood_mode == "multinomial")
                    options.likelihood = tricl::GhypeLikelihood::multinomial;
                result = tricl::fit(net, covariates, options);
            } else {
                tricl::CountFitOptions options;
                options.include_nonzero = include_nonzero;
                result = tricl::fit_count(net, covariates, options);
            }
            std::cout << tricl::format_fit_result(result);
            if (!fit_out.empty())
                write_json_file(fit_out, tricl::fit_result_to_json(result));
        } else if (synth_cmd->parsed()) {
            tricl::GeneratorSpec spec;
            spec.kind = kind_name == "random_complete" ? tricl::GeneratorKind::random_complete
                        : kind_name == "triangles"     ? tricl::GeneratorKind::triangles
                                                       : tricl::GeneratorKind::mixed;
            spec.n = synth_n;
            spec.m = synth_m;
            spec.n_tri = synth_ntri;
            spec.seed = synth_seed;
            const auto net = tricl::generate(spec);
            std::ostringstream body;
            tricl::write_edge_list_csv(body, net);
            tricl::write_text_file(synth_out, body.str());
            std::ostringstream nodes;
            for (const auto& label : net.labels())
                nodes << label << '\n';
            tricl::write_text_file(synth_out + ".nodes", nodes.str());
            std::cout << "wrote " << synth_out << " (n = " << net.node_count()
                      << ", m = " << net.edge_total() << ")\n";
        } else if (rep_cmd->parsed()) {
            tricl::GeneratorSpec spec;
            spec.kind = rep_kind == "random_complete" ? tricl::GeneratorKind::random_complete
                        : rep_kind == "triangles"     ? tricl::GeneratorKind::triangles
                                                       : tricl::GeneratorKind::mixed;
            spec.n = rep_n;
            spec.m = rep_m;
            spec.n_tri = rep_ntri;
            spec.seed = rep_seed;
            tricl::GhypeFitOptions options;
            options.degree_corrected = rep_xi == "config";
            if (rep_likelihood == "exact")
                options.likelihood = tricl::GhypeLikelihood::exact;
            else if (rep_likelihood == "multinomial")
                options.likelihood = tricl::GhypeLikelihood::multinomial;
            const auto covariate = rep_cov == "weighted_sp" ? tricl::CovariateKind::weighted_sp
                                                            : tricl::CovariateKind::unweighted_sp;
            const auto summary =
                tricl::replicate(spec, rep_reps, covariate, options, std::max(1, rep_threads));
            std::cout << "coefficient mean " << summary.mean << " (min " << summary.min << ", max "
                      << summary.max << ", sd " << summary.sd << "), significant fraction "
                      << summary.significant_fraction << ", failures " << summary.failed.size()
                      << '\n';
            if (!rep_out.empty())
                write_json_file(rep_out, tricl::replication_summary_to_json(summary));
            if (!rep_tsv.empty()) {
                std::ostringstream body;
                tricl::write_replication_tsv(body, summary);
                tricl::write_text_file(rep_tsv, body.str());
            }
        } else if (report_cmd->parsed()) {
            std::vector<ReportRow> rows;
            bool any = false;
            auto add_replicate = [&](const std::string& file, const std::string& section,
                                     double ref_mean, double tol) {
                const auto j = read_json_file(fs::path(report_in) / file);
                rows.push_back({section, "closure coefficient mean", ref_mean,
                                j ? std::optional<double>((*j)["mean"].get<double>())
                                  : std::nullopt,
                                tol});
                any = any || j.has_value();
            };
            add_replicate("replicate_random.json", "synthetic random", -0.09, 0.15);
            add_replicate("replicate_triangles.json", "synthetic triangles", 1.16, 0.10);
            add_replicate("replicate_mixed.json", "synthetic mixed", 1.81, 0.15);
            add_replicate("replicate_mixed_unweighted.json", "synthetic mixed (unweighted)", 0.08,
                          0.30);
            auto add_fit = [&](const std::string& file, const std::string& section,
                               const std::string& coef, double ref, double tol) {
                const auto j = read_json_file(fs::path(report_in) / file);
                std::optional<double> value;
                if (j)
                    for (const auto& c : (*j)["coefficients"])
                        if (c["name"].get<std::string>() == coef)
                            value = c["estimate"].get<double>();
                rows.push_back({section, coef + " coefficient", ref, value, tol});
                any = any || j.has_value();
            };
            add_fit("fit_karate.json", "karate case study", "weighted_sp", -0.160, 0.15);
            add_fit("fit_karate.json", "karate case study", "match:faction", 1.090, 0.30);
            add_fit("fit_highschool.json", "high-school case study", "weighted_sp", 0.819, 0.05);
            add_fit("fit_highschool.json", "high-school case study", "match:class", 0.879, 0.05);
            if (!any) {
                std::cerr << "tricl: error: nothing to report: no recognized inputs in '"
                          << report_in
                          << "' (expected replicate_random.json, replicate_triangles.json, "
                             "replicate_mixed.json, replicate_mixed_unweighted.json, "
                             "fit_karate.json, fit_highschool.json)\n";
                return 1;
            }
            const std::string doc = markdown_report(rows);
            if (report_out.empty())
                std::cout << doc;
            else
                tricl::write_text_file(report_out, doc);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "tricl: usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tricl: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
