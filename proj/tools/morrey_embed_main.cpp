// Command-line front end: classification, gamma lookup, norm evaluation,
// ratio experiments, grid sweeps with the consistency battery, and the
// built-in self checks.

#include "morrey/classify.hpp"
#include "morrey/experiment.hpp"
#include "morrey/format.hpp"
#include "morrey/grid.hpp"
#include "morrey/jsonio.hpp"
#include "morrey/parallel.hpp"
#include "morrey/selftest.hpp"
#include "morrey/seqnorm.hpp"
#include "morrey/stepfn.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

morrey::Json parse_json_text(const std::string& text, const std::string& what) {
    morrey::Json obj = morrey::Json::parse(text, nullptr, false);
    if (obj.is_discarded()) throw std::invalid_argument("malformed JSON in " + what);
    return obj;
}

morrey::Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

std::vector<int> parse_depth_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        int v = std::stoi(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad depth list entry: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("depth list is empty");
    return out;
}

int run_classify(const std::string& src_text, const std::string& tgt_text, bool with_trace) {
    morrey::SpaceParams src = morrey::space_from_json(parse_json_text(src_text, "--src"));
    morrey::SpaceParams tgt = morrey::space_from_json(parse_json_text(tgt_text, "--tgt"));
    morrey::Verdict v = morrey::classify({src, tgt});
    std::cout << morrey::verdict_to_json(v, with_trace).dump(2) << "\n";
    return kExitOk;
}

int run_gamma(const std::string& src_text, const std::string& tgt_text) {
    morrey::SpaceParams src = morrey::space_from_json(parse_json_text(src_text, "--src"));
    morrey::SpaceParams tgt = morrey::space_from_json(parse_json_text(tgt_text, "--tgt"));
    morrey::GammaValue g = morrey::gamma(src, tgt);
    std::cout << g.gamma.str() << " " << morrey::to_string(g.branch) << "\n";
    return kExitOk;
}

int run_norm(const std::string& seq_path, const std::string& scale_text, const std::string& s_text,
             const std::string& p_text, const std::string& q_text, const std::string& tau_text,
             const std::string& restrict_text, bool brute, int floor_level) {
    morrey::CoeffSeq t = morrey::coeffs_from_json(load_json_file(seq_path));
    morrey::Scale scale = morrey::scale_from_string(scale_text);

    morrey::NormParams np;
    np.s = morrey::ExtRational::parse(s_text);
    np.p = morrey::ExtRational::parse(p_text);
    np.q = morrey::ExtRational::parse(q_text);
    np.tau = morrey::ExtRational::parse(tau_text);
    np.d = t.dim();
    if (!restrict_text.empty()) {
        morrey::Json obj = parse_json_text(restrict_text, "--restrict");
        morrey::DyadicCube P;
        P.j = obj.at("j").get<int>();
        P.m = obj.at("m").get<std::vector<std::int64_t>>();
        np.restriction = P;
    }
    np.validate();

    double value;
    if (brute)
        value = morrey::brute_force_norm(t, np, scale, floor_level).value;
    else if (scale == morrey::Scale::F)
        value = morrey::tl_seq_norm(t, np).value;
    else
        value = morrey::besov_seq_norm(t, np).value;
    std::cout << morrey::fmt_double(value) << "\n";
    return kExitOk;
}

std::string ratio_csv(const std::vector<morrey::RatioReport>& reports) {
    std::ostringstream os;
    morrey::csv_row(os, {"J", "src_norm", "tgt_norm", "ratio"});
    for (const auto& rep : reports)
        for (const auto& row : rep.rows)
            morrey::csv_row(os, {std::to_string(row.J), morrey::fmt_double(row.src_norm),
                                 morrey::fmt_double(row.tgt_norm), morrey::fmt_double(row.ratio)});
    return os.str();
}

int run_experiment(const std::string& scenario_arg, const std::string& depth_text,
                   const std::string& out_path, const std::string& csv_path) {
    std::vector<int> depths = parse_depth_list(depth_text);

    std::vector<morrey::Scenario> selected;
    std::ifstream probe(scenario_arg);
    if (probe.good()) {
        selected = morrey::scenarios_from_json(load_json_file(scenario_arg));
        if (selected.empty()) throw std::invalid_argument("scenario file has no scenarios");
    } else {
        selected.push_back(morrey::find_scenario(morrey::builtin_scenarios(), scenario_arg));
    }

    std::vector<morrey::RatioReport> reports;
    for (const auto& sc : selected) reports.push_back(morrey::ratio_experiment(sc, depths));

    morrey::Json out;
    if (reports.size() == 1) {
        out = morrey::ratio_report_to_json(reports.front());
    } else {
        out["version"] = 1;
        morrey::Json arr = morrey::Json::array();
        for (const auto& rep : reports) arr.push_back(morrey::ratio_report_to_json(rep));
        out["reports"] = arr;
    }
    std::string text = out.dump(2) + "\n";
    if (!out_path.empty())
        write_text_file(out_path, text);
    else
        std::cout << text;
    if (!csv_path.empty()) write_text_file(csv_path, ratio_csv(reports));

    bool all_consistent = true;
    for (const auto& rep : reports) {
        std::cerr << rep.scenario.name << ": verdict " << morrey::to_string(rep.verdict)
                  << ", alpha " << morrey::fmt_double(rep.fit.alpha)
                  << (rep.fit.consistent ? " (consistent)" : " (INCONSISTENT)") << "\n";
        all_consistent = all_consistent && rep.fit.consistent;
    }
    return all_consistent ? kExitOk : kExitCheckFailed;
}

int run_table(const std::string& grid_text, const std::string& out_path, std::size_t stride,
              unsigned jobs) {
    morrey::GridSpec grid = grid_text.empty()
                                ? morrey::GridSpec::default_grid()
                                : morrey::grid_from_json(parse_json_text(grid_text, "--grid"));
    morrey::AtlasReport report = morrey::run_atlas(grid, stride, 20260822, 1000, jobs);

    std::ostringstream csv;
    morrey::atlas_csv(csv, report);
    std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(out_path, csv.str());

    summary << "pairs: " << report.pairs_evaluated << " evaluated of " << report.pairs_total
            << " (stride " << stride << ")\n";
    for (const auto& [relation, count] : report.relation_counts)
        summary << "  " << relation << ": " << count << "\n";
    for (const auto& check : report.battery) {
        summary << (check.pass() ? "PASS" : "FAIL") << " " << check.name << " (" << check.cases
                << " cases, " << check.violations << " violations";
        if (check.unresolved) summary << ", " << check.unresolved << " unresolved";
        summary << ")\n";
        for (const auto& ex : check.examples) summary << "       " << ex << "\n";
    }
    summary << (report.battery_pass() ? "PASS" : "FAIL") << " consistency battery\n";
    return report.battery_pass() ? kExitOk : kExitCheckFailed;
}

int run_selftest(const std::string& filter, const std::string& corrupt_rule) {
    std::map<std::string, std::string> catalog = morrey::rule_catalog();
    if (!corrupt_rule.empty()) {
        if (!catalog.erase(corrupt_rule))
            throw std::invalid_argument("--corrupt-rule: unknown rule id " + corrupt_rule);
    }
    morrey::SelftestReport report = morrey::run_selftests(filter, catalog);
    for (const auto& c : report.cases) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " [" << c.suite << "] " << c.name;
        if (!c.pass && !c.detail.empty()) std::cout << " :: " << c.detail;
        std::cout << "\n";
    }
    std::cout << report.cases.size() - report.failures() << "/" << report.cases.size()
              << " checks passed\n";
    return report.pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"embedding classifier and quasi-norm toolkit for Besov-type scales"};
    app.require_subcommand(1);

    int jobs_flag = 0;
    app.add_option("--jobs", jobs_flag, "worker threads (default: MORREY_EMBED_JOBS or hardware)");

    std::string src_text, tgt_text;
    bool with_trace = true;
    auto* cmd_classify = app.add_subcommand("classify", "decide continuity/compactness of an embedding");
    cmd_classify->add_option("--src", src_text, "source space JSON descriptor")->required();
    cmd_classify->add_option("--tgt", tgt_text, "target space JSON descriptor")->required();
    cmd_classify->add_flag("--trace,!--no-trace", with_trace, "include the rule trace (default on)");

    auto* cmd_gamma = app.add_subcommand("gamma", "critical exponent and its branch");
    cmd_gamma->add_option("--src", src_text, "source space JSON descriptor")->required();
    cmd_gamma->add_option("--tgt", tgt_text, "target space JSON descriptor")->required();

    std::string seq_path, scale_text = "B", s_text = "0", p_text = "2", q_text = "2", tau_text = "0";
    std::string restrict_text;
    bool brute = false;
    int floor_level = -8;
    auto* cmd_norm = app.add_subcommand("norm", "evaluate a sequence quasi-norm");
    cmd_norm->add_option("--seq", seq_path, "sequence JSON file")->required();
    cmd_norm->add_option("--scale", scale_text, "B or F");
    cmd_norm->add_option("--s", s_text, "smoothness (rational)");
    cmd_norm->add_option("--p", p_text, "integrability (rational or inf)");
    cmd_norm->add_option("--q", q_text, "fine index (rational or inf)");
    cmd_norm->add_option("--tau", tau_text, "Morrey exponent (rational >= 0)");
    cmd_norm->add_option("--restrict", restrict_text, "restrict the sup to a cube, e.g. {\"j\":0,\"m\":[0]}");
    cmd_norm->add_flag("--brute-force", brute, "use the exhaustive reference evaluator");
    cmd_norm->add_option("--floor", floor_level, "coarsest candidate level for --brute-force");

    std::string scenario_arg, depth_text = "8,16,32,64", out_path, csv_path;
    auto* cmd_exp = app.add_subcommand("experiment", "ratio experiment for a counterexample scenario");
    cmd_exp->add_option("--scenario", scenario_arg, "built-in scenario name or scenario JSON file")
        ->required();
    cmd_exp->add_option("--J", depth_text, "comma-separated depth list");
    cmd_exp->add_option("--out", out_path, "write the JSON report here (default stdout)");
    cmd_exp->add_option("--csv", csv_path, "also write rows as CSV");

    std::string grid_text, table_out;
    std::size_t stride = 83;
    auto* cmd_table = app.add_subcommand("table", "sweep a parameter grid and run the consistency battery");
    cmd_table->add_option("--grid", grid_text, "grid JSON (default: built-in grid)");
    cmd_table->add_option("--out", table_out, "write the CSV atlas here (default stdout)");
    cmd_table->add_option("--stride", stride, "evaluate every k-th pair");

    std::string filter, corrupt_rule;
    auto* cmd_self = app.add_subcommand("selftest", "run the built-in oracle checks");
    cmd_self->add_option("--filter", filter, "run only suites whose name contains this text");
    cmd_self->add_option("--corrupt-rule", corrupt_rule, "drop a rule from the table copy (negative test)")
        ->group("");

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
        unsigned jobs = morrey::resolve_jobs(jobs_flag);
        if (cmd_classify->parsed()) return run_classify(src_text, tgt_text, with_trace);
        if (cmd_gamma->parsed()) return run_gamma(src_text, tgt_text);
        if (cmd_norm->parsed())
            return run_norm(seq_path, scale_text, s_text, p_text, q_text, tau_text, restrict_text,
                            brute, floor_level);
        if (cmd_exp->parsed()) return run_experiment(scenario_arg, depth_text, out_path, csv_path);
        if (cmd_table->parsed()) return run_table(grid_text, table_out, stride, jobs);
        if (cmd_self->parsed()) return run_selftest(filter, corrupt_rule);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
