#include "jzsbf/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "jzsbf/charts.hpp"
#include "jzsbf/dataset.hpp"
#include "jzsbf/errors.hpp"
#include "jzsbf/evidence.hpp"
#include "jzsbf/report.hpp"

namespace jzsbf::cli {

namespace {

// Flag combinations CLI11 cannot express declaratively.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SharedOptions {
    double scale = kDefaultCauchyScale;
    double prior = 0.5;
    std::string sidedness = "two_sided";
    std::string format = "text";

    AnalysisConfig config() const {
        AnalysisConfig c;
        c.cauchy_scale_r = scale;
        c.prior_h1 = prior;
        c.sidedness = parse_sidedness(sidedness);
        validate(c);
        return c;
    }

    ReportFormat report_format() const { return format == "json" ? ReportFormat::json : ReportFormat::text_table; }
};

void add_analysis_flags(CLI::App* cmd, SharedOptions& o, bool with_format) {
    cmd->add_option("--scale", o.scale, "Cauchy prior scale r on the standardized effect")->capture_default_str();
    cmd->add_option("--prior", o.prior, "Prior probability of H1")->capture_default_str();
    cmd->add_option("--sidedness", o.sidedness, "How p-values were computed")
        ->check(CLI::IsMember({"two_sided", "one_sided"}))
        ->capture_default_str();
    if (with_format) {
        cmd->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    }
}

std::vector<MetaGroup> parse_groups(const std::vector<std::string>& specs) {
    std::vector<MetaGroup> groups;
    for (const std::string& spec : specs) {
        try {
            groups.push_back(parse_group_spec(spec));
        } catch (const ParseError& e) {
            throw UsageError(std::string("--group: ") + e.what());
        }
    }
    return groups;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path.string() + "'");
    f << content;
    f.flush();
    if (!f) throw IoError("failed while writing '" + path.string() + "'");
}

struct BfOptions {
    SharedOptions shared;
    std::optional<std::int64_t> n;
    std::optional<std::int64_t> n1;
    std::optional<std::int64_t> n2;
    std::optional<double> p;
    std::optional<double> t;
    std::string design = "two_sample";
};

int cmd_bf(const BfOptions& o, std::ostream& out) {
    if (!o.p && !o.t) throw UsageError("bf: one of --p or --t is required");
    if (!o.n && !o.n1) throw UsageError("bf: --n or --n1/--n2 is required");
    if (o.n1 && o.design != "two_sample") throw UsageError("bf: --n1/--n2 need --design two_sample");

    const AnalysisConfig config = o.shared.config();
    StudyRecord rec;
    rec.trial = "input";
    rec.arm = "study";
    rec.design = parse_design(o.design);
    if (o.n) {
        rec.n = *o.n;
    } else {
        rec.n = *o.n1;
        rec.n2 = *o.n2;
    }
    rec.p_value = o.p;
    rec.t_value = o.t;

    StudyResult result;
    result.record = rec;
    result.summary = summarize(rec, config);
    result.result = analyze_summary(result.summary, config);
    out << render_study(result, o.shared.report_format());
    return kSuccess;
}

struct MetaOptions {
    SharedOptions shared;
    std::string input;
    std::vector<std::string> groups;
};

int cmd_meta(const MetaOptions& o, std::ostream& out) {
    const AnalysisConfig config = o.shared.config();
    const std::vector<MetaGroup> groups = parse_groups(o.groups);
    const Dataset dataset = load_dataset(o.input);
    if (groups.empty()) throw UsageError("meta: at least one --group is required");
    const std::vector<MetaGroupResult> results = run_meta_groups(dataset, config, groups);
    out << render_meta_groups(results, o.shared.report_format());
    return kSuccess;
}

struct ReportOptions {
    SharedOptions shared;
    std::string input;
    std::string out;
    std::string plots;
    std::vector<std::string> groups;
};

int cmd_report(const ReportOptions& o, std::ostream& out) {
    const AnalysisConfig config = o.shared.config();
    std::vector<MetaGroup> groups = parse_groups(o.groups);
    Dataset dataset;
    if (o.input.empty()) {
        dataset = aducanumab_dataset();
        if (groups.empty()) groups = aducanumab_groups();
    } else {
        dataset = load_dataset(o.input);
    }

    const Report report = run_reanalysis(dataset, config, groups);
    if (!o.out.empty()) write_file(o.out, render_report(report, ReportFormat::json));
    if (!o.plots.empty()) {
        const std::filesystem::path dir(o.plots);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create plot directory '" + dir.string() + "': " + ec.message());
        const Charts charts = emit_charts(report);
        write_file(dir / "bayes_factors.svg", charts.bayes_factors);
        write_file(dir / "posterior_probabilities.svg", charts.posteriors);
    }
    out << render_report(report, ReportFormat::text_table);
    return kSuccess;
}

int cmd_classify(double bf, std::ostream& out) {
    out << describe(classify_evidence(bf)) << "\n";
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"JZS Bayes factors, meta-analytic Bayes factors and posterior probabilities from published t-test "
                 "summary statistics",
                 "jzsbf"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    BfOptions bf;
    CLI::App* bf_cmd = app.add_subcommand("bf", "Bayes factor for one study from n and p (or t)");
    CLI::Option* n_opt = bf_cmd->add_option("--n", bf.n, "Per-arm sample size (both arms equal), or N for one_sample");
    CLI::Option* n1_opt = bf_cmd->add_option("--n1", bf.n1, "First arm size (unequal arms)");
    CLI::Option* n2_opt = bf_cmd->add_option("--n2", bf.n2, "Second arm size (unequal arms)");
    n_opt->excludes(n1_opt)->excludes(n2_opt);
    n1_opt->needs(n2_opt);
    n2_opt->needs(n1_opt);
    CLI::Option* p_opt = bf_cmd->add_option("--p", bf.p, "Published p-value");
    CLI::Option* t_opt = bf_cmd->add_option("--t", bf.t, "t statistic");
    p_opt->excludes(t_opt);
    bf_cmd->add_option("--design", bf.design, "Study design")
        ->check(CLI::IsMember({"two_sample", "one_sample"}))
        ->capture_default_str();
    add_analysis_flags(bf_cmd, bf.shared, true);

    MetaOptions meta;
    CLI::App* meta_cmd = app.add_subcommand("meta", "Meta-analytic Bayes factor for groups of studies in a dataset");
    meta_cmd->add_option("--input", meta.input, "Dataset file (.csv or .json)")->required();
    meta_cmd->add_option("--group", meta.groups, "Group spec name=TRIAL.ARM,TRIAL.ARM (repeatable)");
    add_analysis_flags(meta_cmd, meta.shared, true);

    ReportOptions rep;
    CLI::App* report_cmd = app.add_subcommand("report", "Full reanalysis: per-study and meta-analytic results");
    report_cmd->add_option("--input", rep.input, "Dataset file; the bundled aducanumab data when omitted");
    report_cmd->add_option("--out", rep.out, "Write the JSON report here");
    report_cmd->add_option("--plots", rep.plots, "Write bayes_factors.svg and posterior_probabilities.svg here");
    report_cmd->add_option("--group", rep.groups, "Group spec name=TRIAL.ARM,TRIAL.ARM (repeatable)");
    add_analysis_flags(report_cmd, rep.shared, false);

    double classify_bf = 0.0;
    CLI::App* classify_cmd = app.add_subcommand("classify", "Evidence category of a Bayes factor BF10");
    classify_cmd->add_option("--bf", classify_bf, "BF10")->required();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("jzsbf");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*bf_cmd) return cmd_bf(bf, out);
        if (*meta_cmd) return cmd_meta(meta, out);
        if (*report_cmd) return cmd_report(rep, out);
        if (*classify_cmd) return cmd_classify(classify_bf, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const NonConvergenceError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const ConsistencyError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    err << "error: no subcommand\n";
    return kUsageError;
}

}  // namespace jzsbf::cli
