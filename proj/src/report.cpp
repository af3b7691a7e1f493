#include "jzsbf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

#include "jzsbf/batch.hpp"
#include "jzsbf/errors.hpp"
#include "text_util.hpp"

#ifndef JZSBF_VERSION
#define JZSBF_VERSION "0.0.0"
#endif

namespace jzsbf {

namespace {

using Json = nlohmann::ordered_json;

// Rethrows the in-flight exception with `context` prepended, keeping its type.
[[noreturn]] void rethrow_with_context(const std::string& context) {
    try {
        throw;
    } catch (const OverflowError& e) {
        throw OverflowError(context + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError(context + ": " + e.what());
    } catch (const NonConvergenceError& e) {
        throw NonConvergenceError(context + ": " + e.what());
    } catch (const ConsistencyError& e) {
        throw ConsistencyError(context + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(context + ": " + e.what());
    } catch (const IoError& e) {
        throw IoError(context + ": " + e.what());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw Error(context + ": " + e.what());
    }
}

std::string printf_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

Json label_fields(Json obj, const EvidenceLabel& label) {
    obj["strength"] = std::string(to_string(label.strength));
    obj["direction"] = std::string(to_string(label.direction));
    obj["label"] = describe(label);
    return obj;
}

Json study_json(const StudyResult& s) {
    const StudyRecord& rec = s.record;
    const BayesFactorResult& r = s.result;
    Json j;
    j["trial"] = rec.trial;
    j["arm"] = rec.arm;
    j["n"] = rec.n;
    if (rec.n2) j["n2"] = *rec.n2;
    j["p"] = rec.p_value ? Json(*rec.p_value) : Json(nullptr);
    j["t_input"] = rec.t_value ? Json(*rec.t_value) : Json(nullptr);
    j["design"] = std::string(to_string(rec.design));
    j["t"] = s.summary.t;
    j["nu_inversion"] = s.summary.nu_inversion;
    j["nu_bf"] = s.summary.nu_bf;
    j["n_eff"] = s.summary.n_eff;
    j["bf10"] = r.bf10;
    j["bf01"] = r.bf01;
    j["ln_bf10"] = r.ln_bf10;
    j["quadrature_error"] = r.quadrature_error;
    j["posterior_h1"] = r.posterior_h1;
    j["posterior_h0"] = 1.0 - r.posterior_h1;
    j = label_fields(std::move(j), r.label);
    j["display"] = Json{{"t", display_t(s.summary.t)},
                        {"bf10", display_bf(r.bf10)},
                        {"bf01", display_bf(r.bf01)},
                        {"posterior_h1", display_percent(r.posterior_h1)}};
    return j;
}

Json meta_json(const MetaGroupResult& m) {
    Json j;
    j["group"] = m.group.name;
    j["studies"] = m.group.members;
    j["bf10"] = m.result.bf10;
    j["bf01"] = m.result.bf01;
    j["ln_bf10"] = m.result.ln_bf10;
    j["quadrature_error"] = m.result.quadrature_error;
    j["posterior_h1"] = m.result.posterior_h1;
    j["posterior_h0"] = 1.0 - m.result.posterior_h1;
    j = label_fields(std::move(j), classify_evidence(m.result.bf10));
    j["display"] = Json{{"bf10", display_bf(m.result.bf10)},
                        {"bf01", display_bf(m.result.bf01)},
                        {"posterior_h1", display_percent(m.result.posterior_h1)}};
    return j;
}

Json config_json(const Report& report) {
    Json j;
    j["dataset"] = report.dataset_name;
    j["cauchy_scale_r"] = report.config.cauchy_scale_r;
    j["prior_h1"] = report.config.prior_h1;
    j["sidedness"] = std::string(to_string(report.config.sidedness));
    j["rel_tol"] = report.config.rel_tol;
    return j;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string meta_line(const MetaGroupResult& m, std::size_t name_width, std::size_t members_width) {
    std::string members;
    for (std::size_t i = 0; i < m.group.members.size(); ++i) {
        if (i) members += " + ";
        members += m.group.members[i];
    }
    return pad(m.group.name, name_width) + "  " + pad(members, members_width) +
           "  BF10 = " + pad(display_bf(m.result.bf10), 5) + "  BF01 = " + pad(display_bf(m.result.bf01), 5) +
           "  P(H1|D) = " + pad(display_percent(m.result.posterior_h1), 4) + "  " +
           describe(classify_evidence(m.result.bf10)) + "\n";
}

std::string meta_text(std::span<const MetaGroupResult> groups) {
    std::size_t name_width = 0;
    std::size_t members_width = 0;
    for (const MetaGroupResult& m : groups) {
        name_width = std::max(name_width, m.group.name.size());
        std::size_t w = 0;
        for (std::size_t i = 0; i < m.group.members.size(); ++i) w += m.group.members[i].size() + (i ? 3 : 0);
        members_width = std::max(members_width, w);
    }
    std::string out;
    for (const MetaGroupResult& m : groups) out += meta_line(m, name_width, members_width);
    return out;
}

}  // namespace

std::string_view version() noexcept { return JZSBF_VERSION; }

std::string display_bf(double bf) {
    std::string s = printf_double("%.2f", bf);
    if (s == "0.00") s = printf_double("%.2e", bf);
    return s;
}

std::string display_percent(double probability) {
    const double pct = std::clamp(std::floor(100.0 * probability + 1e-9), 0.0, 100.0);
    return std::to_string(static_cast<int>(pct)) + "%";
}

std::string display_t(double t) { return printf_double("%.2f", t); }

std::vector<MetaGroupResult> run_meta_groups(const Dataset& dataset, const AnalysisConfig& config,
                                             std::span<const MetaGroup> groups) {
    validate(config);
    std::map<std::string, const StudyRecord*> by_key;
    for (const StudyRecord& r : dataset.records) by_key.emplace(r.key(), &r);

    std::set<std::string> names;
    for (const MetaGroup& g : groups) {
        if (g.name.empty()) throw ValidationError("meta group with an empty name");
        if (!names.insert(g.name).second) throw ValidationError("duplicate meta group '" + g.name + "'");
        if (g.members.empty()) throw ValidationError("meta group '" + g.name + "' has no studies");
        std::set<std::string> seen;
        for (const std::string& key : g.members) {
            if (!by_key.count(key)) {
                throw ValidationError("meta group '" + g.name + "' references unknown study " + key);
            }
            if (!seen.insert(key).second) {
                throw ValidationError("meta group '" + g.name + "' lists " + key + " twice");
            }
        }
    }

    std::vector<MetaGroupResult> out;
    out.reserve(groups.size());
    for (const MetaGroup& g : groups) {
        try {
            MetaInput input;
            input.r = config.cauchy_scale_r;
            for (const std::string& key : g.members) {
                try {
                    input.studies.push_back(summarize(*by_key.at(key), config));
                } catch (const Error&) {
                    rethrow_with_context(key);
                }
            }
            out.push_back(MetaGroupResult{g, meta_bf(input, config.prior_h1, config.rel_tol)});
        } catch (const Error&) {
            rethrow_with_context("meta group " + g.name);
        }
    }
    return out;
}

Report run_reanalysis(const Dataset& dataset, const AnalysisConfig& config, std::span<const MetaGroup> groups) {
    validate(config);
    validate(dataset);

    Report report;
    report.dataset_name = dataset.name;
    report.config = config;
    report.version = std::string(version());
    report.studies.resize(dataset.records.size());

    batch::for_each_index(dataset.records.size(), [&](std::size_t i) {
        const StudyRecord& rec = dataset.records[i];
        try {
            StudyResult& out = report.studies[i];
            out.record = rec;
            out.summary = summarize(rec, config);
            out.result = analyze_summary(out.summary, config);
        } catch (const Error&) {
            rethrow_with_context(rec.key());
        }
    });

    report.meta = run_meta_groups(dataset, config, groups);
    return report;
}

std::string render_study(const StudyResult& study, ReportFormat format) {
    if (format == ReportFormat::json) return study_json(study).dump(2) + "\n";
    const TTestSummary& s = study.summary;
    const BayesFactorResult& r = study.result;
    std::string out;
    out += "t = " + display_t(s.t) + " (nu = " + detail::shortest(s.nu_bf) + ", N0 = " + detail::shortest(s.n_eff) +
           ")\n";
    out += "BF10 = " + display_bf(r.bf10) + "\n";
    out += "BF01 = " + display_bf(r.bf01) + "\n";
    out += "P(H1|D) = " + display_percent(r.posterior_h1) + "\n";
    out += describe(r.label) + "\n";
    return out;
}

std::string render_meta_groups(std::span<const MetaGroupResult> groups, ReportFormat format) {
    if (format == ReportFormat::json) {
        Json arr = Json::array();
        for (const MetaGroupResult& m : groups) arr.push_back(meta_json(m));
        return arr.dump(2) + "\n";
    }
    return meta_text(groups);
}

std::string render_report(const Report& report, ReportFormat format) {
    if (format == ReportFormat::json) {
        Json doc;
        doc["config"] = config_json(report);
        doc["studies"] = Json::array();
        for (const StudyResult& s : report.studies) doc["studies"].push_back(study_json(s));
        doc["meta"] = Json::array();
        for (const MetaGroupResult& m : report.meta) doc["meta"].push_back(meta_json(m));
        doc["version"] = report.version;
        return doc.dump(2) + "\n";
    }

    std::string out;
    out += "JZS Bayes factor reanalysis: " + report.dataset_name + "\n";
    out += "Cauchy prior scale r = " + printf_double("%.4f", report.config.cauchy_scale_r) +
           ", P(H1) = " + printf_double("%.2f", report.config.prior_h1) + ", " +
           (report.config.sidedness == Sidedness::two_sided ? "two-sided" : "one-sided") + " p-values\n\n";

    std::size_t trial_w = 0;
    std::size_t arm_w = 0;
    std::size_t n_w = 0;
    std::size_t p_w = 0;
    for (const StudyResult& s : report.studies) {
        trial_w = std::max(trial_w, s.record.trial.size());
        arm_w = std::max(arm_w, s.record.arm.size());
        n_w = std::max(n_w, std::to_string(s.record.n).size());
        p_w = std::max(p_w, s.record.p_value ? detail::shortest(*s.record.p_value).size() : std::size_t{1});
    }
    out += "Per-study Bayes factors\n";
    for (const StudyResult& s : report.studies) {
        const std::string p = s.record.p_value ? detail::shortest(*s.record.p_value) : "-";
        out += pad(s.record.trial, trial_w) + "  " + pad(s.record.arm, arm_w) +
               "  n = " + pad(std::to_string(s.record.n), n_w) + "  p = " + pad(p, p_w) +
               "  t = " + pad(display_t(s.summary.t), 5) + "  BF10 = " + pad(display_bf(s.result.bf10), 5) +
               "  BF01 = " + pad(display_bf(s.result.bf01), 5) +
               "  P(H1|D) = " + pad(display_percent(s.result.posterior_h1), 4) + "  " + describe(s.result.label) +
               "\n";
    }
    if (!report.meta.empty()) {
        out += "\nMeta-analytic Bayes factors\n";
        out += meta_text(report.meta);
    }
    return out;
}

}  // namespace jzsbf
