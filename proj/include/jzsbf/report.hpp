#pragma once
// Full reanalysis of a dataset: per-study Bayes factors, meta-analyses over
// configured groups, and their text/JSON renderings.

#include <span>
#include <string>
#include <vector>

#include "jzsbf/dataset.hpp"
#include "jzsbf/evidence.hpp"
#include "jzsbf/meta.hpp"

namespace jzsbf {

std::string_view version() noexcept;

struct StudyResult {
    StudyRecord record;
    TTestSummary summary;
    BayesFactorResult result;
};

struct MetaGroupResult {
    MetaGroup group;
    MetaResult result;
};

struct Report {
    std::string dataset_name;
    AnalysisConfig config;
    std::vector<StudyResult> studies;  // dataset order
    std::vector<MetaGroupResult> meta;  // group order
    std::string version;
};

enum class ReportFormat { text_table, json };

// Studies are analyzed in parallel; errors are rethrown with the offending
// record's key (or group name) prepended, keeping their type.
Report run_reanalysis(const Dataset& dataset, const AnalysisConfig& config, std::span<const MetaGroup> groups);

// Only the meta-analyses; member studies are summarized on the way.
std::vector<MetaGroupResult> run_meta_groups(const Dataset& dataset, const AnalysisConfig& config,
                                             std::span<const MetaGroup> groups);

std::string render_report(const Report& report, ReportFormat format);
std::string render_study(const StudyResult& study, ReportFormat format);
std::string render_meta_groups(std::span<const MetaGroupResult> groups, ReportFormat format);

// Display rules shared by the text table, the JSON display strings and the
// charts: Bayes factors to two decimals (scientific when that would print
// 0.00), posteriors truncated to a whole percent, t to two decimals.
std::string display_bf(double bf);
std::string display_percent(double probability);
std::string display_t(double t);

}  // namespace jzsbf
