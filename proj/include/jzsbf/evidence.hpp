#pragma once
// Single-study JZS Bayes factors from published summary statistics.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace jzsbf {

enum class Design { two_sample, one_sample };
enum class Sidedness { two_sided, one_sided };

std::string_view to_string(Design d) noexcept;
std::string_view to_string(Sidedness s) noexcept;
// Throws ValidationError on an unknown name.
Design parse_design(std::string_view text);
Sidedness parse_sidedness(std::string_view text);

// One trial arm as published. For two_sample designs `n` is the size of each
// arm; `n2` overrides the second arm's size when the arms differ.
struct StudyRecord {
    std::string trial;
    std::string arm;
    std::int64_t n = 0;
    std::optional<std::int64_t> n2;
    std::optional<double> p_value;
    std::optional<double> t_value;
    Design design = Design::two_sample;

    // "trial.arm", the key used by meta-analysis groupings.
    std::string key() const { return trial + "." + arm; }
};

// Throws ValidationError naming the violated invariant.
void validate(const StudyRecord& record);

struct TTestSummary {
    double t = 0.0;
    double nu_inversion = 0.0;  // degrees of freedom for the p -> t inversion
    double nu_bf = 0.0;         // degrees of freedom inside the Bayes factor
    double n_eff = 0.0;         // effective sample size N0
};

inline constexpr double kDefaultCauchyScale = 0.70710678118654752440;  // sqrt(2) / 2

struct AnalysisConfig {
    double cauchy_scale_r = kDefaultCauchyScale;
    double prior_h1 = 0.5;
    Sidedness sidedness = Sidedness::two_sided;
    double rel_tol = 1e-8;
};

void validate(const AnalysisConfig& config);

enum class Strength { anecdotal, moderate, strong, very_strong, extreme };
enum class Direction { favors_h1, favors_h0, exactly_even };

struct EvidenceLabel {
    Strength strength = Strength::anecdotal;
    Direction direction = Direction::exactly_even;

    friend bool operator==(const EvidenceLabel&, const EvidenceLabel&) = default;
};

std::string_view to_string(Strength s) noexcept;
std::string_view to_string(Direction d) noexcept;
// "anecdotal evidence for H1", "strong evidence for H0", ...
std::string describe(const EvidenceLabel& label);

struct BayesFactorResult {
    double bf10 = 1.0;
    double bf01 = 1.0;
    double ln_bf10 = 0.0;
    double quadrature_error = 0.0;  // absolute error estimate on bf10
    double posterior_h1 = 0.5;
    EvidenceLabel label;
};

// A Bayes factor with the absolute error estimate of the quadrature behind it.
struct BayesFactorEstimate {
    double value = 0.0;
    double abs_error = 0.0;
};

// |t| recovered from a p-value by inverting the Student t CDF. p <= 1e-300
// raises OverflowError rather than returning an unusable t.
double t_from_p(double p, double nu, Sidedness sidedness);

TTestSummary summarize(const StudyRecord& record, const AnalysisConfig& config);

// BF01 from the integral over the mixing variance g of the JZS prior.
BayesFactorEstimate jzs_bf_g_form(double t, const TTestSummary& summary, double r, double rel_tol = 1e-8);

// BF10 as the noncentral-t likelihood averaged over a Cauchy(0, r) prior on
// the standardized effect, divided by the central-t likelihood.
BayesFactorEstimate jzs_bf_delta_form(double t, const TTestSummary& summary, double r, double rel_tol = 1e-8);

double posterior_prob(double bf10, double prior_h1);

EvidenceLabel classify_evidence(double bf10);

// summarize -> delta form, cross-checked against the g form -> posterior ->
// label. Throws ConsistencyError if the two forms disagree by more than 1e-4.
BayesFactorResult analyze_study(const StudyRecord& record, const AnalysisConfig& config);

// Same pipeline for an already-summarized study.
BayesFactorResult analyze_summary(const TTestSummary& summary, const AnalysisConfig& config);

}  // namespace jzsbf
