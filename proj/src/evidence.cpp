#include "jzsbf/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cauchy_mixture.hpp"
#include "jzsbf/errors.hpp"
#include "jzsbf/numerics.hpp"
#include "text_util.hpp"

namespace jzsbf {

namespace {

constexpr double kSmallestP = 1e-300;
constexpr double kCrossCheckTolerance = 1e-4;

void require_scale(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("Cauchy scale r must be positive and finite");
}

void require_summary(const TTestSummary& s) {
    if (!(s.nu_bf > 0.0) || !(s.n_eff > 0.0)) {
        throw DomainError("summary needs nu_bf > 0 and n_eff > 0");
    }
}

}  // namespace

std::string_view to_string(Design d) noexcept {
    return d == Design::two_sample ? "two_sample" : "one_sample";
}

std::string_view to_string(Sidedness s) noexcept {
    return s == Sidedness::two_sided ? "two_sided" : "one_sided";
}

Design parse_design(std::string_view text) {
    if (text == "two_sample" || text == "two_sample_equal_arms") return Design::two_sample;
    if (text == "one_sample") return Design::one_sample;
    throw ValidationError("unknown design '" + std::string(text) + "' (expected two_sample or one_sample)");
}

Sidedness parse_sidedness(std::string_view text) {
    if (text == "two_sided") return Sidedness::two_sided;
    if (text == "one_sided") return Sidedness::one_sided;
    throw ValidationError("unknown sidedness '" + std::string(text) + "' (expected two_sided or one_sided)");
}

std::string_view to_string(Strength s) noexcept {
    switch (s) {
        case Strength::anecdotal: return "anecdotal";
        case Strength::moderate: return "moderate";
        case Strength::strong: return "strong";
        case Strength::very_strong: return "very_strong";
        case Strength::extreme: return "extreme";
    }
    return "anecdotal";
}

std::string_view to_string(Direction d) noexcept {
    switch (d) {
        case Direction::favors_h1: return "favors_h1";
        case Direction::favors_h0: return "favors_h0";
        case Direction::exactly_even: return "exactly_even";
    }
    return "exactly_even";
}

std::string describe(const EvidenceLabel& label) {
    std::string strength(to_string(label.strength));
    if (label.strength == Strength::very_strong) strength = "very strong";
    switch (label.direction) {
        case Direction::favors_h1: return strength + " evidence for H1";
        case Direction::favors_h0: return strength + " evidence for H0";
        case Direction::exactly_even: break;
    }
    return strength + " evidence, favoring neither hypothesis";
}

void validate(const StudyRecord& record) {
    if (record.trial.empty()) throw ValidationError("trial label is empty");
    if (record.arm.empty()) throw ValidationError("arm label is empty");
    if (record.n < 2) throw ValidationError("n must be at least 2");
    if (record.n2) {
        if (record.design != Design::two_sample) throw ValidationError("n2 only applies to two_sample designs");
        if (*record.n2 < 1) throw ValidationError("n2 must be at least 1");
    }
    if (record.p_value.has_value() == record.t_value.has_value()) {
        throw ValidationError("exactly one of p and t must be given");
    }
    if (record.p_value) {
        const double p = *record.p_value;
        if (std::isnan(p) || !(p > 0.0) || !(p < 1.0)) throw ValidationError("p out of range (0, 1)");
    }
    if (record.t_value && !std::isfinite(*record.t_value)) throw ValidationError("t must be finite");
}

void validate(const AnalysisConfig& config) {
    if (!(config.cauchy_scale_r > 0.0) || !std::isfinite(config.cauchy_scale_r)) {
        throw ValidationError("Cauchy scale r must be positive and finite");
    }
    if (!(config.prior_h1 >= 0.0 && config.prior_h1 <= 1.0)) {
        throw ValidationError("prior P(H1) must lie in [0, 1]");
    }
    if (!(config.rel_tol > 0.0) || !(config.rel_tol < 1.0)) {
        throw ValidationError("rel_tol must lie in (0, 1)");
    }
}

double t_from_p(double p, double nu, Sidedness sidedness) {
    if (std::isnan(p) || !(p > 0.0) || !(p < 1.0)) throw DomainError("p must lie in (0, 1)");
    if (p <= kSmallestP) throw OverflowError("p <= 1e-300: t statistic is not representable");
    // Quantile of 1 - p/2 (or 1 - p), taken from the lower tail so that tiny
    // p does not round the level to 1.
    const double tail = sidedness == Sidedness::two_sided ? 0.5 * p : p;
    return -numerics::student_t_quantile(tail, nu);
}

TTestSummary summarize(const StudyRecord& record, const AnalysisConfig& config) {
    validate(record);
    TTestSummary s;
    const double n1 = static_cast<double>(record.n);
    if (record.design == Design::two_sample) {
        const double n2 = record.n2 ? static_cast<double>(*record.n2) : n1;
        s.nu_bf = n1 + n2 - 2.0;
        s.n_eff = n1 * n2 / (n1 + n2);
        // The single-n convention inverts with nu = n - 1; explicit unequal
        // arms use the pooled t-test degrees of freedom.
        s.nu_inversion = record.n2 ? s.nu_bf : n1 - 1.0;
    } else {
        s.nu_bf = n1 - 1.0;
        s.nu_inversion = n1 - 1.0;
        s.n_eff = n1;
    }
    if (!(s.nu_bf > 0.0)) throw ValidationError("degrees of freedom must be positive");
    s.t = record.t_value ? *record.t_value : t_from_p(*record.p_value, s.nu_inversion, config.sidedness);
    return s;
}

BayesFactorEstimate jzs_bf_g_form(double t, const TTestSummary& summary, double r, double rel_tol) {
    require_scale(r);
    require_summary(summary);
    if (!std::isfinite(t)) throw DomainError("t must be finite");

    const double nu = summary.nu_bf;
    const double n0 = summary.n_eff;
    const double t2 = t * t;
    const double ln_null = std::log1p(t2 / nu);
    const double ln_const = std::log(r) - 0.5 * std::log(2.0 * std::numbers::pi);
    const double half_r2 = 0.5 * r * r;

    // Integrand of BF10: the alternative's marginal over g divided by the
    // null likelihood, folded into one exponent.
    auto integrand = [&](double g) {
        if (g <= 0.0) return 0.0;
        const double spread = 1.0 + n0 * g;
        const double log_value = -0.5 * std::log1p(n0 * g) -
                                 0.5 * (nu + 1.0) * (std::log1p(t2 / (spread * nu)) - ln_null) + ln_const -
                                 1.5 * std::log(g) - half_r2 / g;
        return std::exp(log_value);
    };
    const numerics::QuadratureResult q =
        numerics::integrate(integrand, numerics::Interval::half_line_positive(), rel_tol);
    if (!(q.value > 0.0) || !std::isfinite(q.value)) {
        throw OverflowError("g-form Bayes factor is not representable");
    }
    const double bf01 = 1.0 / q.value;
    return BayesFactorEstimate{bf01, bf01 * q.abs_error_estimate / q.value};
}

BayesFactorEstimate jzs_bf_delta_form(double t, const TTestSummary& summary, double r, double rel_tol) {
    require_scale(r);
    require_summary(summary);
    if (!std::isfinite(t)) throw DomainError("t must be finite");
    TTestSummary study = summary;
    study.t = t;
    const detail::LnBayesFactor ln_bf = detail::cauchy_mixture_ln_bf10(
        std::span<const TTestSummary>(&study, 1), r, detail::EffectSupport::real_line, rel_tol);
    const double bf10 = std::exp(ln_bf.ln_bf10);
    if (!(bf10 > 0.0) || !std::isfinite(bf10)) throw OverflowError("delta-form Bayes factor is not representable");
    return BayesFactorEstimate{bf10, bf10 * ln_bf.rel_error};
}

double posterior_prob(double bf10, double prior_h1) {
    if (!(bf10 > 0.0) || !std::isfinite(bf10)) throw DomainError("BF10 must be positive and finite");
    if (!(prior_h1 >= 0.0 && prior_h1 <= 1.0)) throw DomainError("prior P(H1) must lie in [0, 1]");
    const double weighted = bf10 * prior_h1;
    return weighted / (weighted + (1.0 - prior_h1));
}

EvidenceLabel classify_evidence(double bf10) {
    if (!(bf10 > 0.0) || !std::isfinite(bf10)) throw DomainError("BF10 must be positive and finite");
    const double ln_bf = std::log(bf10);
    const double magnitude = std::max(bf10, 1.0 / bf10);

    EvidenceLabel label;
    if (magnitude < 3.0) {
        label.strength = Strength::anecdotal;
    } else if (magnitude < 10.0) {
        label.strength = Strength::moderate;
    } else if (magnitude < 30.0) {
        label.strength = Strength::strong;
    } else if (magnitude < 100.0) {
        label.strength = Strength::very_strong;
    } else {
        label.strength = Strength::extreme;
    }
    label.direction = ln_bf > 0.0   ? Direction::favors_h1
                      : ln_bf < 0.0 ? Direction::favors_h0
                                    : Direction::exactly_even;
    return label;
}

BayesFactorResult analyze_summary(const TTestSummary& summary, const AnalysisConfig& config) {
    validate(config);
    const BayesFactorEstimate delta = jzs_bf_delta_form(summary.t, summary, config.cauchy_scale_r, config.rel_tol);
    const BayesFactorEstimate g = jzs_bf_g_form(summary.t, summary, config.cauchy_scale_r, config.rel_tol);
    const double mismatch = std::abs(delta.value * g.value - 1.0);
    if (mismatch > kCrossCheckTolerance) {
        throw ConsistencyError("delta-form BF10 " + detail::shortest(delta.value) + " and g-form BF01 " +
                               detail::shortest(g.value) + " disagree (relative " + detail::shortest(mismatch) + ")");
    }

    BayesFactorResult result;
    result.bf10 = delta.value;
    result.bf01 = 1.0 / delta.value;
    result.ln_bf10 = std::log(delta.value);
    result.quadrature_error = delta.abs_error;
    result.posterior_h1 = posterior_prob(result.bf10, config.prior_h1);
    result.label = classify_evidence(result.bf10);
    return result;
}

BayesFactorResult analyze_study(const StudyRecord& record, const AnalysisConfig& config) {
    validate(config);
    return analyze_summary(summarize(record, config), config);
}

}  // namespace jzsbf
