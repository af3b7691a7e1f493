#include "cauchy_mixture.hpp"

#include <cmath>
#include <string>

#include "jzsbf/errors.hpp"
#include "jzsbf/numerics.hpp"
#include "text_util.hpp"

namespace jzsbf::detail {

namespace {

double ln_likelihood_ratio(std::span<const TTestSummary> studies, double delta) {
    double total = 0.0;
    for (const TTestSummary& s : studies) {
        const double mu = delta * std::sqrt(s.n_eff);
        total += numerics::ln_noncentral_t_pdf(s.t, s.nu_bf, mu) - numerics::ln_central_t_pdf(s.t, s.nu_bf);
    }
    return total;
}

}  // namespace

LnBayesFactor cauchy_mixture_ln_bf10(std::span<const TTestSummary> studies, double r, EffectSupport support,
                                     double rel_tol) {
    if (studies.empty()) throw DomainError("Bayes factor needs at least one study");
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("Cauchy scale r must be positive");
    double weight = 0.0;
    double weighted_t = 0.0;
    for (const TTestSummary& s : studies) {
        if (!(s.nu_bf > 0.0) || !(s.n_eff > 0.0) || !std::isfinite(s.t)) {
            throw DomainError("study summary needs finite t, nu_bf > 0 and n_eff > 0");
        }
        weight += s.n_eff;
        weighted_t += s.t * std::sqrt(s.n_eff);
    }

    double centre = weighted_t / weight;
    if (support == EffectSupport::positive_half_line && centre <= 0.0) centre = 0.0;
    double offset = ln_likelihood_ratio(studies, centre);
    if (!std::isfinite(offset)) offset = 0.0;

    const double prior_mass = support == EffectSupport::real_line ? 1.0 : 2.0;
    auto integrand = [&](double delta) {
        const double log_ratio = ln_likelihood_ratio(studies, delta) - offset;
        if (log_ratio == -INFINITY) return 0.0;
        return std::exp(log_ratio) * prior_mass * numerics::cauchy_pdf(delta, r);
    };

    const numerics::Interval domain = support == EffectSupport::real_line
                                          ? numerics::Interval::real_line()
                                          : numerics::Interval::half_line_positive();
    const numerics::QuadratureResult q = numerics::integrate(integrand, domain, rel_tol);
    if (!(q.value > 0.0)) {
        throw NonConvergenceError("marginal likelihood under H1 evaluated to " + detail::shortest(q.value));
    }
    return LnBayesFactor{offset + std::log(q.value), q.abs_error_estimate / q.value};
}

}  // namespace jzsbf::detail
