#include "jzsbf/meta.hpp"

#include <cmath>
#include <string>

#include "cauchy_mixture.hpp"
#include "jzsbf/errors.hpp"
#include "text_util.hpp"

namespace jzsbf {

MetaResult meta_bf(const MetaInput& input, double prior_h1, double rel_tol) {
    if (input.studies.empty()) throw DomainError("meta-analysis needs at least one study");
    const detail::EffectSupport support = input.prior == EffectPrior::two_sided
                                              ? detail::EffectSupport::real_line
                                              : detail::EffectSupport::positive_half_line;
    const detail::LnBayesFactor ln_bf = detail::cauchy_mixture_ln_bf10(input.studies, input.r, support, rel_tol);

    MetaResult result;
    result.ln_bf10 = ln_bf.ln_bf10;
    result.bf10 = std::exp(ln_bf.ln_bf10);
    if (!(result.bf10 > 0.0) || !std::isfinite(result.bf10)) {
        throw OverflowError("meta-analytic Bayes factor is not representable (ln BF10 = " +
                            detail::shortest(ln_bf.ln_bf10) + ")");
    }
    result.bf01 = 1.0 / result.bf10;
    result.quadrature_error = result.bf10 * ln_bf.rel_error;
    result.posterior_h1 = posterior_prob(result.bf10, prior_h1);
    return result;
}

}  // namespace jzsbf
