#pragma once
// Shared kernel: t likelihoods averaged over a Cauchy prior on a common
// standardized effect. Used by the single-study delta form and by the
// meta-analytic Bayes factor.

#include <span>

#include "jzsbf/evidence.hpp"

namespace jzsbf::detail {

enum class EffectSupport { real_line, positive_half_line };

struct LnBayesFactor {
    double ln_bf10 = 0.0;
    double rel_error = 0.0;
};

// ln BF10 = ln int prod_j [nct(t_j; nu_j, delta sqrt(N0_j)) / t(t_j; nu_j)] prior(delta) d delta.
// The product is accumulated in log space and shifted by its value at the
// precision-weighted effect estimate before exponentiation.
LnBayesFactor cauchy_mixture_ln_bf10(std::span<const TTestSummary> studies, double r, EffectSupport support,
                                     double rel_tol);

}  // namespace jzsbf::detail
