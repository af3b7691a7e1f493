#pragma once
// Meta-analytic Bayes factor: M studies sharing one standardized effect with a
// Cauchy prior, tested against the point null.

#include <vector>

#include "jzsbf/evidence.hpp"

namespace jzsbf {

enum class EffectPrior {
    two_sided,           // delta over the whole real line (default)
    one_sided_positive,  // half-Cauchy on delta > 0
};

struct MetaInput {
    std::vector<TTestSummary> studies;
    double r = kDefaultCauchyScale;
    EffectPrior prior = EffectPrior::two_sided;
};

struct MetaResult {
    double bf10 = 1.0;
    double bf01 = 1.0;
    double ln_bf10 = 0.0;
    double posterior_h1 = 0.5;
    double quadrature_error = 0.0;  // absolute error estimate on bf10
};

// Each study contributes its own nu_bf and n_eff; the effect enters study j
// as noncentrality delta * sqrt(n_eff_j).
MetaResult meta_bf(const MetaInput& input, double prior_h1 = 0.5, double rel_tol = 1e-8);

}  // namespace jzsbf
