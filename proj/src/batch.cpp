#include "jzsbf/batch.hpp"

#include <cmath>
#include <cstddef>
#include <exception>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace jzsbf::batch {

namespace {

FormComparison compare_one(const FormCase& c, double rel_tol) {
    FormComparison out;
    out.bf10_delta = jzs_bf_delta_form(c.t, c.summary, c.r, rel_tol).value;
    out.bf01_g = jzs_bf_g_form(c.t, c.summary, c.r, rel_tol).value;
    out.relative_gap = std::abs(out.bf10_delta * out.bf01_g - 1.0);
    return out;
}

}  // namespace

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body) {
    std::vector<std::exception_ptr> failures(count);
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<BayesFactorResult> analyze(std::span<const StudyRecord> records, const AnalysisConfig& config) {
    std::vector<BayesFactorResult> out(records.size());
    for_each_index(records.size(), [&](std::size_t i) { out[i] = analyze_study(records[i], config); });
    return out;
}

std::vector<BayesFactorResult> analyze_serial(std::span<const StudyRecord> records, const AnalysisConfig& config) {
    std::vector<BayesFactorResult> out;
    out.reserve(records.size());
    for (const StudyRecord& r : records) out.push_back(analyze_study(r, config));
    return out;
}

std::vector<FormComparison> compare_forms(std::span<const FormCase> cases, double rel_tol) {
    std::vector<FormComparison> out(cases.size());
    for_each_index(cases.size(), [&](std::size_t i) { out[i] = compare_one(cases[i], rel_tol); });
    return out;
}

std::vector<FormComparison> compare_forms_serial(std::span<const FormCase> cases, double rel_tol) {
    std::vector<FormComparison> out;
    out.reserve(cases.size());
    for (const FormCase& c : cases) out.push_back(compare_one(c, rel_tol));
    return out;
}

int max_threads() noexcept {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace jzsbf::batch
