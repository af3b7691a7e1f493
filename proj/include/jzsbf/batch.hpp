#pragma once
// Batch kernels over independent studies. Each entry point comes in an
// OpenMP-parallel form and a plain serial reference; both produce bitwise
// identical output because every element is computed independently by the
// same single-threaded code.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "jzsbf/evidence.hpp"

namespace jzsbf::batch {

// On failure the exception of the lowest-indexed failing record is rethrown.
std::vector<BayesFactorResult> analyze(std::span<const StudyRecord> records, const AnalysisConfig& config);
std::vector<BayesFactorResult> analyze_serial(std::span<const StudyRecord> records, const AnalysisConfig& config);

struct FormCase {
    double t = 0.0;
    TTestSummary summary;
    double r = kDefaultCauchyScale;
};

struct FormComparison {
    double bf10_delta = 0.0;
    double bf01_g = 0.0;
    // |bf10_delta * bf01_g - 1|
    double relative_gap = 0.0;
};

// Both Bayes factor routes for every case.
std::vector<FormComparison> compare_forms(std::span<const FormCase> cases, double rel_tol = 1e-8);
std::vector<FormComparison> compare_forms_serial(std::span<const FormCase> cases, double rel_tol = 1e-8);

// Runs body(i) for i in [0, count) across OpenMP threads. Exceptions are
// collected per index and the lowest-indexed one is rethrown after the loop.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body);

// Threads the parallel kernels will use (1 when built without OpenMP).
int max_threads() noexcept;

}  // namespace jzsbf::batch
