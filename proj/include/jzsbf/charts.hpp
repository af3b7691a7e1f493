#pragma once
// Static SVG 1.1 charts of a reanalysis report. Output is a pure function of
// the report, so identical reports give byte-identical files.

#include <string>

#include "jzsbf/report.hpp"

namespace jzsbf {

inline constexpr int kChartWidth = 640;
inline constexpr int kChartHeight = 400;

struct Charts {
    // BF10 per (trial, arm), grouped by trial, on a log axis with a reference
    // line at BF10 = 1. Bars grow from that line.
    std::string bayes_factors;
    // P(H1|D) per study followed by one bar per meta-analysis group.
    std::string posteriors;
};

Charts emit_charts(const Report& report);

}  // namespace jzsbf
