#include "jzsbf/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace jzsbf {

namespace {

constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 80.0;
constexpr double kPlotWidth = kChartWidth - kLeft - kRight;
constexpr double kPlotHeight = kChartHeight - kTop - kBottom;
constexpr double kAxisY = kTop + kPlotHeight;

constexpr const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"};
constexpr const char* kMetaFill = "#c44e52";
constexpr const char* kStudyFill = "#4c72b0";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

void open_svg(std::ostringstream& os, const std::string& title) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kChartWidth << "\" height=\""
       << kChartHeight << "\" viewBox=\"0 0 " << kChartWidth << ' ' << kChartHeight << "\">\n"
       << "<title>" << escape(title) << "</title>\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << kChartWidth << "\" height=\"" << kChartHeight
       << "\" fill=\"#ffffff\"/>\n"
       << "<text x=\"" << num(kChartWidth / 2.0) << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << escape(title) << "</text>\n";
}

void text(std::ostringstream& os, double x, double y, const std::string& s, const char* anchor, int size = 11,
          const char* extra = "") {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
       << "\" font-family=\"sans-serif\" font-size=\"" << size << "\"" << extra << ">" << escape(s) << "</text>\n";
}

void hline(std::ostringstream& os, double y, const char* cls, const char* stroke, const char* dash) {
    os << "<line class=\"" << cls << "\" x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
       << num(kLeft + kPlotWidth) << "\" y2=\"" << num(y) << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"";
    if (*dash) os << " stroke-dasharray=\"" << dash << "\"";
    os << "/>\n";
}

std::string decade_label(int k) {
    if (k >= 0) {
        std::string s = "1";
        s.append(static_cast<std::size_t>(k), '0');
        return s;
    }
    return "0." + std::string(static_cast<std::size_t>(-k - 1), '0') + "1";
}

std::string bayes_factor_chart(const Report& report) {
    std::vector<std::string> trials;
    std::vector<std::string> arms;
    for (const StudyResult& s : report.studies) {
        if (std::find(trials.begin(), trials.end(), s.record.trial) == trials.end()) trials.push_back(s.record.trial);
        if (std::find(arms.begin(), arms.end(), s.record.arm) == arms.end()) arms.push_back(s.record.arm);
    }

    double lo = -1.0;
    double hi = 1.0;
    for (const StudyResult& s : report.studies) {
        const double l = std::log10(s.result.bf10);
        lo = std::min(lo, std::floor(l));
        hi = std::max(hi, std::ceil(l));
    }
    auto y_of = [&](double bf) { return kAxisY - (std::log10(bf) - lo) / (hi - lo) * kPlotHeight; };

    std::ostringstream os;
    open_svg(os, "Bayes factors BF10 by trial and arm");

    for (int k = static_cast<int>(lo); k <= static_cast<int>(hi); ++k) {
        const double y = y_of(std::pow(10.0, k));
        hline(os, y, "grid", "#dddddd", "");
        text(os, kLeft - 8.0, y + 4.0, decade_label(k), "end");
    }
    const double ref_y = y_of(1.0);
    hline(os, ref_y, "reference", "#333333", "6,4");
    text(os, kLeft + kPlotWidth - 4.0, ref_y - 6.0, "BF10 = 1", "end", 10);
    text(os, 20.0, kTop + kPlotHeight / 2.0, "BF10 (log scale)", "middle", 12,
         (" transform=\"rotate(-90 20.00 " + num(kTop + kPlotHeight / 2.0) + ")\"").c_str());

    const double group_width = kPlotWidth / static_cast<double>(std::max<std::size_t>(trials.size(), 1));
    for (std::size_t g = 0; g < trials.size(); ++g) {
        std::vector<const StudyResult*> members;
        for (const StudyResult& s : report.studies) {
            if (s.record.trial == trials[g]) members.push_back(&s);
        }
        const double inner = group_width * 0.7;
        const double bar_width = inner / static_cast<double>(members.size());
        const double x0 = kLeft + group_width * static_cast<double>(g) + (group_width - inner) / 2.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const StudyResult& s = *members[i];
            const double y = y_of(s.result.bf10);
            const double top = std::min(y, ref_y);
            const double height = std::max(std::abs(ref_y - y), 0.5);
            const double x = x0 + bar_width * static_cast<double>(i);
            const auto arm_index =
                static_cast<std::size_t>(std::find(arms.begin(), arms.end(), s.record.arm) - arms.begin());
            os << "<rect class=\"bar\" data-key=\"" << escape(s.record.key()) << "\" x=\"" << num(x + 2.0)
               << "\" y=\"" << num(top) << "\" width=\"" << num(bar_width - 4.0) << "\" height=\"" << num(height)
               << "\" fill=\"" << kPalette[arm_index % std::size(kPalette)] << "\"/>\n";
            const double label_y = y < ref_y ? y - 5.0 : y + 14.0;
            text(os, x + bar_width / 2.0, label_y, display_bf(s.result.bf10), "middle", 11);
            text(os, x + bar_width / 2.0, kAxisY + 16.0, s.record.arm, "middle", 11);
        }
        text(os, x0 + inner / 2.0, kAxisY + 36.0, trials[g], "middle", 13);
    }

    for (std::size_t a = 0; a < arms.size(); ++a) {
        const double x = kLeft + 10.0 + 90.0 * static_cast<double>(a);
        const double y = kChartHeight - 18.0;
        os << "<rect class=\"legend\" x=\"" << num(x) << "\" y=\"" << num(y - 10.0)
           << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[a % std::size(kPalette)] << "\"/>\n";
        text(os, x + 18.0, y, arms[a], "start", 11);
    }
    os << "</svg>\n";
    return os.str();
}

std::string posterior_chart(const Report& report) {
    struct Bar {
        std::string label;
        std::string key;
        double probability;
        bool meta;
    };
    std::vector<Bar> bars;
    for (const StudyResult& s : report.studies) {
        bars.push_back({s.record.trial + " " + s.record.arm, s.record.key(), s.result.posterior_h1, false});
    }
    for (const MetaGroupResult& m : report.meta) {
        bars.push_back({"meta " + m.group.name, "meta:" + m.group.name, m.result.posterior_h1, true});
    }

    auto y_of = [](double p) { return kAxisY - p * kPlotHeight; };

    std::ostringstream os;
    open_svg(os, "Posterior probability of H1 per condition");
    for (int pct = 0; pct <= 100; pct += 20) {
        const double y = y_of(pct / 100.0);
        hline(os, y, "grid", "#dddddd", "");
        text(os, kLeft - 8.0, y + 4.0, std::to_string(pct) + "%", "end");
    }
    hline(os, y_of(report.config.prior_h1), "reference", "#333333", "6,4");
    text(os, 20.0, kTop + kPlotHeight / 2.0, "P(H1 | data)", "middle", 12,
         (" transform=\"rotate(-90 20.00 " + num(kTop + kPlotHeight / 2.0) + ")\"").c_str());

    const double slot = kPlotWidth / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const Bar& b = bars[i];
        const double x = kLeft + slot * static_cast<double>(i);
        const double y = y_of(b.probability);
        os << "<rect class=\"" << (b.meta ? "bar meta" : "bar") << "\" data-key=\"" << escape(b.key) << "\" x=\""
           << num(x + slot * 0.15) << "\" y=\"" << num(y) << "\" width=\"" << num(slot * 0.7) << "\" height=\""
           << num(kAxisY - y) << "\" fill=\"" << (b.meta ? kMetaFill : kStudyFill) << "\"/>\n";
        text(os, x + slot / 2.0, y - 5.0, display_percent(b.probability), "middle", 11);
        text(os, x + slot / 2.0, kAxisY + 16.0, b.label, "middle", 10);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

Charts emit_charts(const Report& report) { return Charts{bayes_factor_chart(report), posterior_chart(report)}; }

}  // namespace jzsbf
