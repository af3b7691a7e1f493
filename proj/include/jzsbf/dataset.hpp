#pragma once
// Study datasets: CSV/JSON interchange and the bundled aducanumab data.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jzsbf/evidence.hpp"

namespace jzsbf {

enum class DataFormat { csv, json };

struct Dataset {
    std::string name;
    std::vector<StudyRecord> records;
};

// Records non-empty, each record valid, (trial, arm) pairs unique.
void validate(const Dataset& dataset);

// CSV needs the header `trial,arm,n,p,t,design` (any column order); an empty
// cell means the value is absent and an empty design means two_sample.
// Throws ParseError (with row/column) for malformed text and ValidationError
// for well-formed rows that break a dataset invariant.
Dataset parse_dataset(std::string_view bytes, DataFormat format, std::string_view name = "dataset");

std::string render_dataset(const Dataset& dataset, DataFormat format);

// Format chosen from the extension (.json, anything else is CSV); the dataset
// is named after the file stem. Throws IoError if the file cannot be read.
Dataset load_dataset(const std::filesystem::path& path);

// Named set of "trial.arm" keys pooled into one meta-analysis.
struct MetaGroup {
    std::string name;
    std::vector<std::string> members;
};

// "name=TRIAL.ARM,TRIAL.ARM". Throws ParseError on malformed text.
MetaGroup parse_group_spec(std::string_view spec);

// The published EMERGE/ENGAGE CDR-SB summary statistics (per-arm n, p).
std::string_view aducanumab_csv() noexcept;
Dataset aducanumab_dataset();
// Pools each dose across the two trials: low and high.
std::vector<MetaGroup> aducanumab_groups();

}  // namespace jzsbf
