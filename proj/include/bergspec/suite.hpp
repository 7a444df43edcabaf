#pragma once

#include <filesystem>
#include <string>

#include "bergspec/report.hpp"

namespace bergspec {

struct SuiteOptions {
    int jobs = 0;             // 0: hardware concurrency, capped at 8
    bool wall_time = false;   // adds timings, which makes the output non-reproducible
    Tolerances tolerances;
};

struct SuiteResult {
    Json report;
    bool verification_failed = false;
};

/// Runs every entry of a suite file (classify, verify, truncate, plots) on a bounded
/// worker pool and writes report.json plus one SVG per plotted region into `out_dir`.
/// Entry order in the output follows the suite file regardless of scheduling.
SuiteResult run_suite(std::filesystem::path const& suite_file, std::filesystem::path const& out_dir,
                      SuiteOptions const& options = {});

std::string read_text_file(std::filesystem::path const& path);
void write_text_file(std::filesystem::path const& path, std::string const& text);

}  // namespace bergspec
