#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace hdl::cli {

struct Assertion {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Everything an experiment produces; a pure function of the config.
struct Outcome {
    nlohmann::ordered_json report;
    std::map<std::string, std::string> csv;  ///< file name -> contents
    std::vector<Assertion> assertions;

    [[nodiscard]] bool pass() const;
};

/// Run the configured experiment without touching the filesystem.
[[nodiscard]] Outcome execute(const ExperimentConfig& config);

/// Create the output directory or throw UsageError naming `out`.
void prepare_output(const ExperimentConfig& config);

/// execute() and write report.json, metadata.json, config.resolved and the CSV files.
/// Returns kExitPass or kExitAssertion; lets exceptions through.
int run(const ExperimentConfig& config);

}  // namespace hdl::cli
