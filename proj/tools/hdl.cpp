#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "cli/config.hpp"
#include "cli/run.hpp"
#include "hdl/error.hpp"

int main(int argc, char** argv) {
    using namespace hdl::cli;
    ExperimentConfig config;
    try {
        config = parse_config(argc, argv);
        prepare_output(config);
    } catch (const CLI::CallForHelp&) {
        std::cout << usage();
        return kExitPass;
    } catch (const UsageError& e) {
        std::cerr << "hdl: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        const int status = run(config);
        std::cout << config.out << "/report.json: " << (status == kExitPass ? "pass" : "fail") << "\n";
        return status;
    } catch (const UsageError& e) {
        std::cerr << "hdl: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "hdl: " << e.what() << "\n";
        return kExitRuntime;
    }
}
