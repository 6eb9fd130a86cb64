#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "ranksiege/campaign.hpp"
#include "ranksiege/errors.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ranksiege: sequential manipulation of pairwise rank aggregation"};
    app.require_subcommand(1);

    std::string config_path;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    CLI::App* simulate = app.add_subcommand("simulate", "run a campaign from a JSON config");
    simulate->add_option("--config", config_path, "campaign config file")->required();
    simulate->add_option("--jobs", jobs, "parallel trial workers");

    std::string stream_path, victim;
    CLI::App* aggregate = app.add_subcommand("aggregate", "rank a comparison stream");
    aggregate->add_option("--stream", stream_path, "comparison stream CSV")->required();
    aggregate->add_option("--victim", victim, "hodgerank or rankcentrality")->required();

    std::string input_path, format, out_path;
    CLI::App* ingest = app.add_subcommand("ingest", "normalize a dataset to stream CSV");
    ingest->add_option("--input", input_path, "input file")->required();
    ingest->add_option("--format", format, "preflib or csv")->required();
    ingest->add_option("--out", out_path, "output stream CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (simulate->parsed()) ranksiege::cmd_simulate(config_path, jobs, std::cout);
        if (aggregate->parsed()) ranksiege::cmd_aggregate(stream_path, victim, std::cout);
        if (ingest->parsed()) ranksiege::cmd_ingest(input_path, format, out_path, std::cout);
        return 0;
    } catch (const ranksiege::InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ranksiege::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const ranksiege::AggregationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const ranksiege::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
