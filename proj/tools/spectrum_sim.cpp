// spectrum-sim: scenario runner, gas sweep, and built-in demo.
//
// Exit codes: 0 success, 1 expectation or engine failure, 2 usage/parse error.

#include "nfst/nfst.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& content)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + p.string());
    out << content;
}

void write_outputs(const nfst::RunResult& r, const fs::path& dir)
{
    fs::create_directories(dir);
    write_file(dir / "events.json", r.events_json().dump(2) + "\n");
    write_file(dir / "receipts.json", r.receipt_log.dump(2) + "\n");
    write_file(dir / "report.txt", r.report());
}

int cmd_run(const std::string& file, const std::string& out_dir)
{
    nfst::Scenario sc;
    try {
        sc = nfst::parse_scenario(read_file(file));
    } catch (const nfst::ScenarioError& e) {
        std::cerr << file << ":" << (e.line() > 0 ? std::to_string(e.line()) + ": " : " ")
                  << e.message() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return exit_usage;
    }
    nfst::RunResult r = nfst::run_scenario(sc);
    write_outputs(r, out_dir);
    std::cout << r.report();
    return r.exit_code == 0 ? exit_ok : exit_failed;
}

int cmd_demo(const std::string& out_dir)
{
    nfst::RunResult r = nfst::run_scenario(nfst::demo::paper_demo());
    if (!out_dir.empty())
        write_outputs(r, out_dir);
    std::cout << nfst::demo::summary(r);
    if (r.exit_code != 0)
        std::cout << r.report();
    return r.exit_code == 0 ? exit_ok : exit_failed;
}

int cmd_gas_sweep(std::int64_t slots, const std::string& schedule_file, const std::string& out,
                  bool calibrate, bool fresh)
{
    nfst::GasSchedule schedule;
    try {
        if (!schedule_file.empty())
            schedule = nfst::apply_schedule_overrides(
                schedule, nlohmann::json::parse(read_file(schedule_file)));
    } catch (const std::exception& e) {
        std::cerr << schedule_file << ": " << e.what() << "\n";
        return exit_usage;
    }
    const auto state = fresh ? nfst::StorageState::fresh : nfst::StorageState::populated;

    try {
        if (calibrate) {
            auto fit = nfst::calibrate(schedule, {}, state);
            schedule = fit.schedule;
            std::cout << "calibrated: tx_base " << (fit.delta_tx >= 0 ? "+" : "") << fit.delta_tx
                      << ", slot write " << (fit.delta_write >= 0 ? "+" : "")
                      << fit.delta_write << "\n";
        }
        auto result = nfst::gas_sweep(slots, schedule, state);
        std::ofstream csv(out, std::ios::binary);
        if (!csv) {
            std::cerr << "cannot write " << out << "\n";
            return exit_failed;
        }
        nfst::write_csv(csv, result);
        std::cout << nfst::sweep_summary(result);
    } catch (const nfst::GasLimitExceeded& e) {
        std::cerr << "batch authorization does not fit one block: " << e.what() << "\n";
        return exit_failed;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-slot spectrum leasing simulator"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string run_out = ".";
    auto* run = app.add_subcommand("run", "Execute a scenario file");
    run->add_option("file", scenario_file, "Scenario JSON")->required();
    run->add_option("--out", run_out, "Directory for events.json, receipts.json, report.txt");

    std::int64_t slots = 10;
    std::string schedule_file;
    std::string csv_out;
    bool calibrate = false;
    bool fresh = false;
    auto* sweep = app.add_subcommand("gas-sweep", "Compare sequential and batch authorization gas");
    sweep->add_option("--slots", slots, "Largest slot count")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--schedule", schedule_file, "JSON gas schedule overrides");
    sweep->add_option("--out", csv_out, "CSV output path")->required();
    sweep->add_flag("--calibrate", calibrate, "Fit tx and slot-write overheads to the published marginals");
    sweep->add_flag("--fresh-storage", fresh, "Price first-ever authorization (zero -> nonzero writes)");

    std::string demo_out;
    auto* demo = app.add_subcommand("demo", "Run the built-in three-slot auction");
    demo->add_option("--out", demo_out, "Also write events.json, receipts.json, report.txt here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*run)
            return cmd_run(scenario_file, run_out);
        if (*sweep)
            return cmd_gas_sweep(slots, schedule_file, csv_out, calibrate, fresh);
        return cmd_demo(demo_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failed;
    }
}
