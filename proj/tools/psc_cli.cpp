// Command-line front end. Everything goes through the shared library's C API
// in psc.h; this file only handles files, flags and printing.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "psc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitIo = 2;

struct StringDeleter {
    void operator()(char* p) const { psc_string_free(p); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ProtocolDeleter {
    void operator()(psc_protocol* p) const { psc_protocol_free(p); }
};
struct ScenarioDeleter {
    void operator()(psc_scenario* p) const { psc_scenario_free(p); }
};
struct DiagnosticsDeleter {
    void operator()(psc_diagnostics* p) const { psc_diagnostics_free(p); }
};
struct SimResultDeleter {
    void operator()(psc_sim_result* p) const { psc_sim_result_free(p); }
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return out.good();
}

void print_diagnostics(psc_diagnostics* diags) {
    std::unique_ptr<psc_diagnostics, DiagnosticsDeleter> owned(diags);
    if (!diags) return;
    for (size_t i = 0; i < psc_diagnostics_count(diags); ++i) {
        OwnedString line(psc_diagnostics_render(diags, i));
        if (line) std::cerr << line.get() << "\n";
    }
}

std::unique_ptr<psc_protocol, ProtocolDeleter> load_protocol(const std::string& path,
                                                             int& exit_code) {
    std::optional<std::string> source = read_file(path);
    if (!source) {
        std::cerr << "error: cannot read " << path << "\n";
        exit_code = kExitIo;
        return nullptr;
    }
    psc_protocol* protocol = nullptr;
    psc_diagnostics* diags = nullptr;
    psc_status status = psc_protocol_parse(source->c_str(), path.c_str(), &protocol, &diags);
    if (status == PSC_ERR_DIAGNOSTICS) {
        print_diagnostics(diags);
        exit_code = kExitDiagnostics;
        return nullptr;
    }
    if (status != PSC_OK) {
        std::cerr << "error: failed to compile " << path << "\n";
        exit_code = kExitIo;
        return nullptr;
    }
    exit_code = kExitOk;
    return std::unique_ptr<psc_protocol, ProtocolDeleter>(protocol);
}

int run_check(const std::string& path) {
    int exit_code = kExitOk;
    auto protocol = load_protocol(path, exit_code);
    return protocol ? kExitOk : exit_code;
}

int run_graph(const std::string& path, const std::string& output) {
    int exit_code = kExitOk;
    auto protocol = load_protocol(path, exit_code);
    if (!protocol) return exit_code;
    OwnedString dot(psc_protocol_dot(protocol.get()));
    if (!dot || !write_output(output, dot.get())) {
        std::cerr << "error: cannot write " << output << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_stubs(const std::string& path, const std::string& output,
              const std::string& manifest_output) {
    int exit_code = kExitOk;
    auto protocol = load_protocol(path, exit_code);
    if (!protocol) return exit_code;
    OwnedString stubs(psc_protocol_stubs(protocol.get()));
    OwnedString manifest(psc_protocol_manifest(protocol.get()));
    if (!stubs || !manifest) return kExitIo;

    if (output.empty() && manifest_output.empty()) {
        std::cout << stubs.get();
        std::cout << "=== manifest ===\n";
        std::cout << manifest.get();
        return kExitOk;
    }
    if (!write_output(output, stubs.get())) {
        std::cerr << "error: cannot write " << output << "\n";
        return kExitIo;
    }
    if (!manifest_output.empty() && !write_output(manifest_output, manifest.get())) {
        std::cerr << "error: cannot write " << manifest_output << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_simulate(const std::string& path, const std::string& scenario_path,
                 const std::string& pack, const std::string& mode) {
    int exit_code = kExitOk;
    auto protocol = load_protocol(path, exit_code);
    if (!protocol) return exit_code;

    std::optional<std::string> scenario_text = read_file(scenario_path);
    if (!scenario_text) {
        std::cerr << "error: cannot read " << scenario_path << "\n";
        return kExitIo;
    }
    psc_scenario* scenario = nullptr;
    psc_diagnostics* diags = nullptr;
    psc_status status = psc_scenario_parse(scenario_text->c_str(), scenario_path.c_str(),
                                           &scenario, &diags);
    if (status == PSC_ERR_DIAGNOSTICS) {
        print_diagnostics(diags);
        return kExitDiagnostics;
    }
    if (status != PSC_OK) {
        std::cerr << "error: failed to load " << scenario_path << "\n";
        return kExitIo;
    }
    std::unique_ptr<psc_scenario, ScenarioDeleter> owned_scenario(scenario);

    psc_sim_result* result = nullptr;
    status = psc_simulate(protocol.get(), scenario, pack.empty() ? nullptr : pack.c_str(),
                          mode.empty() ? nullptr : mode.c_str(), &result, &diags);
    if (status == PSC_ERR_DIAGNOSTICS) {
        print_diagnostics(diags);
        return kExitDiagnostics;
    }
    if (status == PSC_ERR_UNKNOWN_PACK) {
        std::cerr << "error: unknown logic pack '" << pack << "'\n";
        return kExitDiagnostics;
    }
    if (status != PSC_OK) {
        std::cerr << "error: simulation failed internally\n";
        return kExitIo;
    }
    std::unique_ptr<psc_sim_result, SimResultDeleter> owned_result(result);

    std::cout << psc_sim_result_log(result);
    std::cout << "Final balances:\n";
    for (size_t i = 0; i < psc_sim_result_wallet_count(result); ++i) {
        std::cout << psc_sim_result_wallet_name(result, i) << ": "
                  << psc_sim_result_wallet_balance(result, i) << " Lovelace\n";
    }
    std::cout << "contract: " << psc_sim_result_pot(result) << " Lovelace\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"psc: protocol compiler and ledger simulator"};
    app.require_subcommand(1);

    std::string protocol_path;
    std::string output;
    std::string manifest_output;
    std::string scenario_path;
    std::string pack;
    std::string mode;

    CLI::App* check = app.add_subcommand("check", "Parse and validate a protocol");
    check->add_option("protocol", protocol_path, "protocol source (.psc)")->required();

    CLI::App* graph = app.add_subcommand("graph", "Emit the automaton as Graphviz DOT");
    graph->add_option("protocol", protocol_path, "protocol source (.psc)")->required();
    graph->add_option("-o,--output", output, "write DOT here instead of stdout");

    CLI::App* stubs = app.add_subcommand("stubs", "Emit business-logic stubs and the manifest");
    stubs->add_option("protocol", protocol_path, "protocol source (.psc)")->required();
    stubs->add_option("-o,--output", output, "write the stub source here");
    stubs->add_option("-m,--manifest", manifest_output, "write the manifest here");

    CLI::App* simulate = app.add_subcommand("simulate", "Replay a scenario on the ledger");
    simulate->add_option("protocol", protocol_path, "protocol source (.psc)")->required();
    simulate->add_option("-s,--scenario", scenario_path, "scenario file (.json)")->required();
    simulate->add_option("-p,--pack", pack,
                         "built-in logic pack (guessing_game, ping_pong, crowdfunding, auction)");
    simulate->add_option("-m,--mode", mode, "override the scenario mode (guarded|unguarded)")
        ->check(CLI::IsMember({"guarded", "unguarded"}));

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) return run_check(protocol_path);
    if (graph->parsed()) return run_graph(protocol_path, output);
    if (stubs->parsed()) return run_stubs(protocol_path, output, manifest_output);
    return run_simulate(protocol_path, scenario_path, pack, mode);
}
