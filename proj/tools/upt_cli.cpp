// Copyright 2026 The upt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "upt/experiments.hpp"

namespace {

void print_listing(bool as_json) {
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& e : upt::registry()) j.push_back(e.to_json());
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& e : upt::registry()) {
        std::cout << e.name << "\n  " << e.anchor << "\n  " << e.description << "\n";
        for (const auto& p : e.params) {
            std::cout << "    " << p.name << " (" << p.type << ", default " << p.default_value << ", range [" << p.min
                      << ", " << p.max << "]): " << p.description << "\n";
        }
    }
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, std::string> out;
    for (const auto& kv : raw) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw upt::ExperimentError("--param expects key=value, got '" + kv + "'");
        }
        out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Runs seeded unitary property testing experiments and emits JSON reports."};
    std::string name, out;
    std::uint64_t seed = 1;
    std::vector<std::string> raw_params;
    int trials = 0;
    bool list = false, as_json = false, sampled = false;
    app.add_option("-e,--experiment", name, "experiment name (see --list)");
    app.add_option("-s,--seed", seed, "root seed")->capture_default_str();
    app.add_option("-o,--out", out, "write the JSON report here; CSV tables go next to it");
    app.add_option("-p,--param", raw_params, "experiment parameter key=value (repeatable)");
    app.add_option("-t,--trials", trials, "shorthand for --param trials=N")->check(CLI::PositiveNumber);
    auto* exact_flag = app.add_flag("--exact", "exact acceptance probabilities (default)");
    app.add_flag("--sampled", sampled, "sample measurement outcomes instead")->excludes(exact_flag);
    app.add_flag("-l,--list", list, "list registered experiments");
    app.add_flag("--json", as_json, "machine-readable listing or report on stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list) {
        print_listing(as_json);
        return 0;
    }
    if (name.empty()) {
        std::cerr << "error: --experiment or --list is required\n";
        return 2;
    }
    nlohmann::json report;
    std::map<std::string, std::string> tables;
    try {
        upt::ExperimentDescriptor desc{name, parse_params(raw_params), seed, !sampled};
        if (trials > 0) {
            if (desc.params.count("trials")) {
                throw upt::ExperimentError("--trials conflicts with --param trials=...");
            }
            desc.params["trials"] = std::to_string(trials);
        }
        report = upt::run_experiment(desc, &tables);
    } catch (const upt::ExperimentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (!out.empty()) {
        std::filesystem::path path(out);
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        std::ofstream(path) << report.dump(2) << "\n";
        for (const auto& [table, csv] : tables) {
            std::filesystem::path p = path;
            p.replace_extension("." + table + ".csv");
            std::ofstream(p) << csv;
        }
    }
    if (as_json || out.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        for (const auto& c : report["checks"]) {
            std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << ": "
                      << c["value"].dump() << " (threshold " << c["threshold"].dump() << ")\n";
        }
        std::cout << name << ": " << (report["pass"].get<bool>() ? "pass" : "FAIL") << " in "
                  << report["runtime_seconds"].get<double>() << " s\n";
    }
    return report["pass"].get<bool>() ? 0 : 1;
}
