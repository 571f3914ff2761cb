// SPDX-License-Identifier: Apache-2.0
//
// coherent-frames: certified numerics for coherent frames on finite groups
// Copyright (C) 2026 The coherent-frames authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// coherent_lab: runs scenario files and writes reports.
//
//   coherent_lab suite --scenarios scenarios/acceptance_suite.json --format text
//   coherent_lab hap --scenarios my.json --out hap.csv --format csv --strict
//
// Every subcommand except `suite` runs only the scenarios of its kind.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coherent/report.hpp"
#include "coherent/runner.hpp"
#include "coherent/scenario.hpp"

namespace {

struct Options {
    std::string scenarios;
    std::string out;
    std::string format = "json";
    bool strict = false;
    unsigned parallel = 1;
    std::optional<std::uint64_t> seed;
};

struct Command {
    const char* name;
    const char* help;
    std::optional<coherent::ScenarioKind> kind;  // nullopt: every kind
    bool dual_vectors = false;
};

int execute(const Command& cmd, const Options& opt) {
    using namespace coherent;
    const auto format = parse_format(opt.format);
    if (!format) {
        std::cerr << "error: unknown format " << opt.format << "\n";
        return 1;
    }
    std::vector<Scenario> scenarios;
    try {
        scenarios = load_scenarios(opt.scenarios);
    } catch (const ParseError& e) {
        std::cerr << opt.scenarios << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << opt.scenarios << ": " << e.what() << "\n";
        return 1;
    }
    if (cmd.kind) std::erase_if(scenarios, [&](const Scenario& s) { return s.kind != *cmd.kind; });
    if (scenarios.empty()) std::cerr << "note: no " << (cmd.kind ? kind_name(*cmd.kind) : "") << " scenarios in " << opt.scenarios << "\n";
    if (opt.seed)
        for (auto& s : scenarios) s.seed = *opt.seed;

    RunOptions ro;
    ro.include_dual_vectors = cmd.dual_vectors;
    const auto reports = run(scenarios, opt.parallel, ro);
    std::string text = emit(reports, *format);
    if (*format == Format::json) text += "\n";

    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << opt.out << "\n";
            return 1;
        }
        f << text;
    }
    const bool all_ok = std::all_of(reports.begin(), reports.end(), [](const RunReport& r) { return r.ok; });
    return opt.strict && !all_ok ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    using coherent::ScenarioKind;
    CLI::App app{"certified numerics for coherent frames on finite groups"};
    app.set_version_flag("--version", std::string(coherent::kVersion));
    app.require_subcommand(1);

    const std::vector<Command> commands = {
        {"check-separation", "sampling bound and separation constants on random instances", ScenarioKind::sampling_bound},
        {"frame-bounds", "frame bounds, dual reconstruction and Bessel checks", ScenarioKind::frame_analysis},
        {"dual", "frame analysis including the dual vectors", ScenarioKind::frame_analysis, true},
        {"hap", "smallest certified L for the approximation property", ScenarioKind::hap},
        {"compare", "cardinality comparison certificates", ScenarioKind::comparison},
        {"density", "point counts per translated ball", ScenarioKind::density},
        {"suite", "run every scenario in the file", std::nullopt},
    };

    Options opt;
    std::uint64_t seed = 0;
    const Command* chosen = nullptr;
    for (const auto& cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--scenarios", opt.scenarios, "scenario file (JSON array)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "write the report here instead of stdout");
        sub->add_option("--format", opt.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_flag("--strict", opt.strict, "exit with status 2 if any scenario is not ok");
        sub->add_option("--parallel", opt.parallel, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "override the seed of every scenario");
        sub->callback([&, c = &cmd, sub] {
            chosen = c;
            if (sub->count("--seed") > 0) opt.seed = seed;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return execute(*chosen, opt);
}
