// SPDX-License-Identifier: Apache-2.0
//
// satcoex - coexistence simulator for mm-wave cellular networks and
// passive weather-satellite sensors
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

#include "satcoex/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace
{

struct CommonArgs
{
    std::string config_path;
    std::string out_dir;
    std::string grid;
    uint64_t seed = 0;
    double ptx_offset_db = 0.0;
    int scintillation_exponent = 3;
};

void add_common(CLI::App *sub, CommonArgs &args, bool config_required)
{
    auto *c = sub->add_option("--config", args.config_path, "run config (JSON)");
    c->check(CLI::ExistingFile);
    if (config_required)
        c->required();
    sub->add_option("--out", args.out_dir, "output directory (overrides config)");
    sub->add_option("--grid", args.grid, "launch grid: coarse or paper")
        ->check(CLI::IsMember({"coarse", "paper"}));
    sub->add_option("--seed", args.seed, "RNG seed (overrides config)");
    sub->add_option("--ptx-offset-db", args.ptx_offset_db,
                    "offset applied to both transmit powers, dB");
    sub->add_option("--scintillation-exponent", args.scintillation_exponent,
                    "scintillation exponent in the attenuation combination: 2 or 3")
        ->check(CLI::IsMember({2, 3}));
}

satcoex::RunConfig apply_overrides(const CLI::App *sub, const CommonArgs &args)
{
    satcoex::RunConfig cfg = satcoex::load_run_config(args.config_path);
    if (sub->count("--out"))
        cfg.out_dir = args.out_dir;
    if (sub->count("--grid"))
        cfg.grid = args.grid;
    if (sub->count("--seed"))
        cfg.seed = args.seed;
    if (sub->count("--ptx-offset-db"))
        cfg.ptx_offset_db = args.ptx_offset_db;
    if (sub->count("--scintillation-exponent"))
        cfg.scintillation_exponent = args.scintillation_exponent;
    return cfg;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"satcoex: out-of-band interference from mm-wave cellular networks "
                 "into a passive weather-satellite sounder"};
    app.require_subcommand(1);
    CommonArgs args;

    CLI::App *trace = app.add_subcommand("trace", "fill the ray cache for a config");
    add_common(trace, args, true);
    CLI::App *run = app.add_subcommand("run", "full pipeline: samples and risk reports");
    add_common(run, args, true);
    CLI::App *validate =
        app.add_subcommand("validate", "check fixtures and print the run manifest");
    add_common(validate, args, true);

    CLI::App *thresholds =
        app.add_subcommand("thresholds", "print the derived protection thresholds");
    double nedt = 0.3, bandwidth = 2.0e8, gamma1 = -136.0;
    thresholds->add_option("--nedt-k", nedt, "radiometer NEdT, kelvin");
    thresholds->add_option("--bandwidth-hz", bandwidth, "reference bandwidth, Hz");
    thresholds->add_option("--gamma1-dbm", gamma1, "ITU-R protection level, dBm");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (thresholds->parsed())
            return satcoex::cmd_thresholds(nedt, bandwidth, gamma1, std::cout);
        if (trace->parsed())
        {
            satcoex::cmd_trace(apply_overrides(trace, args), std::cout);
            return 0;
        }
        if (run->parsed())
            return satcoex::cmd_run(apply_overrides(run, args), std::cout);
        if (validate->parsed())
            return satcoex::cmd_validate(apply_overrides(validate, args), std::cout) == 0
                       ? 0
                       : 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
