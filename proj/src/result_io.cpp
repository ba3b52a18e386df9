// SPDX-License-Identifier: Apache-2.0
//
// starsim - link-level simulator for active STAR-RIS surfaces
// Copyright (C) 2026 starsim contributors
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

#include "starsim/result_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace starsim
{
    std::string format_double(double v)
    {
        std::ostringstream o;
        o.imbue(std::locale::classic());
        o << std::setprecision(17) << v;
        return o.str();
    }

    std::string sweep_csv(const sweep_result &result)
    {
        std::ostringstream out;
        out.imbue(std::locale::classic());
        out << "x,estimate,ci_low,ci_high,analytic_primary,analytic_alt\n";
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 0; i < result.x.size(); ++i)
        {
            const estimate &e = result.estimates[i];
            out << format_double(result.x[i]) << ','
                << format_double(e.unresolved ? nan : e.value) << ','
                << format_double(e.ci_low) << ',' << format_double(e.ci_high) << ','
                << format_double(result.analytic_primary[i]) << ','
                << format_double(result.analytic_alt[i]) << '\n';
        }
        return out.str();
    }

    namespace
    {
        void write_text(const std::string &path, const std::string &text)
        {
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot open '" + path + "' for writing");
            out << text;
            if (!out)
                throw std::runtime_error("failed writing '" + path + "'");
        }
    }

    void write_sweep_csv(const std::string &path, const sweep_result &result)
    {
        write_text(path, sweep_csv(result));
    }

    std::string manifest_json(const run_manifest &manifest)
    {
        nlohmann::json j;
        j["command"] = manifest.command;
        j["config_toml"] = manifest.config_toml;
        j["parameters"] = manifest.parameters;
        j["master_seed"] = manifest.master_seed;
        j["version"] = manifest.version;
        j["duration_seconds"] = manifest.duration_seconds;
        return j.dump(2) + "\n";
    }

    void write_manifest(const std::string &path, const run_manifest &manifest)
    {
        write_text(path, manifest_json(manifest));
    }

    run_manifest read_manifest(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot read manifest '" + path + "'");
        nlohmann::json j;
        try
        {
            in >> j;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw std::runtime_error("malformed manifest '" + path + "': " + e.what());
        }
        run_manifest m;
        try
        {
            m.command = j.at("command").get<std::string>();
            m.config_toml = j.at("config_toml").get<std::string>();
            m.parameters =
                j.at("parameters").get<std::map<std::string, std::string>>();
            m.master_seed = j.at("master_seed").get<std::uint64_t>();
            m.version = j.at("version").get<std::string>();
            m.duration_seconds = j.at("duration_seconds").get<double>();
        }
        catch (const nlohmann::json::exception &e)
        {
            throw std::runtime_error("manifest '" + path +
                                     "' is missing required fields: " + e.what());
        }
        return m;
    }
}
