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

#include "starsim/scenario_io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace starsim
{
    namespace
    {
        struct raw_value
        {
            bool is_string = false;
            std::string text;        // string payload, or the numeric token
            double num = 0.0;        // numeric payload when !is_string
            bool is_integer = false; // token matched [+-]?[0-9]+
            std::size_t line = 0;
        };

        [[noreturn]] void fail(std::size_t line, const std::string &msg)
        {
            throw config_error("line " + std::to_string(line) + ": " + msg);
        }

        std::string trim(const std::string &s)
        {
            std::size_t b = 0, e = s.size();
            while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
                ++b;
            while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
                --e;
            return s.substr(b, e - b);
        }

        bool bare_key_ok(const std::string &k)
        {
            if (k.empty())
                return false;
            for (char c : k)
                if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                    return false;
            return true;
        }

        const std::set<std::string> &known_sections()
        {
            static const std::set<std::string> s = {
                "element", "channels.bs", "channels.user_a", "channels.user_b",
                "noise",   "power",       "mc"};
            return s;
        }

        const std::set<std::string> &known_keys()
        {
            static const std::set<std::string> s = [] {
                std::set<std::string> k = {
                    "m_elements",
                    "element.kind",
                    "element.gain_db", "element.phase_deg", "element.amp_port",
                    "element.amplitude", "element.phase_rad",
                    "element.gain2_db", "element.phase2_deg",
                    "element.amplitude2", "element.phase2_rad",
                    "element.gain3_db", "element.phase3_deg",
                    "element.amplitude3", "element.phase3_rad",
                    "noise.user_dbm", "noise.user_a_dbm", "noise.user_b_dbm",
                    "noise.element_dbm",
                    "noise.user_a_w", "noise.user_b_w", "noise.element_w",
                    "power.transmit_dbm", "power.transmit_w",
                    "mc.trials", "mc.seed"};
                for (const char *c : {"channels.bs", "channels.user_a", "channels.user_b"})
                    for (const char *f : {"k_db", "k", "distance_m", "alpha", "omega"})
                        k.insert(std::string(c) + "." + f);
                return k;
            }();
            return s;
        }

        using kv_map = std::map<std::string, raw_value>;

        kv_map tokenize(const std::string &text)
        {
            kv_map kv;
            std::istringstream in(text);
            std::string raw_line;
            std::string section;
            std::size_t line_no = 0;
            while (std::getline(in, raw_line))
            {
                ++line_no;
                // Strip comments, but not '#' inside a quoted string.
                std::string stripped;
                bool in_str = false;
                for (char c : raw_line)
                {
                    if (c == '"')
                        in_str = !in_str;
                    if (c == '#' && !in_str)
                        break;
                    stripped += c;
                }
                const std::string t = trim(stripped);
                if (t.empty())
                    continue;
                if (t.front() == '[')
                {
                    if (t.back() != ']')
                        fail(line_no, "malformed section header '" + t + "'");
                    section = trim(t.substr(1, t.size() - 2));
                    if (known_sections().find(section) == known_sections().end())
                        fail(line_no, "unknown section '" + section + "'");
                    continue;
                }
                const auto eq = t.find('=');
                if (eq == std::string::npos)
                    fail(line_no, "expected 'key = value', got '" + t + "'");
                const std::string key = trim(t.substr(0, eq));
                const std::string val = trim(t.substr(eq + 1));
                if (!bare_key_ok(key))
                    fail(line_no, "malformed key '" + key + "'");
                const std::string full = section.empty() ? key : section + "." + key;
                if (known_keys().find(full) == known_keys().end())
                    fail(line_no, "unknown key '" + full + "'");
                if (kv.count(full))
                    fail(line_no, "duplicate key '" + full + "'");

                raw_value rv;
                rv.line = line_no;
                if (!val.empty() && val.front() == '"')
                {
                    if (val.size() < 2 || val.back() != '"')
                        fail(line_no, "unterminated string value for '" + full + "'");
                    rv.is_string = true;
                    rv.text = val.substr(1, val.size() - 2);
                }
                else
                {
                    if (val.empty())
                        fail(line_no, "missing value for '" + full + "'");
                    char *end = nullptr;
                    errno = 0;
                    rv.num = std::strtod(val.c_str(), &end);
                    if (end != val.c_str() + val.size() || errno == ERANGE)
                        fail(line_no, "cannot parse value '" + val + "' for '" + full + "'");
                    rv.text = val;
                    std::size_t d = (val[0] == '+' || val[0] == '-') ? 1 : 0;
                    rv.is_integer = d < val.size();
                    for (std::size_t i = d; i < val.size(); ++i)
                        if (!std::isdigit(static_cast<unsigned char>(val[i])))
                            rv.is_integer = false;
                }
                kv[full] = rv;
            }
            return kv;
        }

        // Field accessors over the tokenized document. Defaults are the
        // documented baseline and are applied only when the key is absent.
        class resolver
        {
        public:
            explicit resolver(kv_map kv) : kv_(std::move(kv)) {}

            bool has(const std::string &k) const { return kv_.count(k) != 0; }

            std::size_t line_of(const std::string &k) const { return kv_.at(k).line; }

            double number(const std::string &k, double def) const
            {
                auto it = kv_.find(k);
                if (it == kv_.end())
                    return def;
                if (it->second.is_string)
                    fail(it->second.line, "'" + k + "' must be a number");
                return it->second.num;
            }

            double positive(const std::string &k, double def) const
            {
                const double v = number(k, def);
                if (!(v > 0.0))
                    fail(line_of(k), "'" + k + "' must be > 0");
                return v;
            }

            long long integer(const std::string &k, long long def, long long lo,
                              const char *what) const
            {
                auto it = kv_.find(k);
                long long v = def;
                if (it != kv_.end())
                {
                    const raw_value &rv = it->second;
                    const bool integral_float = !rv.is_string &&
                                                std::floor(rv.num) == rv.num &&
                                                std::fabs(rv.num) < 9.0e15;
                    if (rv.is_integer)
                        v = std::strtoll(rv.text.c_str(), nullptr, 10);
                    else if (integral_float)
                        v = static_cast<long long>(rv.num);
                    else
                        fail(rv.line, "'" + k + "' must be " + what);
                    if (v < lo)
                        fail(rv.line, "'" + k + "' must be " + what);
                }
                return v;
            }

            std::string string_value(const std::string &k, const std::string &def) const
            {
                auto it = kv_.find(k);
                if (it == kv_.end())
                    return def;
                if (!it->second.is_string)
                    fail(it->second.line, "'" + k + "' must be a quoted string");
                return it->second.text;
            }

            void forbid(const std::string &k, const std::string &why) const
            {
                if (has(k))
                    fail(line_of(k), "'" + k + "' " + why);
            }

            void exclusive(const std::string &a, const std::string &b) const
            {
                if (has(a) && has(b))
                    fail(std::max(line_of(a), line_of(b)),
                         "'" + a + "' and '" + b + "' are mutually exclusive");
            }

            const kv_map &map() const { return kv_; }

        private:
            kv_map kv_;
        };

        // Amplifier setting from either the human (dB / degree) or exact
        // (linear amplitude / radian) spelling of the pair of knobs.
        complex_gain resolve_gain(const resolver &r, const std::string &db_key,
                                  const std::string &amp_key, const std::string &deg_key,
                                  const std::string &rad_key, double default_db)
        {
            r.exclusive(amp_key, db_key);
            r.exclusive(rad_key, deg_key);
            double amp;
            if (r.has(amp_key))
            {
                amp = r.number(amp_key, 0.0);
                if (!(amp >= 0.0))
                    fail(r.line_of(amp_key), "'" + amp_key + "' must be >= 0");
            }
            else
                amp = amplitude_from_db(r.number(db_key, default_db));
            const double phase = r.has(rad_key)
                                     ? r.number(rad_key, 0.0)
                                     : r.number(deg_key, 0.0) * M_PI / 180.0;
            if (!std::isfinite(phase))
                fail(r.line_of(r.has(rad_key) ? rad_key : deg_key), "phase must be finite");
            return complex_gain(amp, phase);
        }

        rician_params resolve_channel(const resolver &r, const std::string &sec)
        {
            r.exclusive(sec + ".k", sec + ".k_db");
            double k;
            if (r.has(sec + ".k"))
            {
                k = r.number(sec + ".k", 0.0);
                if (!(k >= 0.0))
                    fail(r.line_of(sec + ".k"), "'" + sec + ".k' must be >= 0");
            }
            else
                k = db_to_linear(r.number(sec + ".k_db", 1.5));
            // Direct omega wins over the distance parametrization.
            double omega;
            if (r.has(sec + ".omega"))
                omega = r.positive(sec + ".omega", 1.0);
            else
            {
                const double d = r.positive(sec + ".distance_m", 10.0);
                const double a = r.positive(sec + ".alpha", 2.2);
                omega = std::pow(d, -a);
            }
            return rician_params(k, omega);
        }

        element_config resolve_element(const resolver &r)
        {
            const std::string kind = r.string_value("element.kind", "coupled");
            const char *coupled_only = "only applies to coupled elements";
            const char *independent_only = "only applies to independent elements";
            const char *passive_none = "has no effect for passive elements";
            const std::string loop2[] = {"element.gain2_db", "element.phase2_deg",
                                         "element.amplitude2", "element.phase2_rad"};
            const std::string loop3[] = {"element.gain3_db", "element.phase3_deg",
                                         "element.amplitude3", "element.phase3_rad"};
            const std::string single[] = {"element.gain_db", "element.phase_deg",
                                          "element.amplitude", "element.phase_rad",
                                          "element.amp_port"};
            if (kind == "coupled")
            {
                for (const auto &k : loop2)
                    r.forbid(k, independent_only);
                for (const auto &k : loop3)
                    r.forbid(k, independent_only);
                const complex_gain g =
                    resolve_gain(r, "element.gain_db", "element.amplitude",
                                 "element.phase_deg", "element.phase_rad", 1.5);
                const long long port = r.integer("element.amp_port", 2, 2, "2 or 3");
                if (port != 2 && port != 3)
                    fail(r.line_of("element.amp_port"), "'element.amp_port' must be 2 or 3");
                return coupled_config{g, static_cast<int>(port)};
            }
            if (kind == "independent")
            {
                for (const auto &k : single)
                    r.forbid(k, coupled_only);
                return independent_config{
                    resolve_gain(r, "element.gain2_db", "element.amplitude2",
                                 "element.phase2_deg", "element.phase2_rad", 1.5),
                    resolve_gain(r, "element.gain3_db", "element.amplitude3",
                                 "element.phase3_deg", "element.phase3_rad", 1.5)};
            }
            if (kind == "passive")
            {
                for (const auto &k : single)
                    r.forbid(k, passive_none);
                for (const auto &k : loop2)
                    r.forbid(k, passive_none);
                for (const auto &k : loop3)
                    r.forbid(k, passive_none);
                return passive_config{};
            }
            fail(r.line_of("element.kind"),
                 "element.kind must be \"coupled\", \"independent\", or \"passive\"");
        }

        std::string fmt(double v)
        {
            std::ostringstream o;
            o << std::setprecision(17) << v;
            return o.str();
        }
    }

    sim_config parse_config(const std::string &text)
    {
        const resolver r(tokenize(text));
        sim_config out;

        out.sc.m_elements = static_cast<std::size_t>(
            r.integer("m_elements", 324, 1, "an integer >= 1"));
        out.sc.element = resolve_element(r);
        out.sc.bs_link = resolve_channel(r, "channels.bs");
        out.sc.user_a_link = resolve_channel(r, "channels.user_a");
        out.sc.user_b_link = resolve_channel(r, "channels.user_b");

        r.exclusive("noise.user_a_dbm", "noise.user_a_w");
        r.exclusive("noise.user_b_dbm", "noise.user_b_w");
        r.exclusive("noise.element_dbm", "noise.element_w");
        const double base_user_dbm = r.number("noise.user_dbm", -10.0);
        out.sc.user_noise_power_a =
            r.has("noise.user_a_w")
                ? r.positive("noise.user_a_w", 1.0)
                : dbm_to_watts(r.number("noise.user_a_dbm", base_user_dbm));
        out.sc.user_noise_power_b =
            r.has("noise.user_b_w")
                ? r.positive("noise.user_b_w", 1.0)
                : dbm_to_watts(r.number("noise.user_b_dbm", base_user_dbm));
        if (r.has("noise.element_w"))
        {
            const double w = r.number("noise.element_w", 0.0);
            if (!(w >= 0.0))
                fail(r.line_of("noise.element_w"), "'noise.element_w' must be >= 0");
            out.sc.element_noise_power = w;
        }
        else
            out.sc.element_noise_power = dbm_to_watts(r.number("noise.element_dbm", -20.0));

        r.exclusive("power.transmit_dbm", "power.transmit_w");
        out.sc.transmit_power =
            r.has("power.transmit_w")
                ? r.positive("power.transmit_w", 1.0)
                : dbm_to_watts(r.number("power.transmit_dbm", 30.0));

        out.trials = static_cast<std::size_t>(
            r.integer("mc.trials", 100000, 1, "an integer >= 1"));
        if (r.has("mc.seed"))
        {
            const raw_value &rv = r.map().at("mc.seed");
            if (rv.is_string || !rv.is_integer || rv.text.front() == '-')
                fail(rv.line, "'mc.seed' must be a non-negative integer");
            errno = 0;
            out.seed = std::strtoull(rv.text.c_str(), nullptr, 10);
            if (errno == ERANGE)
                fail(rv.line, "'mc.seed' is out of range");
        }

        try
        {
            out.sc.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(std::string("invalid scenario: ") + e.what());
        }
        return out;
    }

    sim_config default_config() { return parse_config(""); }

    sim_config load_config(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw config_error("cannot read '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        try
        {
            return parse_config(buf.str());
        }
        catch (const config_error &e)
        {
            throw config_error(path + ": " + e.what());
        }
    }

    std::string serialize_config(const sim_config &config)
    {
        const scenario &sc = config.sc;
        std::ostringstream out;
        out << "# starsim scenario (generated; exact linear-unit keys for a "
               "lossless round trip)\n";
        out << "m_elements = " << sc.m_elements << "\n\n";

        out << "[element]\n";
        if (const auto *c = std::get_if<coupled_config>(&sc.element))
        {
            out << "kind = \"coupled\"\n";
            out << "amplitude = " << fmt(c->gain.amplitude) << "\n";
            out << "phase_rad = " << fmt(c->gain.phase) << "\n";
            out << "amp_port = " << c->amp_port << "\n";
        }
        else if (const auto *ic = std::get_if<independent_config>(&sc.element))
        {
            out << "kind = \"independent\"\n";
            out << "amplitude2 = " << fmt(ic->g2.amplitude) << "\n";
            out << "phase2_rad = " << fmt(ic->g2.phase) << "\n";
            out << "amplitude3 = " << fmt(ic->g3.amplitude) << "\n";
            out << "phase3_rad = " << fmt(ic->g3.phase) << "\n";
        }
        else
            out << "kind = \"passive\"\n";
        out << "\n";

        const struct
        {
            const char *name;
            const rician_params *link;
        } chans[] = {{"bs", &sc.bs_link},
                     {"user_a", &sc.user_a_link},
                     {"user_b", &sc.user_b_link}};
        for (const auto &ch : chans)
        {
            out << "[channels." << ch.name << "]\n";
            out << "k = " << fmt(ch.link->k) << "\n";
            out << "omega = " << fmt(ch.link->omega) << "\n\n";
        }

        out << "[noise]\n";
        out << "user_a_w = " << fmt(sc.user_noise_power_a) << "\n";
        out << "user_b_w = " << fmt(sc.user_noise_power_b) << "\n";
        out << "element_w = " << fmt(sc.element_noise_power) << "\n\n";

        out << "[power]\n";
        out << "transmit_w = " << fmt(sc.transmit_power) << "\n\n";

        out << "[mc]\n";
        out << "trials = " << config.trials << "\n";
        out << "seed = " << config.seed << "\n";
        return out.str();
    }
}
