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

#include "starsim/cli.hpp"

#include "starsim/analytics.hpp"
#include "starsim/element.hpp"
#include "starsim/mc.hpp"
#include "starsim/pattern.hpp"
#include "starsim/report.hpp"
#include "starsim/result_io.hpp"
#include "starsim/scenario_io.hpp"
#include "starsim/validation.hpp"
#include "starsim/version.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace starsim
{
    namespace
    {
        std::string fmt_real(double x)
        {
            std::ostringstream o;
            o.precision(6);
            o << x;
            return o.str();
        }

        std::string fmt_complex(cdouble v)
        {
            const double re = std::abs(v.real()) < 1e-12 ? 0.0 : v.real();
            const double im = std::abs(v.imag()) < 1e-12 ? 0.0 : v.imag();
            if (im == 0.0)
                return fmt_real(re);
            if (re == 0.0)
                return fmt_real(im) + "j";
            return fmt_real(re) + (im > 0.0 ? " + " : " - ") + fmt_real(std::abs(im)) + "j";
        }

        user parse_user(const std::string &s)
        {
            return s == "b" ? user::b : user::a;
        }

        align_target parse_align(const std::string &s)
        {
            if (s == "user_b")
                return align_target::user_b;
            if (s == "both")
                return align_target::both;
            return align_target::user_a;
        }

        void apply_threads(int threads)
        {
#ifdef _OPENMP
            if (threads > 0)
                omp_set_num_threads(threads);
#else
            (void)threads;
#endif
        }

        double seconds_since(std::chrono::steady_clock::time_point t0)
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        }

        // ------------------------------------------------------ element ---
        struct element_opts
        {
            bool coupled = false;
            bool independent = false;
            bool passive = false;
            double gain_db = 1.5;
            double phase_deg = 0.0;
            int amp_port = 2;
            double gain2_db = 1.5;
            double phase2_deg = 0.0;
            double gain3_db = 1.5;
            double phase3_deg = 0.0;
        };

        int run_element(const element_opts &o)
        {
            element_config cfg;
            if (o.independent)
            {
                cfg = independent_config{
                    complex_gain(amplitude_from_db(o.gain2_db), o.phase2_deg * M_PI / 180.0),
                    complex_gain(amplitude_from_db(o.gain3_db), o.phase3_deg * M_PI / 180.0)};
                std::cout << "configuration: independent (amplifiers on ports 2 and 3)\n";
            }
            else if (o.passive)
            {
                cfg = passive_config{};
                std::cout << "configuration: passive lossless\n";
            }
            else
            {
                cfg = coupled_config{
                    complex_gain(amplitude_from_db(o.gain_db), o.phase_deg * M_PI / 180.0),
                    o.amp_port};
                std::cout << "configuration: coupled (amplifier on port " << o.amp_port
                          << ")\n";
            }
            const tr_matrix m = element_matrix(cfg);
            std::cout << "R^A = " << fmt_complex(m.r_a) << "\n";
            std::cout << "R^B = " << fmt_complex(m.r_b) << "\n";
            std::cout << "T   = " << fmt_complex(m.t_ba) << "\n";
            const energy_classification ec = classify(m);
            std::cout << "energy class: " << to_string(ec.kind) << "\n";
            std::cout << "eigenvalues of Xi^H Xi: " << fmt_real(ec.eig_lo) << ", "
                      << fmt_real(ec.eig_hi) << "\n";
            return 0;
        }

        // ------------------------------------------------------ pattern ---
        struct pattern_opts
        {
            std::size_t rows = 18;
            std::size_t cols = 18;
            double spacing = 0.5;
            double theta_a = 20.0;
            double theta_b = 190.0;
            double gain_db = 1.5;
            double step = 0.25;
            std::uint64_t phase_seed = 2024;
            std::string out = "pattern";
        };

        void write_pattern_csv(const std::string &path, const side_patterns &sp)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw std::runtime_error("cannot open '" + path + "' for writing");
            f << "angle_deg,reflection,transmission\n";
            for (std::size_t i = 0; i < sp.reflection.angles_deg.size(); ++i)
                f << format_double(sp.reflection.angles_deg[i]) << ','
                  << format_double(sp.reflection.magnitude[i]) << ','
                  << format_double(sp.transmission.magnitude[i]) << '\n';
            if (!f)
                throw std::runtime_error("failed writing '" + path + "'");
        }

        int run_pattern(const pattern_opts &o)
        {
            const auto t0 = std::chrono::steady_clock::now();
            const array_geometry geom{o.rows, o.cols, o.spacing};
            pattern_options opt;
            opt.grid_step_deg = o.step;
            opt.transmission_phase_seed = o.phase_seed;

            sim_config cfg = default_config();
            cfg.sc.m_elements = geom.elements();
            const double amp = amplitude_from_db(o.gain_db);
            cfg.sc.element = coupled_config{complex_gain(amp, 0.0), 2};

            scenario ind = cfg.sc;
            ind.element = independent_config{complex_gain(amp, 0.0), complex_gain(amp, 0.0)};
            scenario pas = cfg.sc;
            pas.element = passive_config{};

            const struct
            {
                const char *name;
                const scenario *sc;
                pattern_config kind;
            } cases[] = {
                {"coupled", &cfg.sc, pattern_config::active_coupled},
                {"independent", &ind, pattern_config::active_independent},
                {"passive", &pas, pattern_config::passive_lossless},
            };
            for (const auto &c : cases)
            {
                const side_patterns sp =
                    radiation_pattern(geom, *c.sc, o.theta_a, o.theta_b, c.kind, opt);
                write_pattern_csv(o.out + "_" + c.name + ".csv", sp);
            }

            run_manifest man;
            man.command = "pattern";
            man.config_toml = serialize_config(cfg);
            man.parameters = {
                {"rows", std::to_string(o.rows)},
                {"cols", std::to_string(o.cols)},
                {"spacing", format_double(o.spacing)},
                {"theta_a_deg", format_double(o.theta_a)},
                {"theta_b_deg", format_double(o.theta_b)},
                {"gain_db", format_double(o.gain_db)},
                {"grid_step_deg", format_double(o.step)},
                {"transmission_phase_seed", std::to_string(o.phase_seed)},
            };
            man.master_seed = o.phase_seed;
            man.version = version;
            man.duration_seconds = seconds_since(t0);
            write_manifest(o.out + ".manifest.json", man);
            std::cout << "wrote " << o.out << "_{coupled,independent,passive}.csv and "
                      << o.out << ".manifest.json\n";
            return 0;
        }

        // ----------------------------------------------- outage/scaling ---
        struct sweep_opts
        {
            std::string config_path;
            std::string user_str = "a";
            std::string align_str = "user_a";
            double gamma_db = 0.0;
            double pmin_dbm = 0.0;
            double pmax_dbm = 50.0;
            double pstep_db = 2.0;
            std::string m_grid = "4,8,16,32,64,128,256";
            std::uint64_t trials = 0;   // 0: keep the config's value
            std::int64_t seed = -1;     // <0: keep the config's value
            int threads = 0;
            bool serial = false;
            std::string out;
            std::string from_manifest;
        };

        std::vector<double> power_grid(double pmin_dbm, double pmax_dbm, double pstep_db)
        {
            if (!(pstep_db > 0.0))
                throw std::invalid_argument("power step must be > 0 dB");
            if (pmax_dbm < pmin_dbm)
                throw std::invalid_argument("power range is empty (max < min)");
            std::vector<double> grid;
            for (double d = pmin_dbm; d <= pmax_dbm + 1e-9; d += pstep_db)
                grid.push_back(dbm_to_watts(d));
            return grid;
        }

        std::vector<double> element_grid(const std::string &csv)
        {
            std::vector<double> grid;
            std::stringstream ss(csv);
            std::string tok;
            while (std::getline(ss, tok, ','))
            {
                char *end = nullptr;
                const long long v = std::strtoll(tok.c_str(), &end, 10);
                if (end == tok.c_str() || *end != '\0' || v < 1)
                    throw std::invalid_argument("bad element count '" + tok +
                                                "' in m grid");
                if (!grid.empty() && double(v) <= grid.back())
                    throw std::invalid_argument("m grid must be strictly increasing");
                grid.push_back(double(v));
            }
            if (grid.empty())
                throw std::invalid_argument("empty m grid");
            return grid;
        }

        sim_config resolve_config(const sweep_opts &o)
        {
            sim_config cfg =
                o.config_path.empty() ? default_config() : load_config(o.config_path);
            if (o.trials > 0)
                cfg.trials = o.trials;
            if (o.seed >= 0)
                cfg.seed = static_cast<std::uint64_t>(o.seed);
            return cfg;
        }

        int run_sweep_command(const char *name, const sim_config &cfg,
                              const sweep_spec &spec, const sweep_opts &o,
                              std::map<std::string, std::string> parameters)
        {
            const auto t0 = std::chrono::steady_clock::now();
            apply_threads(o.threads);
            mc_config mc;
            mc.trials = cfg.trials;
            mc.master_seed = cfg.seed;
            const sweep_result res =
                sweep(cfg.sc, spec, mc,
                      o.serial ? exec_policy::serial_reference : exec_policy::openmp);
            const std::string out_path = o.out;
            write_sweep_csv(out_path, res);

            run_manifest man;
            man.command = name;
            man.config_toml = serialize_config(cfg);
            man.parameters = std::move(parameters);
            man.master_seed = cfg.seed;
            man.version = version;
            man.duration_seconds = seconds_since(t0);
            write_manifest(out_path + ".manifest.json", man);
            std::cout << "wrote " << out_path << " (" << res.x.size() << " points) and "
                      << out_path << ".manifest.json in " << fmt_real(man.duration_seconds)
                      << " s\n";
            return 0;
        }

        int run_outage(sweep_opts o)
        {
            sim_config cfg;
            if (!o.from_manifest.empty())
            {
                const run_manifest man = read_manifest(o.from_manifest);
                if (man.command != "outage")
                    throw std::runtime_error("manifest '" + o.from_manifest +
                                             "' records command '" + man.command +
                                             "', expected 'outage'");
                cfg = parse_config(man.config_toml);
                const auto &p = man.parameters;
                o.user_str = p.at("user");
                o.align_str = p.at("align");
                o.gamma_db = std::strtod(p.at("gamma_db").c_str(), nullptr);
                o.pmin_dbm = std::strtod(p.at("pmin_dbm").c_str(), nullptr);
                o.pmax_dbm = std::strtod(p.at("pmax_dbm").c_str(), nullptr);
                o.pstep_db = std::strtod(p.at("pstep_db").c_str(), nullptr);
            }
            else
                cfg = resolve_config(o);

            sweep_spec spec;
            spec.axis = sweep_axis::transmit_power;
            spec.metric = sweep_metric::outage;
            spec.grid = power_grid(o.pmin_dbm, o.pmax_dbm, o.pstep_db);
            spec.align = parse_align(o.align_str);
            spec.target_user = parse_user(o.user_str);
            spec.gamma_target = db_to_linear(o.gamma_db);
            if (o.out.empty())
                o.out = "outage.csv";
            return run_sweep_command("outage", cfg, spec, o,
                                     {{"user", o.user_str},
                                      {"align", o.align_str},
                                      {"gamma_db", format_double(o.gamma_db)},
                                      {"pmin_dbm", format_double(o.pmin_dbm)},
                                      {"pmax_dbm", format_double(o.pmax_dbm)},
                                      {"pstep_db", format_double(o.pstep_db)}});
        }

        int run_scaling(sweep_opts o)
        {
            const sim_config cfg = resolve_config(o);
            sweep_spec spec;
            spec.axis = sweep_axis::element_count;
            spec.metric = sweep_metric::mean_snr;
            spec.grid = element_grid(o.m_grid);
            spec.align = parse_align(o.align_str);
            spec.target_user = parse_user(o.user_str);
            if (o.out.empty())
                o.out = "scaling.csv";
            return run_sweep_command("scaling", cfg, spec, o,
                                     {{"user", o.user_str},
                                      {"align", o.align_str},
                                      {"m_grid", o.m_grid}});
        }

        // ----------------------------------------------------- validate ---
        struct validate_opts
        {
            std::uint64_t seed = 1;
            std::string report_path;
        };

        int run_validate(const validate_opts &o)
        {
            const validation_results results = run_validation_suite(o.seed);
            for (const auto &c : results.checks)
                std::cout << (c.passed ? "[pass] " : "[FAIL] ") << "Eq. (" << c.id << ") "
                          << c.operation << " — " << c.kind << " (measured "
                          << fmt_real(c.measured) << ", tolerance " << fmt_real(c.tolerance)
                          << ")\n";
            std::size_t divergent = 0;
            for (const auto &d : results.discrepancies)
                if (d.ratio > 2.0 || d.ratio < 0.5)
                    ++divergent;
            std::cout << "literal-vs-corrected noise probe: " << divergent << " of "
                      << results.discrepancies.size() << " points diverge beyond 2x\n";
            if (!o.report_path.empty())
            {
                std::ofstream f(o.report_path, std::ios::binary);
                if (!f)
                    throw std::runtime_error("cannot open '" + o.report_path +
                                             "' for writing");
                f << generate_report(results);
                std::cout << "wrote " << o.report_path << "\n";
            }
            if (!results.all_passed())
            {
                std::cerr << "starsim: validation failures detected\n";
                return 1;
            }
            return 0;
        }
    }

    int run_command(const std::vector<std::string> &args)
    {
        CLI::App app{"starsim — link-level simulator for active STAR-RIS surfaces"};
        app.set_version_flag("--version", std::string("starsim ") + version);
        app.failure_message(CLI::FailureMessage::help);
        app.require_subcommand(1);

        element_opts eo;
        CLI::App *el = app.add_subcommand(
            "element", "Print element T&R coefficients and the energy class");
        CLI::Option *f_coupled = el->add_flag("--coupled", eo.coupled, "Coupled element");
        CLI::Option *f_indep =
            el->add_flag("--independent", eo.independent, "Independent element");
        CLI::Option *f_passive =
            el->add_flag("--passive", eo.passive, "Passive lossless element");
        f_coupled->excludes(f_indep)->excludes(f_passive);
        f_indep->excludes(f_passive);
        el->add_option("--gain-db", eo.gain_db, "Coupled amplifier power gain [dB]");
        el->add_option("--phase-deg", eo.phase_deg, "Coupled amplifier phase [deg]");
        el->add_option("--amp-port", eo.amp_port, "Amplifier port (2 or 3)")
            ->check(CLI::IsMember({2, 3}));
        el->add_option("--gain2-db", eo.gain2_db, "Port-2 amplifier power gain [dB]");
        el->add_option("--phase2-deg", eo.phase2_deg, "Port-2 amplifier phase [deg]");
        el->add_option("--gain3-db", eo.gain3_db, "Port-3 amplifier power gain [dB]");
        el->add_option("--phase3-deg", eo.phase3_deg, "Port-3 amplifier phase [deg]");

        pattern_opts po;
        CLI::App *pat = app.add_subcommand(
            "pattern", "Radiation patterns of the three surface families (CSV)");
        pat->add_option("--rows", po.rows, "Array rows")->check(CLI::PositiveNumber);
        pat->add_option("--cols", po.cols, "Array columns")->check(CLI::PositiveNumber);
        pat->add_option("--spacing", po.spacing, "Element spacing [wavelengths]");
        pat->add_option("--theta-a", po.theta_a, "Reflection-side steering angle [deg]");
        pat->add_option("--theta-b", po.theta_b, "Transmission-side steering angle [deg]");
        pat->add_option("--gain-db", po.gain_db, "Amplifier power gain [dB]");
        pat->add_option("--step", po.step, "Angular grid step [deg]");
        pat->add_option("--phase-seed", po.phase_seed,
                        "Seed for the coupled transmission phases");
        pat->add_option("--out", po.out, "Output file prefix");

        sweep_opts oo;
        CLI::App *out_cmd = app.add_subcommand(
            "outage", "Monte Carlo outage vs transmit power, with overlays (CSV)");
        out_cmd->add_option("--config", oo.config_path, "Scenario TOML file");
        out_cmd->add_option("--user", oo.user_str, "Target user")
            ->check(CLI::IsMember({"a", "b"}));
        out_cmd->add_option("--align", oo.align_str, "Phase alignment target")
            ->check(CLI::IsMember({"user_a", "user_b", "both"}));
        out_cmd->add_option("--gamma-db", oo.gamma_db, "SNR target [dB]");
        out_cmd->add_option("--pmin-dbm", oo.pmin_dbm, "Sweep start [dBm]");
        out_cmd->add_option("--pmax-dbm", oo.pmax_dbm, "Sweep end [dBm]");
        out_cmd->add_option("--pstep-db", oo.pstep_db, "Sweep step [dB]");
        out_cmd->add_option("--trials", oo.trials, "Override mc.trials");
        out_cmd->add_option("--seed", oo.seed, "Override mc.seed");
        out_cmd->add_option("--threads", oo.threads, "OpenMP worker count");
        out_cmd->add_flag("--serial", oo.serial, "Use the serial reference engine");
        out_cmd->add_option("--out", oo.out, "Output CSV path");
        out_cmd->add_option("--from-manifest", oo.from_manifest,
                            "Re-run a previous invocation from its manifest");

        sweep_opts so;
        CLI::App *sca = app.add_subcommand(
            "scaling", "Monte Carlo mean SNR vs element count, with overlays (CSV)");
        sca->add_option("--config", so.config_path, "Scenario TOML file");
        sca->add_option("--user", so.user_str, "Target user")
            ->check(CLI::IsMember({"a", "b"}));
        sca->add_option("--align", so.align_str, "Phase alignment target")
            ->check(CLI::IsMember({"user_a", "user_b", "both"}));
        sca->add_option("--m-grid", so.m_grid, "Comma-separated element counts");
        sca->add_option("--trials", so.trials, "Override mc.trials");
        sca->add_option("--seed", so.seed, "Override mc.seed");
        sca->add_option("--threads", so.threads, "OpenMP worker count");
        sca->add_flag("--serial", so.serial, "Use the serial reference engine");
        sca->add_option("--out", so.out, "Output CSV path");

        validate_opts vo;
        CLI::App *val = app.add_subcommand(
            "validate", "Run the invariant suite; nonzero exit on any failure");
        val->add_option("--seed", vo.seed, "Suite seed");
        val->add_option("--report", vo.report_path, "Write the traceability report here");

        std::vector<const char *> argv;
        argv.push_back("starsim");
        for (const auto &a : args)
            argv.push_back(a.c_str());

        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit(e);
        }
        catch (const CLI::CallForVersion &e)
        {
            return app.exit(e);
        }
        catch (const CLI::ParseError &e)
        {
            app.exit(e);
            return 2;
        }

        try
        {
            if (el->parsed())
                return run_element(eo);
            if (pat->parsed())
                return run_pattern(po);
            if (out_cmd->parsed())
                return run_outage(oo);
            if (sca->parsed())
                return run_scaling(so);
            if (val->parsed())
                return run_validate(vo);
        }
        catch (const std::exception &e)
        {
            std::cerr << "starsim: error: " << e.what() << "\n";
            return 1;
        }
        return 2;
    }
}
