// SPDX-License-Identifier: Apache-2.0
//
// ris-channel: physics-based channel modelling for reconfigurable surfaces
// Copyright (C) 2026 The ris-channel authors
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

#include "ris_channel/commands.hpp"

#include "ris/csv.hpp"
#include "ris/errors.hpp"
#include "ris/radiation.hpp"
#include "ris/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace ris_cli
{
    namespace
    {
        using ris::csv::number;

        // Angle label without round-trip noise, e.g. 15 rather than 14.999999999999998.
        std::string degree_label(double rad)
        {
            std::ostringstream os;
            os.precision(10);
            os << ris::rad_to_deg(rad);
            return os.str();
        }

        std::string csv_path(const Experiment &ex, const std::string &suffix)
        {
            return ex.run.output_prefix + "_" + suffix + ".csv";
        }

        // Every CSV starts with the command, the seed and the fully resolved configuration.
        std::ostringstream csv_stream(const Experiment &ex)
        {
            std::ostringstream os;
            ris::csv::write_comment(os, "ris-channel " + ex.command);
            ris::csv::write_comment(os, "seed=" + std::to_string(ex.run.seed));
            ris::csv::write_comment(os, "config=" + ex.resolved.dump());
            return os;
        }

        std::string gnuplot_header(const std::string &csv_file, const std::string &title)
        {
            const std::string stem = std::filesystem::path(csv_file).stem().string();
            std::ostringstream gp;
            gp << "# gnuplot script for " << std::filesystem::path(csv_file).filename().string() << "\n"
               << "set datafile separator ','\n"
               << "set datafile commentschars '#'\n"
               << "set terminal pngcairo size 960,640\n"
               << "set output '" << stem << ".png'\n"
               << "set title '" << title << "'\n"
               << "set grid\n";
            return gp.str();
        }

        std::string quoted_file(const std::string &csv_file)
        {
            return "'" + std::filesystem::path(csv_file).filename().string() + "'";
        }

        void add_plot(CommandResult &res, bool plot, const std::string &csv_file, const std::string &body)
        {
            if (!plot)
                return;
            std::filesystem::path gp(csv_file);
            gp.replace_extension(".gp");
            res.files.push_back({gp.string(), body});
        }

        // --------------------------------------------------------------------

        CommandResult run_pattern(const Experiment &ex, bool plot)
        {
            const PatternJob &job = *ex.pattern;
            const ris::PhaseConfig config = job.co_phase
                                                ? ris::co_phase_config(job.geom, job.theta_in, job.theta_target, job.quantization)
                                                : ris::PhaseConfig::uniform(job.geom, job.quantization);
            const ris::PatternGrid grid = ris::ris_pattern(job.geom, config, job.theta_in, job.padding);

            CommandResult res;
            const std::string path = csv_path(ex, "pattern");
            auto os = csv_stream(ex);
            ris::write_pattern_csv(os, grid);
            res.files.push_back({path, os.str()});

            const auto [pp, pq] = grid.peak_bin();
            const auto dir = grid.direction(pp, pq);
            std::ostringstream summary;
            summary << "peak bin (" << pp << ", " << pq << ") theta_deg=" << number(ris::rad_to_deg(dir->theta))
                    << " phi_deg=" << number(ris::rad_to_deg(dir->phi))
                    << " magnitude_db=" << number(20.0 * std::log10(std::abs(grid.value(pp, pq)))) << "\n";
            res.summary = summary.str();

            add_plot(res, plot, path,
                     gnuplot_header(path, "Far-field pattern") +
                         "set xlabel 'sin(theta) cos(phi)'\nset ylabel 'magnitude (dB)'\n"
                         "plot " + quoted_file(path) + " using (sin($3*pi/180)*cos($4*pi/180)):7 every ::1 with points pt 7 ps 0.3 notitle\n");
            return res;
        }

        ris::NakagamiParams closed_form_nakagami(const ris::RicianParams &p)
        {
            const double sigma = p.omega_p / (p.k_factor + 1.0);
            return ris::nakagami_m_symmetric({p.omega_p - sigma, sigma});
        }

        CommandResult run_envelope(const Experiment &ex, bool plot)
        {
            const EnvelopeJob &job = *ex.envelope;
            const auto samples = ris::run_trials(job.params, ex.run.n_trials, ex.run.seed);
            const auto mags = ris::magnitudes(samples);
            const auto z = ris::envelopes(samples);

            const ris::RicianParams fitted = ris::fit_rician(mags);
            const ris::SampleMoments moments = ris::sample_moments(z);
            const ris::RicianParams from_moments = ris::estimate_effective_params(moments);
            const ris::RicianParams closed = ris::analytic_params(job.params);
            const double m_sample = ris::nakagami_m_general(moments.mean_tc, moments.mean_ts, moments.var_tc,
                                                            moments.var_ts, moments.cov)
                                        .m;

            CommandResult res;
            {
                auto os = csv_stream(ex);
                ris::write_samples_csv(os, samples);
                res.files.push_back({csv_path(ex, "samples"), os.str()});
            }

            const std::string fit_path = csv_path(ex, "fit");
            {
                auto os = csv_stream(ex);
                ris::csv::write_row(os, {"estimator", "k_factor", "omega_p", "nakagami_m"});
                ris::csv::write_row(os, {"magnitude_moments", number(fitted.k_factor), number(fitted.omega_p), number(closed_form_nakagami(fitted).m)});
                ris::csv::write_row(os, {"complex_moments", number(from_moments.k_factor), number(from_moments.omega_p), number(m_sample)});
                ris::csv::write_row(os, {"closed_form", number(closed.k_factor), number(closed.omega_p), number(closed_form_nakagami(closed).m)});
                res.files.push_back({fit_path, os.str()});
            }

            const std::string hist_path = csv_path(ex, "hist");
            {
                const double hi = *std::max_element(mags.begin(), mags.end()) * (1.0 + 1e-12);
                const auto h = ris::histogram(mags, static_cast<std::size_t>(job.histogram_bins), 0.0, hi > 0.0 ? hi : 1.0);
                auto os = csv_stream(ex);
                ris::csv::write_row(os, {"magnitude", "empirical_density", "fitted_pdf", "closed_form_pdf"});
                const double norm = 1.0 / (static_cast<double>(mags.size()) * h.bin_width());
                for (std::size_t i = 0; i < h.counts.size(); ++i)
                {
                    const double x = h.bin_center(i);
                    ris::csv::write_row(os, {number(x), number(static_cast<double>(h.counts[i]) * norm),
                                             number(ris::rician_pdf(x, fitted)), number(ris::rician_pdf(x, closed))});
                }
                res.files.push_back({hist_path, os.str()});
                add_plot(res, plot, hist_path,
                         gnuplot_header(hist_path, "Envelope distribution, " + job.control.label() + " phases") +
                             "set xlabel 'envelope |R|'\nset ylabel 'density'\n"
                             "plot " + quoted_file(hist_path) + " using 1:2 every ::1 with boxes title 'simulated', \\\n"
                             "     '' using 1:3 every ::1 with lines lw 2 title 'fitted Rician', \\\n"
                             "     '' using 1:4 every ::1 with lines dt 2 lw 2 title 'closed form'\n");
            }

            std::ostringstream summary;
            summary << "fitted K=" << number(fitted.k_factor) << " omega_p=" << number(fitted.omega_p) << "\n"
                    << "complex-moment K=" << number(from_moments.k_factor) << " omega_p=" << number(from_moments.omega_p) << "\n"
                    << "closed-form K=" << number(closed.k_factor) << " omega_p=" << number(closed.omega_p) << "\n";
            res.summary = summary.str();
            return res;
        }

        CommandResult run_keff(const Experiment &ex, bool plot)
        {
            const KeffJob &job = *ex.keff;
            const std::size_t nk = job.k_0_values.size();
            std::vector<double> k_hat(job.m_values.size() * nk);
            for (std::size_t i = 0; i < job.m_values.size(); ++i)
                for (std::size_t j = 0; j < nk; ++j)
                {
                    const std::size_t idx = i * nk + j;
                    const auto params = ris::ScenarioParams::from_k0(job.m_values[i], job.n, job.k_0_values[j], job.omega_d, job.control.delta());
                    const auto samples = ris::run_trials(params, ex.run.n_trials, ris::derive_trial_seed(ex.run.seed, idx));
                    k_hat[idx] = ris::fit_rician(ris::magnitudes(samples)).k_factor;
                }

            CommandResult res;
            const std::string path = csv_path(ex, "keff");
            auto os = csv_stream(ex);
            ris::csv::write_row(os, {"M", "k_0_ratio", "inv_k_0", "k_hat", "inv_k_hat", "k_closed_form", "inv_k_line"});
            auto fit_os = csv_stream(ex);
            ris::csv::write_row(fit_os, {"M", "slope_fit", "intercept_fit", "slope_line", "intercept_line"});
            std::ostringstream summary;
            for (std::size_t i = 0; i < job.m_values.size(); ++i)
            {
                const int m = job.m_values[i];
                const auto line = ris::keff_inverse_line(m, job.control.delta());
                std::vector<double> xs, ys;
                for (std::size_t j = 0; j < nk; ++j)
                {
                    const double k0 = job.k_0_values[j];
                    const double kh = k_hat[i * nk + j];
                    const double inv = kh > 0.0 ? 1.0 / kh : INFINITY;
                    ris::csv::write_row(os, {number(m), number(k0), number(1.0 / k0), number(kh), number(inv),
                                             number(ris::keff_discrete(m, job.control.delta(), k0)),
                                             number(line.slope / k0 + line.intercept)});
                    if (std::isfinite(inv))
                    {
                        xs.push_back(1.0 / k0);
                        ys.push_back(inv);
                    }
                }
                ris::LineFit fit{NAN, NAN};
                if (xs.size() >= 2)
                    fit = ris::fit_line(xs, ys);
                ris::csv::write_row(fit_os, {number(m), number(fit.slope), number(fit.intercept), number(line.slope), number(line.intercept)});
                summary << "M=" << m << " slope fit=" << number(fit.slope) << " line=" << number(line.slope)
                        << " intercept fit=" << number(fit.intercept) << " line=" << number(line.intercept) << "\n";
            }
            res.files.push_back({path, os.str()});
            res.files.push_back({csv_path(ex, "keff_fit"), fit_os.str()});
            res.summary = summary.str();

            std::string body = gnuplot_header(path, "1/K versus 1/K_0") + "set xlabel '1/K_0'\nset ylabel '1/K'\nplot ";
            for (std::size_t i = 0; i < job.m_values.size(); ++i)
            {
                const std::string m = std::to_string(job.m_values[i]);
                body += std::string(i ? ", \\\n     " : "") + quoted_file(path) + " using 3:($1==" + m + "?$5:NaN) every ::1 with points pt 7 title 'M=" + m +
                        " simulated', '' using 3:($1==" + m + "?$7:NaN) every ::1 with lines title 'M=" + m + " line'";
            }
            add_plot(res, plot, path, body + "\n");
            return res;
        }

        double binomial_std_error(double p, std::size_t n)
        {
            return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        }

        CommandResult run_outage(const Experiment &ex, bool plot)
        {
            const OutageJob &job = *ex.outage;
            const double gamma_min = std::pow(10.0, job.gamma_min_db / 10.0);
            const double omega_d = 1.0 / job.n; // N omega_d = 1 sets the SNR scale

            CommandResult res;
            const std::string path = csv_path(ex, "outage");
            auto os = csv_stream(ex);
            ris::csv::write_row(os, {"snr_db", "curve", "M", "phase_control", "mc_outage", "analytic_outage", "mc_std_error"});
            std::vector<std::string> labels;

            for (std::size_t c = 0; c < job.curves.size(); ++c)
            {
                const auto &curve = job.curves[c];
                const auto params = ris::ScenarioParams::from_k0(curve.m, job.n, job.k_0_ratio, omega_d, curve.control.delta());
                const ris::RicianParams closed = ris::analytic_params(params);
                const auto samples = ris::run_trials(params, ex.run.n_trials, ris::derive_trial_seed(ex.run.seed, c));
                const std::string label = "M" + std::to_string(curve.m) + "_" + curve.control.label();
                labels.push_back(label);
                for (double snr_db : job.snr_db)
                {
                    const double mu = gamma_min / std::pow(10.0, snr_db / 10.0);
                    std::size_t fails = 0;
                    for (const auto &s : samples)
                        fails += s.magnitude_sq() < mu ? 1 : 0;
                    const double mc = static_cast<double>(fails) / static_cast<double>(samples.size());
                    ris::csv::write_row(os, {number(snr_db), label, number(curve.m), curve.control.label(), number(mc),
                                             number(ris::outage_probability(closed, mu)), number(binomial_std_error(mc, samples.size()))});
                }
            }

            if (job.noma)
            {
                ris::MultiAccessScenario sc = *job.noma;
                const std::string control = sc.channel.quantization.is_continuous()
                                                ? "continuous"
                                                : std::to_string(sc.channel.quantization.bits()) + "-bit";
                for (std::size_t s = 0; s < job.snr_db.size(); ++s)
                {
                    sc.sigma_sq = sc.p_t * std::pow(10.0, -job.snr_db[s] / 10.0);
                    const auto mc = ris::outage_monte_carlo(sc, ex.run.n_trials, ris::derive_trial_seed(ex.run.seed, 1000 + s));
                    for (std::size_t k = 0; k < sc.users.size(); ++k)
                    {
                        const std::string label = "noma_user_" + degree_label(sc.users[k].theta_out) + "deg";
                        if (s == 0)
                            labels.push_back(label);
                        ris::csv::write_row(os, {number(job.snr_db[s]), label, number(sc.channel.m()), control, number(mc[k]),
                                                 number(ris::user_outage(k, sc)), number(binomial_std_error(mc[k], ex.run.n_trials))});
                    }
                }
            }
            res.files.push_back({path, os.str()});
            res.summary = "wrote " + std::to_string(labels.size()) + " outage curves\n";

            std::string body = gnuplot_header(path, "Outage probability") +
                               "set logscale y\nset xlabel 'P_t / sigma^2 (dB)'\nset ylabel 'outage probability'\nplot ";
            for (std::size_t i = 0; i < labels.size(); ++i)
                body += std::string(i ? ", \\\n     " : "") + quoted_file(path) + " using 1:(strcol(2) eq '" + labels[i] +
                        "' ? $6 : NaN) every ::1 with lines title '" + labels[i] + " analytic', '' using 1:(strcol(2) eq '" + labels[i] +
                        "' ? $5 : NaN) every ::1 with points title '" + labels[i] + " simulated'";
            add_plot(res, plot, path, body + "\n");
            return res;
        }

        CommandResult run_sumrate(const Experiment &ex, bool plot)
        {
            const SumRateJob &job = *ex.sumrate;
            const auto points = ris::sum_rate(job.scenario, job.theta_targets, ex.run.n_trials, ex.run.seed);

            CommandResult res;
            const std::string path = csv_path(ex, "sumrate");
            auto os = csv_stream(ex);
            std::vector<std::string> header{"theta_target_deg", "scheme", "sum_rate_bps_hz"};
            for (std::size_t k = 0; k < job.scenario.users.size(); ++k)
                header.push_back("user" + std::to_string(k + 1) + "_outage");
            for (std::size_t i = 0; i < header.size(); ++i)
                os << (i ? "," : "") << header[i];
            os << "\n";

            std::array<std::size_t, 3> best{};
            for (std::size_t i = 0; i < points.size(); ++i)
                for (std::size_t s = 0; s < ris::all_schemes.size(); ++s)
                {
                    const auto &pt = points[i];
                    os << degree_label(pt.theta_target) << ',' << ris::to_string(ris::all_schemes[s]) << ',' << number(pt.sum_rate[s]);
                    for (double o : pt.user_outage[s])
                        os << ',' << number(o);
                    os << '\n';
                    if (pt.sum_rate[s] > points[best[s]].sum_rate[s])
                        best[s] = i;
                }
            res.files.push_back({path, os.str()});

            std::ostringstream summary;
            for (std::size_t s = 0; s < ris::all_schemes.size(); ++s)
                summary << ris::to_string(ris::all_schemes[s]) << " max sum rate " << number(points[best[s]].sum_rate[s])
                        << " bit/s/Hz at theta_target_deg=" << degree_label(points[best[s]].theta_target) << "\n";
            res.summary = summary.str();

            std::string body = gnuplot_header(path, "Sum rate versus steering angle") +
                               "set xlabel 'target angle (deg)'\nset ylabel 'sum rate (bit/s/Hz)'\nplot ";
            for (std::size_t s = 0; s < ris::all_schemes.size(); ++s)
            {
                const std::string name(ris::to_string(ris::all_schemes[s]));
                body += std::string(s ? ", \\\n     " : "") + quoted_file(path) + " using 1:(strcol(2) eq '" + name +
                        "' ? $3 : NaN) every ::1 with linespoints title '" + name + "'";
            }
            add_plot(res, plot, path, body + "\n");
            return res;
        }
    }

    CommandResult run_experiment(const Experiment &ex, bool plot)
    {
        if (ex.pattern)
            return run_pattern(ex, plot);
        if (ex.envelope)
            return run_envelope(ex, plot);
        if (ex.keff)
            return run_keff(ex, plot);
        if (ex.outage)
            return run_outage(ex, plot);
        if (ex.sumrate)
            return run_sumrate(ex, plot);
        throw ConfigError("command", "nothing to run");
    }

    void write_outputs(const std::vector<OutputFile> &files)
    {
        std::vector<std::string> temps;
        const auto discard = [&]
        {
            std::error_code ec;
            for (const auto &t : temps)
                std::filesystem::remove(t, ec);
        };
        for (const auto &f : files)
        {
            const auto parent = std::filesystem::path(f.path).parent_path();
            std::error_code dir_ec;
            if (!parent.empty())
                std::filesystem::create_directories(parent, dir_ec);
            const std::string tmp = f.path + ".tmp";
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (out)
                temps.push_back(tmp);
            out << f.content;
            out.close();
            if (!out)
            {
                discard();
                throw std::ios_base::failure("cannot write " + f.path);
            }
        }
        for (std::size_t i = 0; i < files.size(); ++i)
        {
            std::error_code ec;
            std::filesystem::rename(temps[i], files[i].path, ec);
            if (ec)
            {
                discard();
                throw std::ios_base::failure("cannot write " + files[i].path + ": " + ec.message());
            }
        }
    }

    int run_cli(const std::string &command, const std::string &config_path, const Overrides &overrides,
                bool plot, std::ostream &out, std::ostream &err)
    {
        Experiment ex;
        try
        {
            ex = load_experiment(command, read_config_file(config_path), overrides);
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config;
        }
        catch (const ris::InvalidArgument &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config;
        }
        catch (const InfeasibleConfig &e)
        {
            err << "infeasible: " << e.what() << "\n";
            return exit_infeasible;
        }
        catch (const std::ios_base::failure &e)
        {
            err << "i/o error: " << e.what() << "\n";
            return exit_io;
        }

        CommandResult result;
        try
        {
            result = run_experiment(ex, plot);
        }
        catch (const ris::InfeasibleError &e)
        {
            err << "infeasible: " << e.what() << "\n";
            return exit_infeasible;
        }
        catch (const ris::InvalidArgument &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config;
        }

        try
        {
            write_outputs(result.files);
        }
        catch (const std::ios_base::failure &e)
        {
            err << "i/o error: " << e.what() << "\n";
            return exit_io;
        }

        out << result.summary;
        for (const auto &f : result.files)
            out << "wrote " << f.path << "\n";
        return exit_ok;
    }
}
