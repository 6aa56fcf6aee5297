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

#include "ris_channel/config.hpp"

#include "ris/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ris_cli
{
    namespace
    {
        // Reads typed entries from one JSON object, records the value actually used in the
        // resolved echo and rejects keys nobody asked for.
        class Block
        {
        public:
            Block(const json &src, std::string path, json &out) : src_(src), path_(std::move(path)), out_(out)
            {
                if (!src_.is_object())
                    throw ConfigError(path_.empty() ? "<root>" : path_, "must be an object");
                out_ = json::object();
            }

            std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            bool has(const std::string &key) const { return src_.contains(key); }

            double real(const std::string &key, double fallback)
            {
                double v = fallback;
                if (const json *j = find(key))
                {
                    if (!j->is_number())
                        throw ConfigError(field(key), "must be a number");
                    v = j->get<double>();
                }
                if (!std::isfinite(v))
                    throw ConfigError(field(key), "must be finite");
                out_[key] = v;
                return v;
            }

            std::int64_t integer(const std::string &key, std::int64_t fallback)
            {
                std::int64_t v = fallback;
                if (const json *j = find(key))
                {
                    if (!j->is_number_integer())
                        throw ConfigError(field(key), "must be an integer");
                    v = j->get<std::int64_t>();
                }
                out_[key] = v;
                return v;
            }

            std::uint64_t unsigned_integer(const std::string &key, std::uint64_t fallback)
            {
                std::uint64_t v = fallback;
                if (const json *j = find(key))
                {
                    if (!j->is_number_unsigned())
                        throw ConfigError(field(key), "must be a non-negative integer");
                    v = j->get<std::uint64_t>();
                }
                out_[key] = v;
                return v;
            }

            std::string text(const std::string &key, const std::string &fallback)
            {
                std::string v = fallback;
                if (const json *j = find(key))
                {
                    if (!j->is_string())
                        throw ConfigError(field(key), "must be a string");
                    v = j->get<std::string>();
                }
                out_[key] = v;
                return v;
            }

            std::vector<double> reals(const std::string &key, const std::vector<double> &fallback)
            {
                std::vector<double> v = fallback;
                if (const json *j = find(key))
                {
                    if (!j->is_array() || j->empty())
                        throw ConfigError(field(key), "must be a non-empty array of numbers");
                    v.clear();
                    for (const auto &e : *j)
                    {
                        if (!e.is_number() || !std::isfinite(e.get<double>()))
                            throw ConfigError(field(key), "must be a non-empty array of numbers");
                        v.push_back(e.get<double>());
                    }
                }
                out_[key] = v;
                return v;
            }

            std::vector<std::int64_t> integers(const std::string &key, const std::vector<std::int64_t> &fallback)
            {
                std::vector<std::int64_t> v = fallback;
                if (const json *j = find(key))
                {
                    if (!j->is_array() || j->empty())
                        throw ConfigError(field(key), "must be a non-empty array of integers");
                    v.clear();
                    for (const auto &e : *j)
                    {
                        if (!e.is_number_integer())
                            throw ConfigError(field(key), "must be a non-empty array of integers");
                        v.push_back(e.get<std::int64_t>());
                    }
                }
                out_[key] = v;
                return v;
            }

            /// Nested object; an absent key reads as an empty object.
            Block child(const std::string &key)
            {
                const json *j = find(key);
                return Block(j ? *j : empty_, field(key), out_[key]);
            }

            /// Array of objects. An absent key uses fallback.
            std::vector<json> objects(const std::string &key, const json &fallback)
            {
                const json *j = find(key);
                const json &arr = j ? *j : fallback;
                if (!arr.is_array() || arr.empty())
                    throw ConfigError(field(key), "must be a non-empty array of objects");
                return std::vector<json>(arr.begin(), arr.end());
            }

            json &echo(const std::string &key) { return out_[key]; }

            void finish() const
            {
                for (auto it = src_.begin(); it != src_.end(); ++it)
                    if (!used_.count(it.key()))
                        throw ConfigError(field(it.key()), "unknown key");
            }

        private:
            const json *find(const std::string &key)
            {
                used_.insert(key);
                auto it = src_.find(key);
                return it == src_.end() ? nullptr : &*it;
            }

            inline static const json empty_ = json::object();
            const json &src_;
            std::string path_;
            json &out_;
            std::set<std::string> used_;
        };

        void check(bool ok, const std::string &field, const std::string &what)
        {
            if (!ok)
                throw ConfigError(field, what);
        }

        // Library validation errors carry the parameter name; prefix it with the block path.
        template <class F>
        auto library(const std::string &path, F &&f)
        {
            try
            {
                return f();
            }
            catch (const ris::InvalidArgument &e)
            {
                throw ConfigError(path + "." + e.field(), e.what());
            }
        }

        PhaseControl read_phase_control(Block &b, const std::string &fallback_mode, int fallback_bits)
        {
            const std::string mode = b.text("phase_control", fallback_mode);
            PhaseControl pc;
            if (mode == "continuous")
                return pc;
            if (mode == "random")
            {
                pc.random = true;
                return pc;
            }
            check(mode == "discrete", b.field("phase_control"), "must be one of continuous, discrete, random");
            const auto bits = b.integer("phase_bits", fallback_bits);
            check(bits >= 1 && bits <= 30, b.field("phase_bits"), "must lie in [1, 30]");
            pc.quantization = ris::Quantization::discrete(static_cast<int>(bits));
            return pc;
        }

        int read_count(Block &b, const std::string &key, std::int64_t fallback, std::int64_t lo, std::int64_t hi)
        {
            const auto v = b.integer(key, fallback);
            check(v >= lo && v <= hi, b.field(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return static_cast<int>(v);
        }

        double read_angle(Block &b, const std::string &key, double fallback_deg, double limit_deg)
        {
            const double deg = b.real(key, fallback_deg);
            check(std::abs(deg) < limit_deg, b.field(key), "must lie in (-" + std::to_string(static_cast<int>(limit_deg)) + ", " + std::to_string(static_cast<int>(limit_deg)) + ") degrees");
            return ris::deg_to_rad(deg);
        }

        ris::RisGeometry read_geometry(Block &b, int m_x_default)
        {
            const int m_x = read_count(b, "m_x", m_x_default, 1, 1 << 16);
            const int m_y = read_count(b, "m_y", 1, 1, 1 << 16);
            const double px = b.real("p_x_over_lambda", 0.5);
            const double py = b.real("p_y_over_lambda", 0.5);
            const double lambda = b.real("lambda_c_m", 0.01);
            check(px > 0.0, b.field("p_x_over_lambda"), "must be > 0");
            check(py > 0.0, b.field("p_y_over_lambda"), "must be > 0");
            check(lambda > 0.0, b.field("lambda_c_m"), "must be > 0");
            return ris::RisGeometry(m_x, m_y, px * lambda, py * lambda, lambda);
        }

        PatternJob read_pattern(Block &root)
        {
            PatternJob job;
            Block g = root.child("geometry");
            job.geom = read_geometry(g, 20);
            g.finish();

            Block p = root.child("pattern");
            job.theta_in = read_angle(p, "theta_in_deg", 0.0, 90.0);
            job.theta_target = read_angle(p, "theta_target_deg", 30.0, 90.0);
            const std::string kind = p.text("phase_config", "co-phase");
            check(kind == "co-phase" || kind == "uniform", p.field("phase_config"), "must be co-phase or uniform");
            job.co_phase = kind == "co-phase";
            const auto bits = p.integer("phase_bits", 0);
            check(bits >= 0 && bits <= 30, p.field("phase_bits"), "must lie in [0, 30] (0 = continuous)");
            job.quantization = bits == 0 ? ris::Quantization::continuous() : ris::Quantization::discrete(static_cast<int>(bits));
            job.padding.p = read_count(p, "padding_p", 512, 1, 1 << 14);
            job.padding.q = read_count(p, "padding_q", job.geom.m_y() == 1 ? 1 : 512, 1, 1 << 14);
            check(job.padding.p >= job.geom.m_x(), p.field("padding_p"), "must be >= geometry.m_x");
            check(job.padding.q >= job.geom.m_y(), p.field("padding_q"), "must be >= geometry.m_y");
            p.finish();
            return job;
        }

        EnvelopeJob read_envelope(Block &root)
        {
            EnvelopeJob job;
            Block s = root.child("scenario");
            const int m = read_count(s, "M", 50, 1, 1 << 20);
            const int n = read_count(s, "N", 64, 1, 1 << 20);
            job.k_0_ratio = s.real("k_0_ratio", 3.0);
            check(job.k_0_ratio > 0.0, s.field("k_0_ratio"), "must be > 0");
            const double direct = s.real("total_direct_power", 1.0);
            check(direct > 0.0, s.field("total_direct_power"), "must be > 0");
            job.control = read_phase_control(s, "discrete", 1);
            const double dphi = ris::deg_to_rad(s.real("delta_phi_deg", 0.0));
            job.histogram_bins = read_count(s, "histogram_bins", 60, 1, 100000);
            s.finish();
            job.params = library("scenario", [&]
                                 { return ris::ScenarioParams::from_k0(m, n, job.k_0_ratio, direct / n, job.control.delta(), dphi); });
            return job;
        }

        KeffJob read_keff(Block &root)
        {
            KeffJob job;
            Block s = root.child("scenario");
            job.n = read_count(s, "N", 64, 1, 1 << 20);
            const double direct = s.real("total_direct_power", 1.0);
            check(direct > 0.0, s.field("total_direct_power"), "must be > 0");
            job.omega_d = direct / job.n;
            job.control = read_phase_control(s, "discrete", 1);
            check(!job.control.random, s.field("phase_control"), "random phases have no finite 1/K line");
            s.finish();

            Block w = root.child("sweep");
            for (auto m : w.integers("M", {5, 10, 20, 50, 100}))
            {
                check(m >= 1 && m <= (1 << 20), w.field("M"), "entries must lie in [1, 1048576]");
                job.m_values.push_back(static_cast<int>(m));
            }
            job.k_0_values = w.reals("k_0_ratio", {1, 2, 5, 10, 20, 50, 100});
            for (double k : job.k_0_values)
                check(k > 0.0, w.field("k_0_ratio"), "entries must be > 0");
            check(job.k_0_values.size() >= 2, w.field("k_0_ratio"), "need at least two values for a line fit");
            w.finish();
            return job;
        }

        ris::UserSpec read_user(Block &u, double p_t)
        {
            ris::UserSpec spec;
            spec.theta_out = read_angle(u, "theta_deg", 0.0, 90.0);
            spec.rate_threshold = u.real("sinr_threshold", 1.0);
            check(spec.rate_threshold >= 0.0, u.field("sinr_threshold"), "must be >= 0");
            spec.noma_power = u.real("noma_power", 0.5);
            if (u.has("fdma_power_fraction"))
            {
                const double f = u.real("fdma_power_fraction", 0.5);
                check(f >= 0.0 && f <= 1.0, u.field("fdma_power_fraction"), "must lie in [0, 1]");
                spec.fdma_power = f * p_t;
            }
            u.finish();
            return spec;
        }

        // Multi-access block. K_0, N and direct power may be supplied by the caller (outage command).
        ris::MultiAccessScenario read_multiaccess(Block &ma, const ris::RisGeometry &geom, std::optional<double> k0,
                                                  std::optional<int> n, const json &default_users)
        {
            ris::MultiAccessScenario sc;
            auto &ch = sc.channel;
            ch.geom = geom;
            ch.theta_in = read_angle(ma, "theta_in_deg", 0.0, 90.0);
            ch.k_0_ratio = k0 ? *k0 : ma.real("k_0_ratio", 1.0);
            check(ch.k_0_ratio > 0.0, ma.field("k_0_ratio"), "must be > 0");
            ch.n = n ? *n : read_count(ma, "N", 64, 1, 1 << 20);
            const double direct = ma.real("total_direct_power", 1.0);
            check(direct > 0.0, ma.field("total_direct_power"), "must be > 0");
            ch.omega_d = direct / ch.n;
            const PhaseControl pc = read_phase_control(ma, "continuous", 1);
            check(!pc.random, ma.field("phase_control"), "steering needs continuous or discrete control");
            ch.quantization = pc.quantization;
            sc.theta_target = read_angle(ma, "theta_target_deg", 15.0, 90.0);

            const std::string scheme = ma.text("scheme", "noma");
            const auto parsed = ris::parse_scheme(scheme);
            check(parsed.has_value(), ma.field("scheme"), "must be noma, fdma or tdma");
            sc.scheme = *parsed;
            sc.p_t = 1.0;

            auto users = ma.objects("users", default_users);
            json &echo = ma.echo("users");
            echo = json::array();
            for (std::size_t i = 0; i < users.size(); ++i)
            {
                json out;
                Block u(users[i], ma.field("users[" + std::to_string(i) + "]"), out);
                sc.users.push_back(read_user(u, sc.p_t));
                echo.push_back(out);
            }
            return sc;
        }

        // NOMA feasibility depends only on the ordered allocations and thresholds.
        void check_feasible(const ris::MultiAccessScenario &sc, const std::string &path)
        {
            if (sc.scheme != ris::Scheme::noma)
                return;
            for (std::size_t k = 0; k < sc.users.size(); ++k)
                if (!ris::outage_threshold(k, sc))
                    throw InfeasibleConfig(path + ": NOMA allocation is not decodable for the user at " +
                                           std::to_string(ris::rad_to_deg(sc.users[k].theta_out)) + " deg (a_l - tau_l * sum a_p <= 0)");
        }

        const json &default_pair()
        {
            static const json users = json::parse(R"([{"theta_deg": 15, "sinr_threshold": 1, "noma_power": 0.6},
                                                      {"theta_deg": 33, "sinr_threshold": 1, "noma_power": 0.4}])");
            return users;
        }

        OutageJob read_outage(Block &root)
        {
            OutageJob job;
            Block o = root.child("outage");
            job.snr_db = o.reals("snr_db", {5, 10, 15, 20, 25});
            job.gamma_min_db = o.real("gamma_min_db", 10.0);
            job.k_0_ratio = o.real("k_0_ratio", 1.0);
            check(job.k_0_ratio > 0.0, o.field("k_0_ratio"), "must be > 0");
            job.n = read_count(o, "N", 64, 1, 1 << 20);

            static const json default_curves = json::parse(R"([{"M": 5, "phase_control": "random"},
                                                               {"M": 20, "phase_control": "random"},
                                                               {"M": 10, "phase_control": "discrete", "phase_bits": 1},
                                                               {"M": 15, "phase_control": "discrete", "phase_bits": 1},
                                                               {"M": 20, "phase_control": "discrete", "phase_bits": 1}])");
            auto curves = o.objects("curves", default_curves);
            json &echo = o.echo("curves");
            echo = json::array();
            for (std::size_t i = 0; i < curves.size(); ++i)
            {
                json out;
                Block c(curves[i], o.field("curves[" + std::to_string(i) + "]"), out);
                OutageCurve curve;
                curve.m = read_count(c, "M", 10, 1, 1 << 20);
                curve.control = read_phase_control(c, "discrete", 1);
                c.finish();
                job.curves.push_back(curve);
                echo.push_back(out);
            }

            if (o.has("noma"))
            {
                Block nb = o.child("noma");
                Block g = nb.child("geometry");
                const auto geom = read_geometry(g, 20);
                g.finish();
                auto sc = read_multiaccess(nb, geom, job.k_0_ratio, job.n, default_pair());
                nb.finish();
                check(sc.scheme == ris::Scheme::noma, nb.field("scheme"), "the outage pair must use noma");
                check(sc.users.size() >= 2, nb.field("users"), "need at least two users");
                sc = library("outage.noma", [&]
                             { return ris::order_by_channel(sc); });
                library("outage.noma", [&]
                        { sc.validate(); return 0; });
                check_feasible(sc, "outage.noma");
                job.noma = sc;
            }
            o.finish();
            return job;
        }

        SumRateJob read_sumrate(Block &root)
        {
            SumRateJob job;
            Block g = root.child("geometry");
            const auto geom = read_geometry(g, 20);
            g.finish();

            Block ma = root.child("multiaccess");
            auto sc = read_multiaccess(ma, geom, std::nullopt, std::nullopt, default_pair());
            const double snr_db = ma.real("snr_db", 20.0);
            sc.sigma_sq = sc.p_t * std::pow(10.0, -snr_db / 10.0);
            const double start = ma.real("sweep_start_deg", 0.0);
            const double stop = ma.real("sweep_stop_deg", 50.0);
            const double step = ma.real("sweep_step_deg", 1.0);
            check(step > 0.0, ma.field("sweep_step_deg"), "must be > 0");
            check(stop >= start, ma.field("sweep_stop_deg"), "must be >= sweep_start_deg");
            check(std::abs(start) < 90.0 && std::abs(stop) < 90.0, ma.field("sweep_start_deg"), "sweep must stay inside (-90, 90) degrees");
            ma.finish();
            check(sc.users.size() >= 2, "multiaccess.users", "need at least two users");

            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            check(count <= 100000, ma.field("sweep_step_deg"), "sweep has too many points");
            for (std::size_t i = 0; i < count; ++i)
                job.theta_targets.push_back(ris::deg_to_rad(start + static_cast<double>(i) * step));

            // The NOMA order is re-derived at every sweep angle; check the configured target here.
            ris::MultiAccessScenario ordered = sc;
            ordered.scheme = ris::Scheme::noma;
            ordered = library("multiaccess", [&]
                              { return ris::order_by_channel(ordered); });
            library("multiaccess", [&]
                    { ordered.validate(); return 0; });
            check_feasible(ordered, "multiaccess");
            ris::MultiAccessScenario oma = sc;
            oma.scheme = ris::Scheme::fdma;
            library("multiaccess", [&]
                    { oma.validate(); return 0; });
            job.scenario = sc;
            return job;
        }
    }

    std::string PhaseControl::label() const
    {
        if (random)
            return "random";
        if (quantization.is_continuous())
            return "continuous";
        return std::to_string(quantization.bits()) + "-bit";
    }

    Experiment load_experiment(const std::string &command, const json &config, const Overrides &overrides)
    {
        Experiment ex;
        ex.command = command;
        Block root(config, "", ex.resolved);

        ex.run.seed = root.unsigned_integer("seed", 1);
        if (overrides.seed)
            ex.run.seed = *overrides.seed;
        ex.resolved["seed"] = ex.run.seed;

        const auto trials = root.integer("n_trials", 10000);
        check(trials >= 1, "n_trials", "must be >= 1");
        ex.run.n_trials = overrides.trials ? *overrides.trials : static_cast<std::size_t>(trials);
        check(ex.run.n_trials >= 1 && ex.run.n_trials <= 100000000, "n_trials", "must lie in [1, 1e8]");
        ex.resolved["n_trials"] = ex.run.n_trials;

        ex.run.output_prefix = root.text("output_prefix", "ris_" + command);
        if (overrides.out)
            ex.run.output_prefix = *overrides.out;
        check(!ex.run.output_prefix.empty(), "output_prefix", "must not be empty");
        ex.resolved["output_prefix"] = ex.run.output_prefix;

        if (command == "pattern")
            ex.pattern = read_pattern(root);
        else if (command == "envelope-dist")
            ex.envelope = read_envelope(root);
        else if (command == "keff-sweep")
            ex.keff = read_keff(root);
        else if (command == "outage")
            ex.outage = read_outage(root);
        else if (command == "ma-sumrate")
            ex.sumrate = read_sumrate(root);
        else
            throw ConfigError("command", "unknown command " + command);
        root.finish();
        return ex;
    }

    json read_config_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::ios_base::failure("cannot open config file " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        try
        {
            return json::parse(buf.str());
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
        }
    }
}
