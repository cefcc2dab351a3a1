// SPDX-License-Identifier: Apache-2.0
//
// ra-beamkit: rotatable-antenna array beamforming toolkit
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


#include "ra_beamkit/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace ra_beamkit
{
    using nlohmann::json;

    namespace
    {
        // Checked access to one JSON object; every error names the key path
        class ObjectReader
        {
        public:
            ObjectReader(const json &node, std::string path, std::set<std::string> allowed) : node_(node), path_(std::move(path))
            {
                if (!node_.is_object())
                    throw SchemaError(label() + ": expected an object");
                for (const auto &item : node_.items())
                    if (!allowed.contains(item.key()))
                        throw SchemaError(key_path(item.key()) + ": unknown key");
            }

            std::string key_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            const json *find(const char *key) const
            {
                auto it = node_.find(key);
                return it == node_.end() ? nullptr : &*it;
            }

            void number(const char *key, double &out) const
            {
                if (const json *v = find(key))
                {
                    if (!v->is_number())
                        throw SchemaError(key_path(key) + ": expected a number");
                    out = v->get<double>();
                    if (!std::isfinite(out))
                        throw SchemaError(key_path(key) + ": expected a finite number");
                }
            }

            void positive(const char *key, double &out) const
            {
                number(key, out);
                if (!(out > 0.0))
                    throw SchemaError(key_path(key) + ": must be positive");
            }

            template <typename Int>
            void integer(const char *key, Int &out, long long min_value) const
            {
                if (const json *v = find(key))
                {
                    if (!v->is_number_integer())
                        throw SchemaError(key_path(key) + ": expected an integer");
                    const long long value = v->get<long long>();
                    if (value < min_value)
                        throw SchemaError(key_path(key) + ": must be at least " + std::to_string(min_value));
                    out = static_cast<Int>(value);
                }
            }

            void angles(const char *key, std::vector<double> &out) const
            {
                const json *v = find(key);
                if (!v)
                    return;
                if (!v->is_array())
                    throw SchemaError(key_path(key) + ": expected an array of angles in degrees");
                out.clear();
                for (std::size_t i = 0; i < v->size(); ++i)
                {
                    const json &a = (*v)[i];
                    const std::string where = key_path(key) + "[" + std::to_string(i) + "]";
                    if (!a.is_number())
                        throw SchemaError(where + ": expected a number");
                    const double deg = a.get<double>();
                    if (!(deg >= 0.0 && deg <= 180.0))
                        throw SchemaError(where + ": angle " + format_number(deg) + " is outside [0, 180] degrees");
                    out.push_back(deg);
                }
            }

            std::string label() const { return path_.empty() ? "scenario" : path_; }

        private:
            const json &node_;
            std::string path_;
        };

        template <typename Config>
        void validate_section(const Config &config, const std::string &path)
        {
            try
            {
                config.validate();
            }
            catch (const std::invalid_argument &e)
            {
                throw SchemaError(path + ": " + e.what());
            }
        }

        json number_array(const std::vector<double> &values)
        {
            json out = json::array();
            for (double v : values)
                out.push_back(v);
            return out;
        }

        std::vector<double> read_number_array(const json &doc, const char *key)
        {
            if (!doc.contains(key) || !doc.at(key).is_array())
                throw SchemaError(std::string(key) + ": expected an array of numbers");
            std::vector<double> out;
            for (const auto &v : doc.at(key))
            {
                if (!v.is_number())
                    throw SchemaError(std::string(key) + ": expected an array of numbers");
                out.push_back(v.get<double>());
            }
            return out;
        }
    }

    std::string format_number(double value)
    {
        char buffer[64];
        const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
        return std::string(buffer, result.ptr);
    }

    ScenarioFile parse_scenario(const json &doc)
    {
        ScenarioFile file;
        const ObjectReader top(doc, "",
                               {"num_antennas", "spacing_wavelengths", "pattern", "desired_angles_deg", "interference_angles_deg",
                                "eta_max_db", "schemes", "solver", "seeds", "pattern_sample_step_deg", "random_scenarios"});

        top.integer("num_antennas", file.geometry.num_antennas, 1);
        top.positive("spacing_wavelengths", file.geometry.spacing_wavelengths);

        if (const json *p = top.find("pattern"))
        {
            const ObjectReader pr(*p, "pattern", {"max_gain_dbi", "beamwidth_3db_deg", "sidelobe_limit_db", "front_to_back_db"});
            pr.positive("max_gain_dbi", file.pattern.max_gain_dbi);
            pr.positive("beamwidth_3db_deg", file.pattern.beamwidth_3db_deg);
            pr.positive("sidelobe_limit_db", file.pattern.sidelobe_limit_db);
            pr.positive("front_to_back_db", file.pattern.front_to_back_db);
        }

        top.angles("desired_angles_deg", file.scenario.desired_angles_deg);
        top.angles("interference_angles_deg", file.scenario.interference_angles_deg);
        for (std::size_t i = 0; i < file.scenario.interference_angles_deg.size(); ++i)
        {
            const double a = file.scenario.interference_angles_deg[i];
            for (double d : file.scenario.desired_angles_deg)
                if (a == d)
                    throw SchemaError("interference_angles_deg[" + std::to_string(i) + "]: angle " + format_number(a) +
                                      " is also a desired direction");
        }
        top.number("eta_max_db", file.scenario.eta_max_db);

        if (const json *s = top.find("schemes"))
        {
            if (!s->is_array() || s->empty())
                throw SchemaError("schemes: expected a non-empty array of \"RA\", \"FOA\", \"IA\"");
            file.schemes.clear();
            for (std::size_t i = 0; i < s->size(); ++i)
            {
                const std::string where = "schemes[" + std::to_string(i) + "]";
                if (!(*s)[i].is_string())
                    throw SchemaError(where + ": expected a string");
                Scheme scheme;
                try
                {
                    scheme = parse_scheme((*s)[i].get<std::string>());
                }
                catch (const std::invalid_argument &e)
                {
                    throw SchemaError(where + ": " + e.what());
                }
                for (Scheme existing : file.schemes)
                    if (existing == scheme)
                        throw SchemaError(where + ": duplicate scheme");
                file.schemes.push_back(scheme);
            }
        }

        if (const json *s = top.find("solver"))
        {
            const ObjectReader sr(*s, "solver", {"sca", "pso", "ao"});
            if (const json *sca = sr.find("sca"))
            {
                const ObjectReader r(*sca, "solver.sca", {"delta_threshold", "max_iterations", "subproblem_tolerance"});
                r.positive("delta_threshold", file.solver.sca.delta_threshold);
                r.integer("max_iterations", file.solver.sca.max_iterations, 1);
                r.positive("subproblem_tolerance", file.solver.sca.subproblem_tolerance);
                validate_section(file.solver.sca, "solver.sca");
            }
            if (const json *pso = sr.find("pso"))
            {
                const ObjectReader r(*pso, "solver.pso",
                                     {"num_particles", "max_iterations", "inertia_initial", "inertia_final", "learn_local",
                                      "learn_global", "penalty_factor", "delta_threshold", "stall_patience"});
                auto &c = file.solver.pso;
                r.integer("num_particles", c.num_particles, 1);
                r.integer("max_iterations", c.max_iterations, 1);
                r.positive("inertia_initial", c.inertia_initial);
                r.positive("inertia_final", c.inertia_final);
                r.number("learn_local", c.learn_local);
                r.number("learn_global", c.learn_global);
                r.number("penalty_factor", c.penalty_factor);
                r.positive("delta_threshold", c.delta_threshold);
                r.integer("stall_patience", c.stall_patience, 1);
                validate_section(c, "solver.pso");
            }
            if (const json *ao = sr.find("ao"))
            {
                const ObjectReader r(*ao, "solver.ao", {"delta_threshold", "max_outer_iterations"});
                r.positive("delta_threshold", file.solver.delta_threshold);
                r.integer("max_outer_iterations", file.solver.max_outer_iterations, 1);
            }
        }

        if (const json *s = top.find("seeds"))
        {
            file.seeds.clear();
            if (s->is_number_integer())
            {
                const long long count = s->get<long long>();
                if (count < 1)
                    throw SchemaError("seeds: seed count must be at least 1");
                for (long long i = 1; i <= count; ++i)
                    file.seeds.push_back(static_cast<std::uint64_t>(i));
            }
            else if (s->is_array() && !s->empty())
            {
                for (std::size_t i = 0; i < s->size(); ++i)
                {
                    const json &v = (*s)[i];
                    if (!v.is_number_unsigned())
                        throw SchemaError("seeds[" + std::to_string(i) + "]: expected a non-negative integer");
                    file.seeds.push_back(v.get<std::uint64_t>());
                }
            }
            else
                throw SchemaError("seeds: expected a seed count or a non-empty array of seeds");
        }

        top.positive("pattern_sample_step_deg", file.pattern_sample_step_deg);
        if (file.pattern_sample_step_deg > 180.0)
            throw SchemaError("pattern_sample_step_deg: must not exceed 180");

        if (const json *r = top.find("random_scenarios"))
        {
            const ObjectReader rr(*r, "random_scenarios", {"count", "base_seed", "num_desired", "num_interference"});
            rr.integer("count", file.random_scenarios.count, 1);
            rr.integer("base_seed", file.random_scenarios.base_seed, 0);
            rr.integer("num_desired", file.random_scenarios.num_desired, 1);
            rr.integer("num_interference", file.random_scenarios.num_interference, 0);
        }
        return file;
    }

    void require_directions(const ScenarioFile &file)
    {
        if (file.scenario.desired_angles_deg.empty())
            throw SchemaError("desired_angles_deg: at least one desired direction is required");
    }

    ScenarioFile load_scenario_file(const std::filesystem::path &path)
    {
        const json doc = read_json_file(path);
        return parse_scenario(doc);
    }

    json scenario_to_json(const ScenarioFile &file)
    {
        json schemes = json::array();
        for (Scheme s : file.schemes)
            schemes.push_back(to_string(s));
        const auto &sca = file.solver.sca;
        const auto &pso = file.solver.pso;
        return {
            {"num_antennas", file.geometry.num_antennas},
            {"spacing_wavelengths", file.geometry.spacing_wavelengths},
            {"pattern",
             {{"max_gain_dbi", file.pattern.max_gain_dbi},
              {"beamwidth_3db_deg", file.pattern.beamwidth_3db_deg},
              {"sidelobe_limit_db", file.pattern.sidelobe_limit_db},
              {"front_to_back_db", file.pattern.front_to_back_db}}},
            {"desired_angles_deg", number_array(file.scenario.desired_angles_deg)},
            {"interference_angles_deg", number_array(file.scenario.interference_angles_deg)},
            {"eta_max_db", file.scenario.eta_max_db},
            {"schemes", schemes},
            {"solver",
             {{"sca", {{"delta_threshold", sca.delta_threshold}, {"max_iterations", sca.max_iterations}, {"subproblem_tolerance", sca.subproblem_tolerance}}},
              {"pso",
               {{"num_particles", pso.num_particles},
                {"max_iterations", pso.max_iterations},
                {"inertia_initial", pso.inertia_initial},
                {"inertia_final", pso.inertia_final},
                {"learn_local", pso.learn_local},
                {"learn_global", pso.learn_global},
                {"penalty_factor", pso.penalty_factor},
                {"delta_threshold", pso.delta_threshold},
                {"stall_patience", pso.stall_patience}}},
              {"ao", {{"delta_threshold", file.solver.delta_threshold}, {"max_outer_iterations", file.solver.max_outer_iterations}}}}},
            {"seeds", file.seeds},
            {"pattern_sample_step_deg", file.pattern_sample_step_deg},
            {"random_scenarios",
             {{"count", file.random_scenarios.count},
              {"base_seed", file.random_scenarios.base_seed},
              {"num_desired", file.random_scenarios.num_desired},
              {"num_interference", file.random_scenarios.num_interference}}},
        };
    }

    std::vector<PatternSample> sample_pattern(const ArrayModel &model, const BeamformerState &state, double step_deg)
    {
        if (!(step_deg > 0.0))
            throw std::invalid_argument("sample_pattern: step must be positive");
        std::vector<PatternSample> out;
        const auto count = static_cast<long long>(std::floor(180.0 / step_deg + 1e-9));
        for (long long i = 0; i <= count; ++i)
        {
            // Snap to a 1e-9 degree grid so that 0.1-degree steps print as written
            const double psi = std::round(static_cast<double>(i) * step_deg * 1e9) / 1e9;
            const double g = model.gain(state, psi);
            out.push_back({psi, g, linear_to_db(g)});
        }
        if (out.back().psi_deg < 180.0)
        {
            const double g = model.gain(state, 180.0);
            out.push_back({180.0, g, linear_to_db(g)});
        }
        return out;
    }

    void write_pattern_csv(std::ostream &os, const std::vector<PatternSample> &samples)
    {
        os << "psi_deg,gain_linear,gain_db\n";
        for (const auto &s : samples)
            os << format_number(s.psi_deg) << ',' << format_number(s.gain_linear) << ',' << format_number(s.gain_db) << '\n';
    }

    json report_to_json(const RunReport &report, double full_gain)
    {
        const auto &w = report.final_state.weights;
        std::vector<double> re(static_cast<std::size_t>(w.size())), im(static_cast<std::size_t>(w.size()));
        for (Eigen::Index n = 0; n < w.size(); ++n)
        {
            re[static_cast<std::size_t>(n)] = w[n].real();
            im[static_cast<std::size_t>(n)] = w[n].imag();
        }
        const auto &r = report.final_state.rotations_deg;
        return {
            {"scheme", to_string(report.scheme)},
            {"seed", report.seed},
            {"min_desired_gain", report.min_desired_gain},
            {"min_desired_gain_db", linear_to_db(report.min_desired_gain)},
            {"fraction_of_full_gain", full_gain > 0.0 ? report.min_desired_gain / full_gain : 0.0},
            {"max_interference_gain", report.max_interference_gain},
            {"desired_gains", report.desired_gains},
            {"interference_gains", report.interference_gains},
            {"objective_history", report.objective_history},
            {"outer_iterations", report.outer_iterations},
            {"converged", report.converged},
            {"final_state",
             {{"weights_re", re}, {"weights_im", im}, {"rotations_deg", std::vector<double>(r.data(), r.data() + r.size())}}},
        };
    }

    std::pair<Scheme, BeamformerState> state_from_report(const json &doc)
    {
        if (!doc.is_object() || !doc.contains("final_state") || !doc.at("final_state").is_object())
            throw SchemaError("final_state: missing from report");
        if (!doc.contains("scheme") || !doc.at("scheme").is_string())
            throw SchemaError("scheme: missing from report");
        Scheme scheme;
        try
        {
            scheme = parse_scheme(doc.at("scheme").get<std::string>());
        }
        catch (const std::invalid_argument &e)
        {
            throw SchemaError(std::string("scheme: ") + e.what());
        }
        const json &fs = doc.at("final_state");
        const auto re = read_number_array(fs, "weights_re");
        const auto im = read_number_array(fs, "weights_im");
        const auto rot = read_number_array(fs, "rotations_deg");
        if (re.size() != im.size() || re.size() != rot.size() || re.empty())
            throw SchemaError("final_state: weights_re, weights_im and rotations_deg must have equal non-zero length");
        BeamformerState state;
        state.weights.resize(static_cast<Eigen::Index>(re.size()));
        state.rotations_deg.resize(static_cast<Eigen::Index>(re.size()));
        for (std::size_t n = 0; n < re.size(); ++n)
        {
            state.weights[static_cast<Eigen::Index>(n)] = {re[n], im[n]};
            state.rotations_deg[static_cast<Eigen::Index>(n)] = rot[n];
        }
        return {scheme, state};
    }

    json read_json_file(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open " + path.string());
        std::stringstream buffer;
        buffer << in.rdbuf();
        if (in.bad())
            throw IoError("cannot read " + path.string());
        try
        {
            return json::parse(buffer.str());
        }
        catch (const json::parse_error &e)
        {
            throw SchemaError(path.string() + ": invalid JSON: " + e.what());
        }
    }

    void write_text_file(const std::filesystem::path &path, const std::string &content)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + path.string() + " for writing");
        out << content;
        out.flush();
        if (!out)
            throw IoError("cannot write " + path.string());
    }
}
