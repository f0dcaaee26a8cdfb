// SPDX-License-Identifier: Apache-2.0
//
// afcest: partial-sparse channel estimation for AF relay links
// Copyright (C) 2026 The afcest Authors
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

#include "afcest/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace afcest {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(',');
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

template <class T>
T parse_unsigned(std::string_view s) {
    T v{};
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end) throw PreconditionError("expected a nonnegative integer, got '" + std::string(s) + "'");
    return v;
}

std::string_view name(LambdaRule r) { return r == LambdaRule::fixed ? "fixed" : "theorem1"; }
std::string_view name(TrainingKind t) { return t == TrainingKind::qpsk ? "qpsk" : "gaussian"; }
std::string_view name(BetaRule b) { return b == BetaRule::as_printed ? "printed" : "signal_power"; }

template <class T, class F>
std::string join(const std::vector<T>& v, F&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v[i]);
    }
    return out;
}

} // namespace

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

double parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (s.empty() || r.ec != std::errc() || r.ptr != end) throw PreconditionError("expected a number, got '" + std::string(s) + "'");
    return v;
}

LambdaCoefficients& ExperimentConfig::coefficients(EstimatorKind kind) {
    return const_cast<LambdaCoefficients&>(std::as_const(*this).coefficients(kind));
}

const LambdaCoefficients& ExperimentConfig::coefficients(EstimatorKind kind) const {
    static const LambdaCoefficients none{};
    switch (kind) {
    case EstimatorKind::sel: return sel_coef;
    case EstimatorKind::pel: return pel_coef;
    case EstimatorKind::iel: return iel_coef;
    case EstimatorKind::ls: break;
    }
    return none;
}

void ExperimentConfig::validate() const {
    using detail::require;
    require(l >= 2 && l % 2 == 0, "config: L must be even and at least 2");
    require(l <= n, "config: L must not exceed N");
    require(n >= 2, "config: N must be at least 2");
    require(trials >= 1, "config: trials must be at least 1");
    require(!k_list.empty(), "config: K_list must not be empty");
    for (auto k : k_list) require(k >= 1 && k <= l, "config: every K must lie in [1, L]");
    require(!snr_db_list.empty(), "config: snr_db_list must not be empty");
    for (auto s : snr_db_list) require(!std::isnan(s) && s != -INFINITY, "config: SNR values must be numbers or inf");
    require(!estimators.empty(), "config: estimators must not be empty");
    require(unit_power > 0.0, "config: unit_power must be positive");
    require(support_threshold > 0.0, "config: support_threshold must be positive");
    require(tol > 0.0, "config: tol must be positive");
    require(max_iter >= 1, "config: max_iter must be at least 1");
    for (const auto* c : {&sel_coef, &pel_coef, &iel_coef})
        require(c->sel >= 0.0 && c->pel >= 0.0, "config: lambda coefficients must be nonnegative");
    require(calibration_k >= 1 && calibration_k <= l, "config: calibration_K must lie in [1, L]");
    require(!calibration_grid.empty(), "config: calibration_grid must not be empty");
    for (auto g : calibration_grid) require(g >= 0.0, "config: calibration_grid values must be nonnegative");
    require(ric_order >= 1 && ric_order <= 2 * l - 1, "config: ric_order must lie in [1, 2L-1]");
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    using Setter = std::function<void(std::string_view)>;
    auto coef = [](double& slot) { return [&slot](std::string_view v) { slot = parse_double(v); }; };
    const std::map<std::string, Setter, std::less<>> setters{
        {"N", [&](auto v) { c.n = parse_unsigned<std::size_t>(v); }},
        {"L", [&](auto v) { c.l = parse_unsigned<std::size_t>(v); }},
        {"K_list", [&](auto v) {
             c.k_list.clear();
             for (auto s : split_list(v)) c.k_list.push_back(parse_unsigned<std::size_t>(s));
         }},
        {"snr_db_list", [&](auto v) {
             c.snr_db_list.clear();
             for (auto s : split_list(v)) c.snr_db_list.push_back(parse_double(s));
         }},
        {"trials", [&](auto v) { c.trials = parse_unsigned<std::size_t>(v); }},
        {"master_seed", [&](auto v) { c.master_seed = parse_unsigned<std::uint64_t>(v); }},
        {"estimators", [&](auto v) {
             c.estimators.clear();
             for (auto s : split_list(v)) c.estimators.push_back(parse_estimator(s));
         }},
        {"lambda_rule", [&](auto v) {
             if (v == "fixed") c.lambda_rule = LambdaRule::fixed;
             else if (v == "theorem1") c.lambda_rule = LambdaRule::theorem1;
             else throw PreconditionError("lambda_rule must be fixed or theorem1");
         }},
        {"sel_coef", coef(c.sel_coef.sel)},
        {"pel_coef", coef(c.pel_coef.pel)},
        {"iel_sel_coef", coef(c.iel_coef.sel)},
        {"iel_pel_coef", coef(c.iel_coef.pel)},
        {"training", [&](auto v) {
             if (v == "qpsk") c.training = TrainingKind::qpsk;
             else if (v == "gaussian") c.training = TrainingKind::gaussian;
             else throw PreconditionError("training must be qpsk or gaussian");
         }},
        {"unit_power", [&](auto v) { c.unit_power = parse_double(v); }},
        {"beta_rule", [&](auto v) {
             if (v == "printed") c.beta_rule = BetaRule::as_printed;
             else if (v == "signal_power") c.beta_rule = BetaRule::signal_power;
             else throw PreconditionError("beta_rule must be printed or signal_power");
         }},
        {"support_threshold", [&](auto v) { c.support_threshold = parse_double(v); }},
        {"tol", [&](auto v) { c.tol = parse_double(v); }},
        {"max_iter", [&](auto v) { c.max_iter = static_cast<int>(parse_unsigned<unsigned>(v)); }},
        {"threads", [&](auto v) { c.threads = parse_unsigned<std::size_t>(v); }},
        {"output_path", [&](auto v) { c.output_path = std::string(v); }},
        {"calibration_K", [&](auto v) { c.calibration_k = parse_unsigned<std::size_t>(v); }},
        {"calibration_snr_db", [&](auto v) { c.calibration_snr_db = parse_double(v); }},
        {"calibration_trials", [&](auto v) { c.calibration_trials = parse_unsigned<std::size_t>(v); }},
        {"calibration_grid", [&](auto v) {
             c.calibration_grid.clear();
             for (auto s : split_list(v)) c.calibration_grid.push_back(parse_double(s));
         }},
        {"ric_order", [&](auto v) { c.ric_order = parse_unsigned<std::size_t>(v); }},
        {"ric_budget", [&](auto v) { c.ric_budget = parse_unsigned<std::uint64_t>(v); }},
    };

    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const auto where = "config line " + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) throw PreconditionError(where + "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw PreconditionError(where + "unknown key '" + std::string(key) + "'");
        if (!seen.emplace(key).second) throw PreconditionError(where + "repeated key '" + std::string(key) + "'");
        try {
            it->second(value);
        } catch (const PreconditionError& e) {
            throw PreconditionError(where + std::string(key) + ": " + e.what());
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string to_config_text(const ExperimentConfig& c) {
    auto u = [](auto v) { return std::to_string(v); };
    std::ostringstream o;
    o << "N = " << c.n << '\n'
      << "L = " << c.l << '\n'
      << "K_list = " << join(c.k_list, u) << '\n'
      << "snr_db_list = " << join(c.snr_db_list, format_double) << '\n'
      << "trials = " << c.trials << '\n'
      << "master_seed = " << c.master_seed << '\n'
      << "estimators = " << join(c.estimators, [](EstimatorKind k) { return std::string(to_string(k)); }) << '\n'
      << "lambda_rule = " << name(c.lambda_rule) << '\n'
      << "sel_coef = " << format_double(c.sel_coef.sel) << '\n'
      << "pel_coef = " << format_double(c.pel_coef.pel) << '\n'
      << "iel_sel_coef = " << format_double(c.iel_coef.sel) << '\n'
      << "iel_pel_coef = " << format_double(c.iel_coef.pel) << '\n'
      << "training = " << name(c.training) << '\n'
      << "unit_power = " << format_double(c.unit_power) << '\n'
      << "beta_rule = " << name(c.beta_rule) << '\n'
      << "support_threshold = " << format_double(c.support_threshold) << '\n'
      << "tol = " << format_double(c.tol) << '\n'
      << "max_iter = " << c.max_iter << '\n'
      << "threads = " << c.threads << '\n'
      << "output_path = " << c.output_path << '\n'
      << "calibration_K = " << c.calibration_k << '\n'
      << "calibration_snr_db = " << format_double(c.calibration_snr_db) << '\n'
      << "calibration_trials = " << c.calibration_trials << '\n'
      << "calibration_grid = " << join(c.calibration_grid, format_double) << '\n'
      << "ric_order = " << c.ric_order << '\n'
      << "ric_budget = " << c.ric_budget << '\n';
    return o.str();
}

} // namespace afcest
