//------------------------------------------------------------------------------
//
//   Copyright 2026 The qbsc Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "qbsc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qbsc/photon_sim.hpp"
#include "qbsc/protocol.hpp"
#include "qbsc/security.hpp"

namespace qbsc {

namespace {

using nlohmann::json;

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "csv") return OutputFormat::Csv;
  return OutputFormat::Json;
}

// Shortest representation that parses back to the identical double.
std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

// Fixed-point with the fraction truncated, not rounded: the reference table
// this reproduces truncates its entries (2.58686 prints as 2.586).
std::string fixed_truncated(double value, int decimals) {
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) scale *= 10.0;
  const auto scaled = static_cast<long long>(std::floor(value * scale));
  const auto whole = scaled / static_cast<long long>(scale);
  const auto fraction = scaled % static_cast<long long>(scale);
  std::ostringstream text;
  text << whole << '.' << std::setw(decimals) << std::setfill('0') << fraction;
  return text.str();
}

// p_b shrinks by orders of magnitude across the table; small entries get a
// fourth decimal so they stay distinguishable from zero.
std::string format_pb_percent(double pb_percent) {
  return fixed_truncated(pb_percent, pb_percent >= 0.0015 ? 3 : 4);
}

json report_to_json(const SecurityReport& row) {
  json entry;
  entry["M"] = row.states;
  entry["mean_photons"] = row.mean_photons;
  entry["p_a"] = row.alice_cheat_prob;
  entry["p_b"] = row.brute_force_prob;
  entry["qcm_secure"] = row.qcm_secure;
  entry["worst_N"] = row.worst_split ? json(*row.worst_split) : json(nullptr);
  return entry;
}

void write_report_csv_row(std::ostream& out, const SecurityReport& row) {
  out << row.states << ',' << format_double(row.mean_photons) << ','
      << format_double(row.alice_cheat_prob) << ','
      << format_double(row.brute_force_prob) << ','
      << (row.qcm_secure ? 1 : 0) << ',';
  if (row.worst_split) out << *row.worst_split;
  out << '\n';
}

void render_table(std::ostream& out, const std::vector<SecurityReport>& rows,
                  OutputFormat format, double target_overlap,
                  double efficiency) {
  switch (format) {
    case OutputFormat::Table:
      out << std::setw(3) << "M" << std::setw(9) << "<n>" << std::setw(10)
          << "p_a (%)" << std::setw(10) << "p_b (%)" << std::setw(5) << "qcm"
          << '\n';
      for (const auto& row : rows) {
        out << std::setw(3) << row.states << std::setw(9)
            << fixed_truncated(row.mean_photons, 3) << std::setw(10)
            << fixed_truncated(row.alice_cheat_prob * 100.0, 3) << std::setw(10)
            << format_pb_percent(row.brute_force_prob * 100.0) << std::setw(5)
            << (row.qcm_secure ? 1 : 0) << '\n';
      }
      break;
    case OutputFormat::Csv:
      out << "M,mean_photons,p_a,p_b,qcm_secure,worst_N\n";
      for (const auto& row : rows) write_report_csv_row(out, row);
      break;
    case OutputFormat::Json: {
      json document;
      document["rs1"] = target_overlap;
      document["mu"] = efficiency;
      document["rows"] = json::array();
      for (const auto& row : rows) document["rows"].push_back(report_to_json(row));
      out << document.dump() << '\n';
      break;
    }
  }
}

struct ValidationCheck {
  std::string metric;
  double closed_form = 0.0;
  McEstimate estimate;

  double z_score() const {
    const double se = estimate.std_error();
    if (se == 0.0) return estimate.rate() == closed_form ? 0.0 : HUGE_VAL;
    return (estimate.rate() - closed_form) / se;
  }
  bool passes() const { return std::abs(z_score()) <= 3.0; }
};

void render_validation(std::ostream& out,
                       const std::vector<ValidationCheck>& checks,
                       OutputFormat format) {
  switch (format) {
    case OutputFormat::Table:
      out << std::left << std::setw(15) << "metric" << std::right
          << std::setw(22) << "closed_form" << std::setw(22) << "monte_carlo"
          << std::setw(14) << "std_error" << std::setw(8) << "z"
          << std::setw(8) << "result" << '\n';
      for (const auto& check : checks) {
        std::ostringstream z;
        z << std::fixed << std::setprecision(2) << check.z_score();
        out << std::left << std::setw(15) << check.metric << std::right
            << std::setw(22) << format_double(check.closed_form)
            << std::setw(22) << format_double(check.estimate.rate())
            << std::setw(14) << format_double(check.estimate.std_error())
            << std::setw(8) << z.str() << std::setw(8)
            << (check.passes() ? "PASS" : "FAIL") << '\n';
      }
      break;
    case OutputFormat::Csv:
      out << "metric,closed_form,monte_carlo,std_error,z,pass\n";
      for (const auto& check : checks) {
        out << check.metric << ',' << format_double(check.closed_form) << ','
            << format_double(check.estimate.rate()) << ','
            << format_double(check.estimate.std_error()) << ','
            << format_double(check.z_score()) << ','
            << (check.passes() ? 1 : 0) << '\n';
      }
      break;
    case OutputFormat::Json: {
      json document = json::array();
      for (const auto& check : checks) {
        document.push_back({{"metric", check.metric},
                            {"closed_form", check.closed_form},
                            {"monte_carlo", check.estimate.rate()},
                            {"std_error", check.estimate.std_error()},
                            {"z", check.z_score()},
                            {"pass", check.passes()}});
      }
      out << document.dump() << '\n';
      break;
    }
  }
}

// Writes through to `fallback` unless --out was given.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw std::runtime_error("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("QBSC_SEED")) {
    std::uint64_t value = 0;
    const char* end = env + std::string_view(env).size();
    const auto result = std::from_chars(env, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
      throw CLI::ValidationError("QBSC_SEED",
                                 "must be an unsigned 64-bit integer");
    }
    return value;
  }
  return 1;
}

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t consumed = 0;
    values.push_back(std::stod(item, &consumed));
    if (consumed != item.size()) {
      throw std::invalid_argument("bad number in value list: " + item);
    }
  }
  return values;
}

Strategy parse_strategy(const std::string& name, double factor) {
  if (name == "honest") return Strategy::honest();
  if (name == "neighbor-cheat") return Strategy::neighbor_cheat();
  return Strategy::underpower(factor);
}

int cmd_table(double rs1, double mu, int m_min, int m_max,
              OutputFormat format, const std::string& out_path,
              std::ostream& out) {
  OutputTarget target(out_path, out);
  render_table(target.stream(), security_table(rs1, mu, m_min, m_max), format,
               rs1, mu);
  return kExitOk;
}

int cmd_validate(int m, double rs1, double mu, std::uint64_t trials,
                 std::uint64_t seed, OutputFormat format,
                 const std::string& out_path, std::ostream& out) {
  const auto params = ProtocolParams::uniform(m, rs1, mu);
  const SimConfig cfg{.trials = trials, .seed = seed};

  std::vector<ValidationCheck> checks;
  checks.push_back({"p_b", brute_force_probability(params),
                    simulate_brute_force_attack(params, cfg)});
  checks.push_back({"p_a", alice_cheat_probability(params),
                    simulate_cheating_alice(params, cfg)});
  const double honest_accept = -std::expm1(-mu * params.mean_photons());
  checks.push_back({"honest_accept", honest_accept,
                    simulate_honest_verification(params, 0, cfg).accept});

  OutputTarget target(out_path, out);
  render_validation(target.stream(), checks, format);
  const bool all_pass =
      std::all_of(checks.begin(), checks.end(),
                  [](const ValidationCheck& c) { return c.passes(); });
  return all_pass ? kExitOk : kExitValidationFailed;
}

int cmd_session(int m, double rs1, double mu, int choice,
                const Strategy& strategy, std::uint64_t seed,
                const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  const auto params = ProtocolParams::uniform(m, rs1, mu);
  const auto outcome =
      run_session(params, strategy, choice, SimConfig{.trials = 1, .seed = seed});

  OutputTarget target(out_path, out);
  write_transcript(target.stream(), outcome.transcript);
  err << "verdict: " << to_string(outcome.verdict.reason) << '\n';
  return outcome.verdict.accepted ? kExitOk : kExitSessionRejected;
}

int cmd_sweep(const std::string& param, const std::string& values_csv, int m,
              double rs1, double mu, OutputFormat format,
              const std::string& out_path, std::ostream& out) {
  const std::vector<double> values = parse_value_list(values_csv);
  if (values.empty()) {
    throw CLI::ValidationError("--values", "needs at least one value");
  }

  struct SweepRow {
    double rs1;
    double mu;
    SecurityReport report;
  };
  std::vector<SweepRow> rows;
  for (double value : values) {
    double row_rs1 = rs1;
    double row_mu = mu;
    int row_m = m;
    if (param == "rs1") {
      row_rs1 = value;
    } else if (param == "mu") {
      row_mu = value;
    } else {
      row_m = static_cast<int>(value);
      if (static_cast<double>(row_m) != value || row_m < 2 || row_m > 64) {
        throw CLI::ValidationError("--values",
                                   "M values must be integers in [2, 64]");
      }
    }
    const auto params = ProtocolParams::uniform(row_m, row_rs1, row_mu);
    auto [secure, worst] = qcm_secure(params);
    rows.push_back(SweepRow{
        row_rs1, row_mu,
        SecurityReport{.states = row_m,
                       .mean_photons = params.mean_photons(),
                       .alice_cheat_prob = alice_cheat_probability(params),
                       .brute_force_prob = brute_force_probability(params),
                       .qcm_secure = secure,
                       .worst_split = worst}});
  }

  OutputTarget target(out_path, out);
  std::ostream& os = target.stream();
  switch (format) {
    case OutputFormat::Table:
      os << std::left << std::setw(10) << "rs1" << std::setw(10) << "mu"
         << std::right << std::setw(4) << "M" << std::setw(12) << "<n>"
         << std::setw(10) << "p_a (%)" << std::setw(10) << "p_b (%)"
         << std::setw(5) << "qcm" << '\n';
      for (const auto& row : rows) {
        os << std::left << std::setw(10) << format_double(row.rs1)
           << std::setw(10) << format_double(row.mu) << std::right
           << std::setw(4) << row.report.states << std::setw(12)
           << fixed_truncated(row.report.mean_photons, 3) << std::setw(10)
           << fixed_truncated(row.report.alice_cheat_prob * 100.0, 3)
           << std::setw(10)
           << format_pb_percent(row.report.brute_force_prob * 100.0)
           << std::setw(5) << (row.report.qcm_secure ? 1 : 0) << '\n';
      }
      break;
    case OutputFormat::Csv:
      os << "rs1,mu,M,mean_photons,p_a,p_b,qcm_secure,worst_N\n";
      for (const auto& row : rows) {
        os << format_double(row.rs1) << ',' << format_double(row.mu) << ',';
        write_report_csv_row(os, row.report);
      }
      break;
    case OutputFormat::Json: {
      json document = json::array();
      for (const auto& row : rows) {
        json entry = report_to_json(row.report);
        entry["rs1"] = row.rs1;
        entry["mu"] = row.mu;
        document.push_back(entry);
      }
      os << document.dump() << '\n';
      break;
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Bit-string commitment on polarized mesoscopic coherent "
               "states: security tables, Monte Carlo validation, and "
               "protocol sessions"};
  app.name("qbsc");
  app.require_subcommand(1);

  double rs1 = 0.5;
  double mu = 0.75;
  int m = 2;
  int m_min = 2;
  int m_max = 12;
  int choice = 0;
  std::uint64_t trials = 1'000'000;
  std::optional<std::uint64_t> seed_flag;
  std::string format_name = "table";
  std::string out_path;
  std::string strategy_name = "honest";
  double underpower_factor = 0.5;
  std::string sweep_param;
  std::string sweep_values;

  const auto rs1_validator = CLI::Range(1e-12, 1.0 - 1e-12);
  const auto mu_validator = CLI::Range(1e-12, 1.0);

  auto* table = app.add_subcommand("table", "Security report per constellation size");
  table->add_option("--rs1", rs1, "Neighbor overlap target")->check(rs1_validator);
  table->add_option("--mu", mu, "Main detector efficiency")->check(mu_validator);
  table->add_option("--m-min", m_min, "Smallest constellation size")->check(CLI::Range(2, 64));
  table->add_option("--m-max", m_max, "Largest constellation size")->check(CLI::Range(2, 64));
  table->add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  table->add_option("--out", out_path, "Write output to a file");

  auto* validate = app.add_subcommand(
      "validate", "Monte Carlo cross-check of the closed-form metrics");
  validate->add_option("--m", m, "Constellation size")->check(CLI::Range(2, 64));
  validate->add_option("--rs1", rs1, "Neighbor overlap target")->check(rs1_validator);
  validate->add_option("--mu", mu, "Main detector efficiency")->check(mu_validator);
  validate->add_option("--trials", trials, "Monte Carlo trials (>= 10000)")
      ->check(CLI::Range(std::uint64_t{10'000}, std::uint64_t{1'000'000'000}));
  validate->add_option("--seed", seed_flag, "RNG seed (falls back to QBSC_SEED)");
  validate->add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  validate->add_option("--out", out_path, "Write output to a file");

  auto* session = app.add_subcommand("session", "Run one commit/reveal session");
  session->add_option("--m", m, "Constellation size")->check(CLI::Range(2, 64));
  session->add_option("--rs1", rs1, "Neighbor overlap target")->check(rs1_validator);
  session->add_option("--mu", mu, "Main detector efficiency")->check(mu_validator);
  session->add_option("--choice", choice, "Alice's committed state index")
      ->check(CLI::Range(0, 63));
  session->add_option("--strategy", strategy_name, "Alice's strategy")
      ->check(CLI::IsMember({"honest", "neighbor-cheat", "underpower"}));
  session->add_option("--factor", underpower_factor,
                      "Underpower scale in (0, 1)");
  session->add_option("--seed", seed_flag, "RNG seed (falls back to QBSC_SEED)");
  session->add_option("--out", out_path, "Transcript path (JSON Lines)");

  auto* sweep = app.add_subcommand("sweep", "Security metrics across one parameter");
  sweep->add_option("--param", sweep_param, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"rs1", "mu", "m"}));
  sweep->add_option("--values", sweep_values, "Comma-separated sweep values")
      ->required();
  sweep->add_option("--m", m, "Fixed constellation size")->check(CLI::Range(2, 64));
  sweep->add_option("--rs1", rs1, "Fixed neighbor overlap target")->check(rs1_validator);
  sweep->add_option("--mu", mu, "Fixed detector efficiency")->check(mu_validator);
  sweep->add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  sweep->add_option("--out", out_path, "Write output to a file");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qbsc");
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (table->parsed()) {
      if (m_min > m_max) {
        throw CLI::ValidationError("--m-min", "must not exceed --m-max");
      }
      return cmd_table(rs1, mu, m_min, m_max, parse_format(format_name),
                       out_path, out);
    }
    if (validate->parsed()) {
      return cmd_validate(m, rs1, mu, trials, resolve_seed(seed_flag),
                          parse_format(format_name), out_path, out);
    }
    if (session->parsed()) {
      return cmd_session(m, rs1, mu, choice,
                         parse_strategy(strategy_name, underpower_factor),
                         resolve_seed(seed_flag), out_path, out, err);
    }
    return cmd_sweep(sweep_param, sweep_values, m, rs1, mu,
                     parse_format(format_name), out_path, out);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace qbsc
