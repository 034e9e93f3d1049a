// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netgame/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace netgame {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

double parse_double(const std::string& path, int line, int column, const std::string& token) {
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, column, "expected a number, got '" + token + "'");
  }
}

long parse_long(const std::string& path, int line, int column, const std::string& token) {
  try {
    std::size_t used = 0;
    long v = std::stol(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, column, "expected an integer, got '" + token + "'");
  }
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, 0, 0, e.what());
  }
}

json theta_to_json(const Theta& theta) {
  return json{{"theta0", theta.theta0}, {"theta1", theta.theta1}, {"theta2", theta.theta2},
              {"theta3", theta.theta3}, {"theta4", theta.theta4}, {"theta5", theta.theta5},
              {"theta6", theta.theta6}};
}

Theta theta_from_json(const json& j, const std::string& path) {
  Theta theta;
  try {
    theta.theta0 = j.at("theta0").get<double>();
    theta.theta1 = j.value("theta1", 0.0);
    theta.theta2 = j.value("theta2", std::vector<double>{});
    theta.theta3 = j.value("theta3", std::vector<double>{});
    theta.theta4 = j.value("theta4", 0.0);
    theta.theta5 = j.value("theta5", 0.0);
    theta.theta6 = j.value("theta6", 0.0);
  } catch (const json::exception& e) {
    throw ParseError(path, 0, 0, std::string("theta config: ") + e.what());
  }
  if (theta.theta3.empty()) theta.theta3.assign(theta.theta2.size(), 0.0);
  theta.validate();
  return theta;
}

json profile_json(const CcpProfile& profile) { return json(profile.sigma); }

}  // namespace

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

Network load_network(const std::string& path, bool directed) {
  auto lines = read_lines(path);
  int first_content = -1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!trim(lines[i]).empty()) {
      first_content = static_cast<int>(i);
      break;
    }
  }
  if (first_content < 0) throw ParseError(path, 1, 1, "network file is empty");

  std::string head = trim(lines[first_content]);
  if (split_fields(head) == std::vector<std::string>{"src", "dst"}) {
    // Edge list. Size is one past the largest endpoint.
    std::vector<std::pair<int, int>> edges;
    int n = 0;
    for (std::size_t i = first_content + 1; i < lines.size(); ++i) {
      std::string line = trim(lines[i]);
      if (line.empty()) continue;
      auto fields = split_fields(line);
      if (fields.size() != 2)
        throw ParseError(path, static_cast<int>(i) + 1, 1, "edge rows need exactly src,dst");
      int src = static_cast<int>(parse_long(path, static_cast<int>(i) + 1, 1, fields[0]));
      int dst = static_cast<int>(parse_long(path, static_cast<int>(i) + 1, 2, fields[1]));
      if (src < 0 || dst < 0)
        throw ParseError(path, static_cast<int>(i) + 1, 1, "unit ids must be nonnegative");
      edges.emplace_back(src, dst);
      n = std::max({n, src + 1, dst + 1});
    }
    return Network(n, edges, directed);
  }

  // Dense 0/1 matrix, whitespace- or comma-separated, no header.
  std::vector<std::vector<int>> adjacency;
  for (std::size_t i = first_content; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream row_in(line);
    std::vector<int> row;
    std::string token;
    int column = 1;
    while (row_in >> token) {
      long v = parse_long(path, static_cast<int>(i) + 1, column, token);
      if (v != 0 && v != 1)
        throw ParseError(path, static_cast<int>(i) + 1, column, "matrix entries must be 0 or 1");
      row.push_back(static_cast<int>(v));
      ++column;
    }
    adjacency.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < adjacency.size(); ++i)
    if (adjacency[i].size() != adjacency.size())
      throw ParseError(path, static_cast<int>(first_content + i) + 1, 1,
                       "adjacency matrix must be square");
  return Network::from_dense(adjacency, directed);
}

Covariates load_covariates(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty()) throw ParseError(path, 1, 1, "covariate file is empty");
  auto header = split_fields(trim(lines[0]));
  if (header.size() < 1 || header[0] != "unit_id")
    throw ParseError(path, 1, 1, "covariate header must start with unit_id");
  int k = static_cast<int>(header.size()) - 1;

  std::vector<std::pair<int, std::vector<double>>> rows;
  int max_id = -1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != k + 1)
      throw ParseError(path, static_cast<int>(i) + 1, 1,
                       "expected " + std::to_string(k + 1) + " fields");
    int id = static_cast<int>(parse_long(path, static_cast<int>(i) + 1, 1, fields[0]));
    std::vector<double> x(k);
    for (int c = 0; c < k; ++c)
      x[c] = parse_double(path, static_cast<int>(i) + 1, c + 2, fields[c + 1]);
    rows.emplace_back(id, std::move(x));
    max_id = std::max(max_id, id);
  }
  int n = max_id + 1;
  if (static_cast<int>(rows.size()) != n)
    throw DimensionMismatch(path + ": unit ids must cover 0.." + std::to_string(n - 1) +
                            " exactly once");
  std::vector<double> data(static_cast<std::size_t>(n) * k, 0.0);
  std::vector<bool> seen(n, false);
  for (auto& [id, x] : rows) {
    if (id < 0 || id >= n || seen[id])
      throw DimensionMismatch(path + ": duplicate or out-of-range unit id " + std::to_string(id));
    seen[id] = true;
    for (int c = 0; c < k; ++c) data[static_cast<std::size_t>(id) * k + c] = x[c];
  }
  return Covariates(n, k, std::move(data));
}

ThetaConfig load_theta_config(const std::string& path) {
  json j = parse_json_file(path);
  ThetaConfig config;
  config.theta = theta_from_json(j, path);
  config.shock = shock_kind_from_string(j.value("shock", std::string("logistic")));
  return config;
}

std::string theta_config_json(const ThetaConfig& config) {
  json j = theta_to_json(config.theta);
  j["shock"] = to_string(config.shock);
  return j.dump(2) + "\n";
}

Allocation load_allocation(const std::string& path, int n, int kappa) {
  auto lines = read_lines(path);
  if (lines.empty()) throw ParseError(path, 1, 1, "allocation file is empty");
  if (split_fields(trim(lines[0])) != std::vector<std::string>{"unit_id", "d"})
    throw ParseError(path, 1, 1, "allocation header must be unit_id,d");
  std::vector<std::uint8_t> d(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 2)
      throw ParseError(path, static_cast<int>(i) + 1, 1, "expected unit_id,d");
    int id = static_cast<int>(parse_long(path, static_cast<int>(i) + 1, 1, fields[0]));
    long v = parse_long(path, static_cast<int>(i) + 1, 2, fields[1]);
    if (id < 0 || id >= n)
      throw DimensionMismatch(path + ": unit id " + std::to_string(id) +
                              " outside the network of size " + std::to_string(n));
    if (seen[id]) throw DimensionMismatch(path + ": duplicate unit id " + std::to_string(id));
    if (v != 0 && v != 1)
      throw ParseError(path, static_cast<int>(i) + 1, 2, "treatment must be 0 or 1");
    seen[id] = true;
    d[id] = static_cast<std::uint8_t>(v);
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i]) throw DimensionMismatch(path + ": missing unit id " + std::to_string(i));
  Allocation alloc{std::move(d), 0};
  alloc.kappa = kappa < 0 ? alloc.treated_count() : kappa;
  alloc.validate(n);
  return alloc;
}

CcpProfile load_ccp(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty()) throw ParseError(path, 1, 1, "ccp file is empty");
  if (split_fields(trim(lines[0])) != std::vector<std::string>{"unit_id", "sigma"})
    throw ParseError(path, 1, 1, "ccp header must be unit_id,sigma");
  std::vector<std::pair<int, double>> rows;
  int max_id = -1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 2)
      throw ParseError(path, static_cast<int>(i) + 1, 1, "expected unit_id,sigma");
    int id = static_cast<int>(parse_long(path, static_cast<int>(i) + 1, 1, fields[0]));
    double v = parse_double(path, static_cast<int>(i) + 1, 2, fields[1]);
    rows.emplace_back(id, v);
    max_id = std::max(max_id, id);
  }
  CcpProfile profile;
  profile.sigma.assign(max_id + 1, -1.0);
  for (auto [id, v] : rows) {
    if (id < 0 || profile.sigma[id] >= 0.0)
      throw DimensionMismatch(path + ": duplicate or invalid unit id " + std::to_string(id));
    profile.sigma[id] = v;
  }
  profile.validate();
  return profile;
}

ObservedPanel load_panel(const std::string& panel_path, const std::string& network_path,
                         bool directed) {
  Network network = load_network(network_path, directed);
  auto lines = read_lines(panel_path);
  if (lines.empty()) throw ParseError(panel_path, 1, 1, "panel file is empty");
  auto header = split_fields(trim(lines[0]));
  if (header.size() < 3 || header[0] != "unit_id" || header[1] != "y" || header[2] != "d")
    throw ParseError(panel_path, 1, 1, "panel header must start with unit_id,y,d");
  int k = static_cast<int>(header.size()) - 3;
  int n = network.size();

  std::vector<std::uint8_t> y(n, 0);
  std::vector<std::uint8_t> d(n, 0);
  std::vector<double> x(static_cast<std::size_t>(n) * k, 0.0);
  std::vector<bool> seen(n, false);
  int rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != k + 3)
      throw ParseError(panel_path, static_cast<int>(i) + 1, 1,
                       "expected " + std::to_string(k + 3) + " fields");
    int id = static_cast<int>(parse_long(panel_path, static_cast<int>(i) + 1, 1, fields[0]));
    if (id < 0 || id >= n)
      throw DimensionMismatch(panel_path + ": unit id " + std::to_string(id) +
                              " does not match the network of size " + std::to_string(n));
    if (seen[id])
      throw DimensionMismatch(panel_path + ": duplicate unit id " + std::to_string(id));
    seen[id] = true;
    ++rows;
    y[id] = static_cast<std::uint8_t>(parse_long(panel_path, static_cast<int>(i) + 1, 2, fields[1]));
    d[id] = static_cast<std::uint8_t>(parse_long(panel_path, static_cast<int>(i) + 1, 3, fields[2]));
    for (int c = 0; c < k; ++c)
      x[static_cast<std::size_t>(id) * k + c] =
          parse_double(panel_path, static_cast<int>(i) + 1, c + 4, fields[c + 3]);
  }
  if (rows != n)
    throw DimensionMismatch(panel_path + ": panel rows (" + std::to_string(rows) +
                            ") do not match the network size (" + std::to_string(n) + ")");
  ObservedPanel panel{std::move(y), std::move(d), Covariates(n, k, std::move(x)),
                      std::move(network)};
  panel.validate();
  return panel;
}

Game load_game(const GamePaths& paths, std::vector<std::string>* warnings) {
  Network network = load_network(paths.network, paths.directed);
  Covariates covariates = load_covariates(paths.covariates);
  ThetaConfig config = load_theta_config(paths.config);
  if (covariates.size() != network.size())
    throw DimensionMismatch("covariate rows (" + std::to_string(covariates.size()) +
                            ") do not match the network size (" +
                            std::to_string(network.size()) + ")");
  if (warnings != nullptr) {
    for (int i = 0; i < network.size(); ++i)
      if (network.degree(i) == 0)
        warnings->push_back("unit " + std::to_string(i) +
                            " is isolated; neighbor-averaged terms are zero");
  }
  return Game(std::move(network), std::move(covariates), std::move(config.theta),
              ShockDistribution(config.shock));
}

std::string ccp_csv(const CcpProfile& profile) {
  std::string out = "unit_id,sigma\n";
  for (int i = 0; i < profile.size(); ++i)
    out += std::to_string(i) + "," + format_double(profile.sigma[i]) + "\n";
  return out;
}

std::string allocation_csv(const Allocation& alloc) {
  std::string out = "unit_id,d\n";
  for (std::size_t i = 0; i < alloc.d.size(); ++i)
    out += std::to_string(i) + "," + std::to_string(static_cast<int>(alloc.d[i])) + "\n";
  return out;
}

std::string unit_bounds_csv(const UnitBounds& bounds) {
  std::string out = "unit_id,lower,upper\n";
  for (std::size_t i = 0; i < bounds.lower.size(); ++i)
    out += std::to_string(i) + "," + format_double(bounds.lower[i]) + "," +
           format_double(bounds.upper[i]) + "\n";
  return out;
}

std::string regret_csv(const std::vector<RegretRow>& rows) {
  std::string out = "n_train,rep,regret,estimation_gap,greedy_gap\n";
  for (const auto& row : rows)
    out += std::to_string(row.n_train) + "," + std::to_string(row.rep) + "," +
           format_double(row.regret) + "," + format_double(row.estimation_gap) + "," +
           format_double(row.greedy_gap) + "\n";
  return out;
}

std::string network_edge_csv(const Network& network) {
  std::string out = "src,dst\n";
  for (auto [src, dst] : network.edge_list())
    out += std::to_string(src) + "," + std::to_string(dst) + "\n";
  return out;
}

std::string covariates_csv(const Covariates& covariates) {
  std::string out = "unit_id";
  for (int c = 0; c < covariates.dim(); ++c) out += ",x" + std::to_string(c + 1);
  out += "\n";
  for (int i = 0; i < covariates.size(); ++i) {
    out += std::to_string(i);
    for (int c = 0; c < covariates.dim(); ++c) out += "," + format_double(covariates.at(i, c));
    out += "\n";
  }
  return out;
}

std::string panel_csv(const ObservedPanel& panel) {
  std::string out = "unit_id,y,d";
  for (int c = 0; c < panel.covariates.dim(); ++c) out += ",x" + std::to_string(c + 1);
  out += "\n";
  for (int i = 0; i < panel.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(static_cast<int>(panel.y[i])) + "," +
           std::to_string(static_cast<int>(panel.d[i]));
    for (int c = 0; c < panel.covariates.dim(); ++c)
      out += "," + format_double(panel.covariates.at(i, c));
    out += "\n";
  }
  return out;
}

namespace {

const char* direction_name(IterationStart direction) {
  switch (direction) {
    case IterationStart::from_zeros: return "from_zeros";
    case IterationStart::from_ones: return "from_ones";
    case IterationStart::custom_start: return "custom_start";
  }
  return "unknown";
}

}  // namespace

std::string fixed_point_report_json(const FixedPointReport& report) {
  json j{{"iterations", report.iterations},
         {"residual", report.residual},
         {"converged", report.converged},
         {"direction", direction_name(report.direction)},
         {"monotone_nondecreasing", report.monotone_nondecreasing},
         {"monotone_nonincreasing", report.monotone_nonincreasing},
         {"sigma", profile_json(report.profile)}};
  return j.dump(2) + "\n";
}

std::string welfare_bounds_json(const WelfareBounds& bounds) {
  json j{{"objective", to_string(bounds.objective)},
         {"lower", bounds.lower},
         {"upper", bounds.upper},
         {"least_profile", profile_json(bounds.least_profile)},
         {"greatest_profile", profile_json(bounds.greatest_profile)}};
  if (bounds.literal_upper.has_value()) j["literal_upper"] = *bounds.literal_upper;
  return j.dump(2) + "\n";
}

std::string allocation_result_json(const AllocationResult& result) {
  json rounds = json::array();
  for (const auto& round : result.trace) {
    json gains = json::array();
    for (auto [unit, gain] : round.gains) gains.push_back(json{{"unit", unit}, {"gain", gain}});
    rounds.push_back(json{{"chosen", round.chosen},
                          {"welfare_after", round.welfare_after},
                          {"gains", std::move(gains)}});
  }
  json j{{"method", to_string(result.method)},
         {"kappa", result.allocation.kappa},
         {"treated", result.allocation.treated_count()},
         {"welfare_lower", result.welfare_lower},
         {"welfare_upper", result.welfare_upper},
         {"trace", std::move(rounds)}};
  return j.dump(2) + "\n";
}

std::string random_allocation_json(const RandomAllocationReport& report) {
  json draws = json::array();
  for (const auto& draw : report.draws) {
    std::vector<int> treated;
    for (std::size_t i = 0; i < draw.allocation.d.size(); ++i)
      if (draw.allocation.d[i]) treated.push_back(static_cast<int>(i));
    draws.push_back(json{{"treated", treated},
                         {"welfare_lower", draw.welfare_lower},
                         {"welfare_upper", draw.welfare_upper}});
  }
  json j{{"method", "random"},
         {"mean_lower", report.mean_lower},
         {"mean_upper", report.mean_upper},
         {"draws", std::move(draws)}};
  return j.dump(2) + "\n";
}

std::string gof_report_json(const GofReport& gof) {
  json bins = json::array();
  for (const auto& bin : gof.bins)
    bins.push_back(json{{"bin", bin.bin},
                        {"count", bin.count},
                        {"observed", bin.observed},
                        {"expected", bin.expected},
                        {"statistic", bin.statistic},
                        {"flagged", bin.flagged},
                        {"skipped", bin.skipped}});
  json j{{"critical_value", gof.critical_value},
         {"bins", std::move(bins)},
         {"warnings", gof.warnings}};
  return j.dump(2) + "\n";
}

std::string fit_report_json(const FitReport& fit, const GofReport* gof) {
  json j{{"theta", theta_to_json(fit.theta_hat)},
         {"loglik", fit.loglik},
         {"gradient_norm", fit.gradient_norm},
         {"iterations", fit.iterations},
         {"converged", fit.converged},
         {"first_stage", to_string(fit.first_stage)},
         {"first_stage_clamp_events", fit.first_stage_clamp_events},
         {"likelihood_clamp_events", fit.likelihood_clamp_events},
         {"sigma_hat", profile_json(fit.sigma_hat)},
         {"warnings", fit.warnings}};
  if (gof != nullptr) j["gof"] = json::parse(gof_report_json(*gof));
  return j.dump(2) + "\n";
}

FitReport load_fit_report(const std::string& path) {
  json j = parse_json_file(path);
  FitReport fit;
  try {
    fit.theta_hat = theta_from_json(j.at("theta"), path);
    fit.loglik = j.value("loglik", 0.0);
    fit.gradient_norm = j.value("gradient_norm", 0.0);
    fit.iterations = j.value("iterations", 0);
    fit.converged = j.value("converged", false);
    fit.first_stage = first_stage_from_string(j.value("first_stage", std::string("oracle")));
    fit.sigma_hat.sigma = j.at("sigma_hat").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ParseError(path, 0, 0, std::string("fit report: ") + e.what());
  }
  fit.sigma_hat.validate();
  return fit;
}

std::string nash_set_json(const NashSet& set) {
  json eq = json::array();
  for (const auto& profile : set.equilibria) eq.push_back(std::vector<int>(profile.begin(), profile.end()));
  json j{{"equilibria", std::move(eq)},
         {"least", std::vector<int>(set.least.begin(), set.least.end())},
         {"greatest", std::vector<int>(set.greatest.begin(), set.greatest.end())},
         {"epsilon", set.epsilon_draw}};
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
  if (!out) throw ValidationError("failed writing file: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string file_checksum(const std::string& path) {
  std::string bytes = read_file(path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

ManifestWriter::ManifestWriter(std::string command, std::uint64_t seed)
    : command_(std::move(command)), seed_(seed) {}

void ManifestWriter::set_config(const std::string& key, const std::string& value) {
  config_[key] = value;
}

void ManifestWriter::add_input(const std::string& path) { inputs_[path] = file_checksum(path); }

void ManifestWriter::add_output(const std::string& path) { outputs_[path] = file_checksum(path); }

std::string ManifestWriter::to_json() const {
  json j{{"command", command_}, {"version", kToolkitVersion},   {"seed", seed_},
         {"config", config_},   {"wall_clock_seconds", wall_clock_}, {"inputs", inputs_},
         {"outputs", outputs_}};
  return j.dump(2) + "\n";
}

void ManifestWriter::write(const std::string& path) const { write_file(path, to_json()); }

}  // namespace netgame
