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

#ifndef NETGAME_IO_HPP_
#define NETGAME_IO_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netgame/allocation.hpp"
#include "netgame/complete_info.hpp"
#include "netgame/equilibrium.hpp"
#include "netgame/estimation.hpp"
#include "netgame/game.hpp"
#include "netgame/sim_harness.hpp"
#include "netgame/welfare.hpp"

namespace netgame {

inline constexpr const char* kToolkitVersion = "0.1.0";

// 17 significant digits; round-trips to the same double.
std::string format_double(double v);

// Edge list (header "src,dst", 0-indexed) or dense 0/1 matrix without header.
Network load_network(const std::string& path, bool directed);
// Header "unit_id,x1,...,xK"; every unit 0..N-1 exactly once.
Covariates load_covariates(const std::string& path);

struct ThetaConfig {
  Theta theta;
  ShockKind shock = ShockKind::logistic;
};
// JSON with keys theta0..theta6 (theta2/theta3 arrays) and "shock".
ThetaConfig load_theta_config(const std::string& path);
std::string theta_config_json(const ThetaConfig& config);

// Header "unit_id,d". kappa defaults to the treated count when negative.
Allocation load_allocation(const std::string& path, int n, int kappa = -1);
// Header "unit_id,sigma".
CcpProfile load_ccp(const std::string& path);
// Header "unit_id,y,d,x1,...,xK" plus a separate network file.
ObservedPanel load_panel(const std::string& panel_path, const std::string& network_path,
                         bool directed);

struct GamePaths {
  std::string network;
  bool directed = false;
  std::string covariates;
  std::string config;  // theta + shock JSON
};
// Parses and cross-validates the three files; isolated-unit warnings are
// appended to *warnings when provided.
Game load_game(const GamePaths& paths, std::vector<std::string>* warnings = nullptr);

// CSV / JSON renderings; all numeric fields use format_double.
std::string ccp_csv(const CcpProfile& profile);
std::string allocation_csv(const Allocation& alloc);
std::string unit_bounds_csv(const UnitBounds& bounds);
std::string regret_csv(const std::vector<RegretRow>& rows);
std::string network_edge_csv(const Network& network);
std::string covariates_csv(const Covariates& covariates);
std::string panel_csv(const ObservedPanel& panel);

std::string fixed_point_report_json(const FixedPointReport& report);
std::string welfare_bounds_json(const WelfareBounds& bounds);
std::string allocation_result_json(const AllocationResult& result);
std::string random_allocation_json(const RandomAllocationReport& report);
std::string fit_report_json(const FitReport& fit, const GofReport* gof = nullptr);
std::string gof_report_json(const GofReport& gof);
std::string nash_set_json(const NashSet& set);

// Reads back the fields of a fit report needed downstream (theta_hat,
// sigma_hat, first_stage, convergence state).
FitReport load_fit_report(const std::string& path);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// FNV-1a 64-bit over the file bytes, as 16 hex digits.
std::string file_checksum(const std::string& path);

// Run manifest: configuration echo plus checksums of every input and output,
// so pipeline stages can be chained and reruns verified.
class ManifestWriter {
 public:
  ManifestWriter(std::string command, std::uint64_t seed);

  void set_config(const std::string& key, const std::string& value);
  void add_input(const std::string& path);
  void add_output(const std::string& path);
  void set_wall_clock(double seconds) { wall_clock_ = seconds; }
  std::string to_json() const;
  void write(const std::string& path) const;

 private:
  std::string command_;
  std::uint64_t seed_;
  double wall_clock_ = 0.0;
  std::map<std::string, std::string> config_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
};

}  // namespace netgame

#endif  // NETGAME_IO_HPP_
