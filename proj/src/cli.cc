// Copyright 2026 The Approach Authors. All rights reserved.
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

#include "approach/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "approach/errors.h"
#include "approach/game_model.h"
#include "approach/hjb.h"
#include "approach/parallel.h"
#include "approach/pm_reduce.h"
#include "approach/simulator.h"
#include "approach/strategy.h"
#include "approach/transport.h"
#include "approach/wgame.h"
#include "json.hpp"

namespace approach {

namespace {

using Json = nlohmann::ordered_json;

// Raw flag values, before resolution into a configuration.
struct Flags {
  std::string game;
  std::string target;
  std::string signals;
  std::string mu;
  std::string nu;
  std::string out;
  std::string config;
  double s0 = 0.05;
  int sgrid = 101;
  std::string ggrid = "101";
  int actions = 11;
  std::string order = "minmax";
  int n = 5000;
  int n_delay = 100;
  std::optional<double> delta;
  uint64_t seed = 1;
  double tol = 0.1;
  int jobs = 0;
  std::string adversary;
  std::string horizons = "1000,2000,5000";
  std::string strategy = "greedy";
  std::string smooth = "both";
  int stride = 0;
};

// ---- JSON input -----------------------------------------------------------

Json LoadJson(const std::string& path, const std::string& what) {
  if (path.empty()) throw ConfigError(what + ": no file given (--" + what + ")");
  std::ifstream in(path);
  if (!in) throw ConfigError(what + ": cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(what + ": invalid JSON in '" + path + "': " + e.what());
  }
}

const Json& Require(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) throw ConfigError(ctx + ": expected an object");
  if (!j.contains(key)) throw ConfigError(ctx + ": missing field '" + key + "'");
  return j.at(key);
}

template <typename T>
T Field(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = Require(j, key, ctx);
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(ctx + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T FieldOr(const Json& j, const char* key, const std::string& ctx, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return Field<T>(j, key, ctx);
}

VectorGame ParseGame(const Json& j) {
  const std::string ctx = "game";
  if (j.is_object() && j.contains("matrix")) {
    return VectorGame::Scalar(Field<Matrix>(j, "matrix", ctx));
  }
  const auto payoffs = Field<std::vector<std::vector<Vec>>>(j, "payoffs", ctx);
  try {
    return VectorGame(payoffs, FieldOr<double>(j, "kappa", ctx, 0.0));
  } catch (const ConfigError& e) {
    throw ConfigError(ctx + ": field 'payoffs': " + e.what());
  }
}

TargetSet ParseTarget(const Json& j, const std::string& ctx = "target") {
  const std::string type = Field<std::string>(j, "type", ctx);
  if (type == "halfspace") {
    return TargetSet::MakeHalfSpace(Field<Vec>(j, "normal", ctx), Field<double>(j, "offset", ctx));
  }
  if (type == "ball") {
    return TargetSet::MakeBall(Field<Vec>(j, "center", ctx), Field<double>(j, "radius", ctx));
  }
  if (type == "polytope") {
    return TargetSet::MakePolytope(Field<std::vector<Vec>>(j, "normals", ctx),
                                   Field<Vec>(j, "offsets", ctx),
                                   FieldOr<std::vector<Vec>>(j, "vertices", ctx, {}));
  }
  if (type == "union") {
    std::vector<TargetSet> members;
    const Json& list = Require(j, "members", ctx);
    if (!list.is_array()) throw ConfigError(ctx + ": field 'members' must be an array");
    for (const Json& m : list) members.push_back(ParseTarget(m, ctx + ".members"));
    return TargetSet::MakeUnion(std::move(members));
  }
  throw ConfigError(ctx + ": field 'type' must be halfspace, ball, polytope or union");
}

DiscreteMeasure ParseMeasure(const Json& j, const std::string& ctx) {
  return DiscreteMeasure(Field<std::vector<Vec>>(j, "support", ctx), Field<Vec>(j, "weights", ctx));
}

std::vector<int> ParseIntList(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(what + ": '" + s + "' is not a comma-separated list of integers");
    }
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

// ---- Output ---------------------------------------------------------------

std::string Timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json SeedOf(const Json& config) {
  return config.contains("seed") ? config.at("seed") : Json(nullptr);
}

std::string CsvHeader(const Json& config) {
  std::ostringstream s;
  s << "# tool: " << kToolVersion << '\n';
  s << "# config: " << config.dump() << '\n';
  s << "# seed: " << SeedOf(config).dump() << '\n';
  s << "# timestamp: " << Timestamp() << '\n';
  return s.str();
}

Json JsonDocument(const Json& config) {
  Json doc;
  doc["provenance"] = {{"tool", kToolVersion},
                       {"config", config},
                       {"seed", SeedOf(config)},
                       {"timestamp", Timestamp()}};
  return doc;
}

// One top-level field per line, provenance fields on lines of their own.
std::string DumpDocument(const Json& doc) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : doc.items()) {
    s += first ? "\n" : ",\n";
    first = false;
    s += " " + Json(k).dump() + ": ";
    if (k == "provenance") {
      std::string block = "{";
      bool inner_first = true;
      for (const auto& [pk, pv] : v.items()) {
        block += inner_first ? "\n  " : ",\n  ";
        inner_first = false;
        block += Json(pk).dump() + ": " + pv.dump();
      }
      s += block + "\n }";
    } else {
      s += v.dump();
    }
  }
  return s + "\n}\n";
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- Configuration resolution ---------------------------------------------

Json SchemeJson(const Flags& f, const VectorGame& game) {
  SchemeConfig sc;
  sc.s0 = f.s0;
  if (f.sgrid < 2) throw ConfigError("--sgrid must be >= 2");
  sc.steps = f.sgrid - 1;
  std::vector<int> nodes = ParseIntList(f.ggrid, "--ggrid");
  if (nodes.size() == 1) nodes.assign(game.d(), nodes[0]);
  sc.nodes = nodes;
  sc.action_resolution = f.actions;
  sc.order = ParseOrder(f.order);
  const SchemeConfig r = ResolveSchemeConfig(sc, game);
  return {{"s0", r.s0},
          {"sgrid", r.steps + 1},
          {"ggrid", r.nodes},
          {"actions", r.action_resolution},
          {"order", OrderName(r.order)},
          {"box", {{"lo", r.box->lo}, {"hi", r.box->hi}}}};
}

SchemeConfig SchemeFromJson(const Json& c, int jobs) {
  const std::string ctx = "config";
  SchemeConfig sc;
  sc.s0 = Field<double>(c, "s0", ctx);
  sc.steps = Field<int>(c, "sgrid", ctx) - 1;
  sc.nodes = Field<std::vector<int>>(c, "ggrid", ctx);
  sc.action_resolution = Field<int>(c, "actions", ctx);
  sc.order = ParseOrder(Field<std::string>(c, "order", ctx));
  const Json& box = Require(c, "box", ctx);
  sc.box = Box{Field<Vec>(box, "lo", "config.box"), Field<Vec>(box, "hi", "config.box")};
  sc.threads = jobs;
  return sc;
}

Json Resolve(const std::string& command, const Flags& f) {
  Json c;
  c["command"] = command;
  if (command == "ot") {
    c["mu"] = LoadJson(f.mu, "mu");
    c["nu"] = LoadJson(f.nu, "nu");
    c["delta"] = f.delta ? Json(*f.delta) : Json(nullptr);
    return c;
  }
  c["game"] = LoadJson(f.game, "game");
  c["target"] = LoadJson(f.target, "target");
  const VectorGame game = ParseGame(c["game"]);
  if (command == "pm" || command == "wsim") {
    c["signals"] = LoadJson(f.signals, "signals");
    c["actions"] = f.actions;
    if (command == "wsim") {
      c["delta"] = f.delta.value_or(0.05);
      c["n"] = f.n;
      c["seed"] = f.seed;
      c["strategy"] = f.strategy;
      c["adversary"] = f.adversary.empty() ? "potential" : f.adversary;
      c["smooth"] = f.smooth;
      c["stride"] = f.stride;
    }
    return c;
  }
  const Json scheme = SchemeJson(f, game);
  for (const auto& [k, v] : scheme.items()) c[k] = v;
  c["tol"] = f.tol;
  if (command == "synthesize" || command == "simulate" || command == "scan") c["N"] = f.n_delay;
  if (command == "simulate") {
    c["n"] = f.n;
    c["seed"] = f.seed;
    c["adversary"] = f.adversary.empty() ? "best_response" : f.adversary;
  }
  if (command == "scan") {
    c["horizons"] = ParseIntList(f.horizons, "--horizons");
    c["seed"] = f.seed;
    std::vector<std::string> names;
    std::stringstream ss(f.adversary.empty() ? "best_response,random:1" : f.adversary);
    std::string item;
    while (std::getline(ss, item, ',')) names.push_back(item);
    c["adversaries"] = names;
  }
  return c;
}

// ---- Commands -------------------------------------------------------------

struct Output {
  std::string text;
  std::string summary;  // printed to stdout when the output goes to a file
  int code = 0;
};

int ParseIndexSuffix(const std::string& s, const std::string& prefix, const std::string& what) {
  try {
    size_t used = 0;
    const std::string tail = s.substr(prefix.size());
    const int v = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + s + "' needs an integer after '" + prefix + "'");
  }
}

Adversary MakeAdversary(const std::string& name, const VectorGame& game, const Pipeline& p) {
  if (name == "best_response") return Adversary::BestResponse(p.player2);
  if (name.rfind("random:", 0) == 0) {
    return Adversary::RandomSeeded(game.b(), ParseIndexSuffix(name, "random:", "adversary"));
  }
  if (name.rfind("fixed:", 0) == 0) {
    const int j = ParseIndexSuffix(name, "fixed:", "adversary");
    if (j < 0 || j >= game.b()) throw ConfigError("adversary: action index out of range");
    return Adversary::Stationary(MixedAction::Pure(game.b(), j));
  }
  throw ConfigError("adversary: '" + name + "' is not best_response, random:<seed> or fixed:<j>");
}

Json SummaryJson(const ValueGrid& vg, double tol) {
  const ValueEstimate e = ValueAtZero(vg);
  return {{"estimate", e.estimate},
          {"spread", e.spread},
          {"slack", e.slack},
          {"bound", e.bound},
          {"verdict", VerdictName(Classify(e, tol))}};
}

Output RunValue(const Json& c, int jobs, bool with_grid) {
  const VectorGame game = ParseGame(c["game"]);
  const TargetSet target = ParseTarget(c["target"]);
  const ValueGrid vg = SolveValue(game, target, SchemeFromJson(c, jobs));
  Json doc = JsonDocument(c);
  doc["summary"] = SummaryJson(vg, Field<double>(c, "tol", "config"));
  if (with_grid) {
    doc["metadata"] = {{"kappa", vg.kappa()},
                       {"ds", vg.ds()},
                       {"spacing", vg.spacing()},
                       {"layout", "slices[k][node], node row-major with the last dimension fastest"}};
    Json slices = Json::array();
    for (int k = 0; k < vg.num_slices(); ++k) {
      const auto s = vg.slice(k);
      slices.push_back(Vec(s.begin(), s.end()));
    }
    doc["slices"] = std::move(slices);
  }
  return {DumpDocument(doc), doc["summary"].dump() + "\n", 0};
}

Output RunSynthesize(const Json& c, int jobs) {
  const VectorGame game = ParseGame(c["game"]);
  const TargetSet target = ParseTarget(c["target"]);
  SchemeConfig sc = SchemeFromJson(c, jobs);
  sc.order = Order::kMinMax;
  const Pipeline p = BuildPipeline(game, target, sc, Field<int>(c, "N", "config"), false);
  const NadcStrategy& nadc = *p.nadc;
  const ValueGrid& vg = *p.player1_grid;
  std::ostringstream s;
  s << CsvHeader(c);
  s << "# first_boundary: " << nadc.first_boundary() << '\n';
  s << "j,t";
  for (int k = 0; k < vg.dim(); ++k) s << ",g" << k;
  for (int i = 0; i < game.a(); ++i) s << ",x" << i;
  s << '\n';
  for (int j = nadc.first_boundary(); j < nadc.N(); ++j) {
    const double t = static_cast<double>(j) / nadc.N();
    for (int node = 0; node < vg.num_nodes(); ++node) {
      const Vec g = vg.NodePoint(node);
      const MixedAction x = p.player1->Player1(t, g);
      s << j << ',' << Fmt(t);
      for (double v : g) s << ',' << Fmt(v);
      for (double v : x.weights()) s << ',' << Fmt(v);
      s << '\n';
    }
  }
  return {s.str(), "", 0};
}

Output RunSimulate(const Json& c, int jobs) {
  const VectorGame game = ParseGame(c["game"]);
  const TargetSet target = ParseTarget(c["target"]);
  SchemeConfig sc = SchemeFromJson(c, jobs);
  sc.order = Order::kMinMax;
  const std::string adv = Field<std::string>(c, "adversary", "config");
  const Pipeline p = BuildPipeline(game, target, sc, Field<int>(c, "N", "config"),
                                   adv == "best_response");
  const int n = Field<int>(c, "n", "config");
  const Trajectory t = Run(game, target, *ToRepeated(p.nadc, n), MakeAdversary(adv, game, p), n,
                           Field<uint64_t>(c, "seed", "config"));
  std::ostringstream s;
  s << CsvHeader(c);
  WriteTrajectoryCsv(t, s);
  return {s.str(), "final_distance=" + Fmt(t.final_distance()) + "\n", 0};
}

Output RunScan(const Json& c, int jobs) {
  const VectorGame game = ParseGame(c["game"]);
  const TargetSet target = ParseTarget(c["target"]);
  SchemeConfig sc = SchemeFromJson(c, jobs);
  sc.order = Order::kMinMax;
  const auto names = Field<std::vector<std::string>>(c, "adversaries", "config");
  const bool br = std::find(names.begin(), names.end(), "best_response") != names.end();
  const Pipeline p = BuildPipeline(game, target, sc, Field<int>(c, "N", "config"), br);
  std::vector<Adversary> suite;
  for (const std::string& name : names) suite.push_back(MakeAdversary(name, game, p));
  const auto rows = ConvergenceScan(game, target, p, suite,
                                    Field<std::vector<int>>(c, "horizons", "config"),
                                    Field<uint64_t>(c, "seed", "config"), jobs);
  std::ostringstream s;
  s << CsvHeader(c);
  WriteScanCsv(rows, s);
  return {s.str(), "", 0};
}

Output RunOt(const Json& c) {
  const DiscreteMeasure mu = ParseMeasure(c["mu"], "mu");
  const DiscreteMeasure nu = ParseMeasure(c["nu"], "nu");
  const TransportResult r = W2(mu, nu);
  const TransportCertificate cert = Certify(mu, nu, r);
  Json doc = JsonDocument(c);
  doc["cost"] = r.cost;
  doc["w2"] = std::sqrt(std::max(r.cost, 0.0));
  doc["plan"] = r.plan;
  doc["phi"] = r.phi;
  doc["phistar"] = r.phistar;
  doc["anchor"] = r.anchor;
  doc["certificate"] = {{"duality_gap", cert.duality_gap},
                        {"dual_violation", cert.dual_violation},
                        {"slackness_residual", cert.slackness_residual},
                        {"marginal_residual", cert.marginal_residual}};
  if (!c["delta"].is_null()) {
    const double delta = c["delta"].get<double>();
    const DiscreteMeasure s = SmoothDelta(mu, delta);
    doc["smoothed_mu"] = {{"lambda", SmoothingWeight(mu, delta)},
                          {"support", s.support()},
                          {"weights", s.weights()}};
  }
  return {DumpDocument(doc), "w2sq=" + Fmt(r.cost) + "\n", 0};
}

SignalStructure ParseSignals(const Json& j) {
  return SignalStructure(Field<std::vector<Vec>>(j, "signals", "signals"));
}

EtildePolytope EtildeFromConfig(const Json& c, int jobs) {
  const VectorGame game = ParseGame(c["game"]);
  const TargetSet target = ParseTarget(c["target"]);
  const SignalStructure s = ParseSignals(c["signals"]);
  const int res = Field<int>(c, "actions", "config");
  if (res < 2) throw ConfigError("--actions must be >= 2");
  return BuildEtilde(game, target, SimplexGrid(game.a(), res), s,
                     FieldOr<std::vector<Vec>>(c["signals"], "alphabet", "signals", {}), jobs);
}

Output RunPm(const Json& c, int jobs) {
  const EtildePolytope et = EtildeFromConfig(c, jobs);
  Json doc = JsonDocument(c);
  Json fibers = Json::array();
  for (const FiberPolytope& f : et.fibers) {
    Json verts = Json::array();
    for (const MixedAction& y : f.vertices) verts.push_back(y.weights());
    fibers.push_back({{"signal", f.signal}, {"vertices", verts}});
  }
  doc["fibers"] = fibers;
  doc["etilde"] = {{"grid", et.GridPoints()},
                   {"normals", et.normals},
                   {"rows", et.rows},
                   {"bounds", et.bounds},
                   {"empty", et.empty}};
  Output o{DumpDocument(doc), "", 0};
  if (et.empty) {
    o.summary = "compatible set is empty\n";
    o.code = 4;
  }
  return o;
}

Output RunWsim(const Json& c, int jobs) {
  const EtildePolytope et = EtildeFromConfig(c, jobs);
  const LiftedGame lg = LiftedGame::FromEtilde(et, Field<double>(c, "delta", "config"));
  const std::string strat = Field<std::string>(c, "strategy", "config");
  std::optional<WStrategy> strategy;
  if (strat == "greedy") {
    strategy = WStrategy::Greedy();
  } else if (strat.rfind("fixed:", 0) == 0) {
    const int i = ParseIndexSuffix(strat, "fixed:", "strategy");
    if (i < 0 || i >= lg.grid.nx()) throw ConfigError("strategy: grid index out of range");
    strategy = WStrategy::Fixed(MixedAction::Pure(lg.grid.nx(), i));
  } else {
    throw ConfigError("strategy: '" + strat + "' is not greedy or fixed:<i>");
  }
  const std::string adv = Field<std::string>(c, "adversary", "config");
  std::optional<WAdversary> adversary;
  if (adv == "potential") {
    adversary = WAdversary::Potential();
  } else if (adv == "clairvoyant") {
    adversary = WAdversary::Clairvoyant();
  } else if (adv.rfind("random:", 0) == 0) {
    adversary = WAdversary::RandomSeeded(ParseIndexSuffix(adv, "random:", "adversary"));
  } else if (adv.rfind("fixed:", 0) == 0) {
    const int j = ParseIndexSuffix(adv, "fixed:", "adversary");
    if (j < 0 || j >= lg.grid.nz()) throw ConfigError("adversary: grid index out of range");
    adversary = WAdversary::Fixed(MixedAction::Pure(lg.grid.nz(), j));
  } else {
    throw ConfigError("adversary: '" + adv + "' is not potential, clairvoyant, random:<seed> or fixed:<j>");
  }
  const std::string smooth = Field<std::string>(c, "smooth", "config");
  WsimOptions opts;
  if (smooth == "player2") {
    opts.smooth_player1 = false;
  } else if (smooth == "none") {
    opts.smooth_player1 = opts.smooth_player2 = false;
  } else if (smooth != "both") {
    throw ConfigError("smooth: must be both, player2 or none");
  }
  const WsimTrajectory t = RunWsim(lg, *strategy, *adversary, Field<int>(c, "n", "config"),
                                   Field<uint64_t>(c, "seed", "config"), opts);
  std::ostringstream s;
  s << CsvHeader(c);
  WriteWsimCsv(t, Field<int>(c, "stride", "config"), s);
  return {s.str(), "final_w2=" + Fmt(t.stages.back().w2) + "\n", 0};
}

Output Execute(const Json& c, int jobs) {
  const std::string cmd = Field<std::string>(c, "command", "config");
  if (cmd == "value") return RunValue(c, jobs, true);
  if (cmd == "classify") return RunValue(c, jobs, false);
  if (cmd == "synthesize") return RunSynthesize(c, jobs);
  if (cmd == "simulate") return RunSimulate(c, jobs);
  if (cmd == "scan") return RunScan(c, jobs);
  if (cmd == "ot") return RunOt(c);
  if (cmd == "pm") return RunPm(c, jobs);
  if (cmd == "wsim") return RunWsim(c, jobs);
  throw ConfigError("config: unknown command '" + cmd + "'");
}

// Configuration embedded in a previously written output file.
Json ReadProvenance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::string first;
  std::getline(in, first);
  if (first.rfind("# ", 0) == 0) {
    std::string line = first;
    do {
      const std::string key = "# config: ";
      if (line.rfind(key, 0) == 0) {
        try {
          return Json::parse(line.substr(key.size()));
        } catch (const Json::exception& e) {
          throw ConfigError(std::string("config: invalid header: ") + e.what());
        }
      }
    } while (std::getline(in, line) && line.rfind("# ", 0) == 0);
    throw ConfigError("config: no '# config:' line in '" + path + "'");
  }
  in.clear();
  in.seekg(0);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
  }
  if (doc.contains("provenance")) return Field<Json>(doc["provenance"], "config", "config");
  return doc;
}

void AddSchemeFlags(CLI::App* app, Flags& f) {
  app->add_option("--game", f.game, "Game JSON file")->required();
  app->add_option("--target", f.target, "Target JSON file")->required();
  app->add_option("--s0", f.s0, "Initial time of the scheme")->capture_default_str();
  app->add_option("--sgrid", f.sgrid, "Number of time slices")->capture_default_str();
  app->add_option("--ggrid", f.ggrid, "Nodes per payoff dimension (n or n1,n2,..)")->capture_default_str();
  app->add_option("--actions", f.actions, "Action grid resolution per simplex edge")->capture_default_str();
  app->add_option("--order", f.order, "minmax or maxmin")->capture_default_str();
  app->add_option("--tol", f.tol, "Verdict tolerance")->capture_default_str();
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Approachability toolkit: value grids, strategies, simulation and transport."};
  app.require_subcommand(0, 1);
  app.fallthrough();
  app.add_option("--config", f.config, "Re-run the configuration recorded in an output file");
  app.add_option("--out", f.out, "Output file (default: standard output)");
  app.add_option("--jobs", f.jobs, "Worker threads (0: machine parallelism)")->capture_default_str();
  app.footer(
      "Inputs are JSON. Game: {\"payoffs\": [a][b][d]} or {\"matrix\": [a][b]}, optional \"kappa\".\n"
      "Target: {\"type\": \"halfspace\"|\"ball\"|\"polytope\"|\"union\", ...}.\n"
      "Signals: {\"signals\": [b][k]}, optional \"alphabet\": [[..]].\n"
      "Measures: {\"support\": [[..]], \"weights\": [..]}.\n"
      "Every output begins with a provenance header; pass the file to --config to regenerate it.\n"
      "Exit codes: 0 ok, 2 invalid configuration, 3 numerical failure, 4 infeasible model.");

  CLI::App* value = app.add_subcommand("value", "Solve the value grid; writes grid JSON with summary");
  AddSchemeFlags(value, f);
  CLI::App* classify = app.add_subcommand("classify", "Solve and print the verdict summary JSON");
  AddSchemeFlags(classify, f);
  CLI::App* synth = app.add_subcommand("synthesize", "Player-1 feedback table at the delay breakpoints");
  AddSchemeFlags(synth, f);
  synth->add_option("--N", f.n_delay, "Delay grid size")->capture_default_str();
  synth->footer("CSV columns: j, t, g0.., x0..");
  CLI::App* sim = app.add_subcommand("simulate", "Repeated-game run of the discretized strategy");
  AddSchemeFlags(sim, f);
  sim->add_option("--N", f.n_delay, "Delay grid size")->capture_default_str();
  sim->add_option("--n", f.n, "Horizon")->capture_default_str();
  sim->add_option("--seed", f.seed, "Run seed")->capture_default_str();
  sim->add_option("--adversary", f.adversary, "best_response, random:<seed> or fixed:<j>");
  sim->footer("CSV columns: m, x0.., y0.., g0.., gbar0.., dist");
  CLI::App* scan = app.add_subcommand("scan", "Worst final distance per horizon over an adversary suite");
  AddSchemeFlags(scan, f);
  scan->add_option("--N", f.n_delay, "Delay grid size")->capture_default_str();
  scan->add_option("--horizons", f.horizons, "Comma-separated horizons")->capture_default_str();
  scan->add_option("--seed", f.seed, "Run seed")->capture_default_str();
  scan->add_option("--adversary", f.adversary, "Comma-separated suite (default best_response,random:1)");
  scan->footer("CSV columns: n, max_dist, argmax_adversary");
  CLI::App* ot = app.add_subcommand("ot", "Squared Wasserstein distance, plan and potentials");
  ot->add_option("--mu", f.mu, "Source measure JSON")->required();
  ot->add_option("--nu", f.nu, "Target measure JSON")->required();
  ot->add_option("--delta", f.delta, "Also report the smoothed source measure");
  CLI::App* pm = app.add_subcommand("pm", "Signal fibers and the compatible-measure constraints");
  pm->add_option("--game", f.game, "Game JSON file")->required();
  pm->add_option("--target", f.target, "Target JSON file (half-space or polytope)")->required();
  pm->add_option("--signals", f.signals, "Signals JSON file")->required();
  pm->add_option("--actions", f.actions, "Player-1 grid resolution")->capture_default_str();
  CLI::App* wsim = app.add_subcommand("wsim", "Simulation of the lifted game over measures");
  wsim->add_option("--game", f.game, "Game JSON file")->required();
  wsim->add_option("--target", f.target, "Target JSON file (half-space or polytope)")->required();
  wsim->add_option("--signals", f.signals, "Signals JSON file")->required();
  wsim->add_option("--actions", f.actions, "Player-1 grid resolution")->capture_default_str();
  wsim->add_option("--delta", f.delta, "Smoothing radius (default 0.05)");
  wsim->add_option("--n", f.n, "Horizon")->capture_default_str();
  wsim->add_option("--seed", f.seed, "Run seed")->capture_default_str();
  wsim->add_option("--strategy", f.strategy, "greedy or fixed:<i>")->capture_default_str();
  wsim->add_option("--adversary", f.adversary, "potential, clairvoyant, random:<seed> or fixed:<j>");
  wsim->add_option("--smooth", f.smooth, "both, player2 or none")->capture_default_str();
  wsim->add_option("--stride", f.stride, "Dump weights every stride stages (0: never)")->capture_default_str();
  wsim->footer("CSV columns: m, w2sq, w2, then theta0.. when --stride > 0");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    Json config;
    if (!f.config.empty()) {
      if (!app.get_subcommands().empty()) throw ConfigError("--config replaces the command");
      config = ReadProvenance(f.config);
    } else if (!app.get_subcommands().empty()) {
      config = Resolve(app.get_subcommands()[0]->get_name(), f);
    } else {
      throw ConfigError("a command or --config is required (see --help)");
    }
    const int jobs = f.jobs > 0 ? f.jobs : DefaultThreads();
    const Output o = Execute(config, jobs);
    if (f.out.empty()) {
      out << o.text;
      if (o.code != 0) err << o.summary;
    } else {
      std::ofstream file(f.out, std::ios::binary);
      if (!file) throw ConfigError("--out: cannot write '" + f.out + "'");
      file << o.text;
      if (!file) throw NumericalError("--out: write failed");
      (o.code == 0 ? out : err) << o.summary;
    }
    return o.code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return 4;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const Json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace approach
