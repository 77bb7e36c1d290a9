// Copyright 2026 The QPN Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpn/cli.hpp"

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qpn/error.hpp"
#include "qpn/io.hpp"

namespace qpn::cli {

namespace {

std::string join(const std::vector<std::string>& names, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (k) out += sep;
    out += names[k];
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

std::string fmt(const std::vector<double>& xs) {
  std::string out = "(";
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + fmt(xs[k]);
  return out + ")";
}

std::string fmt(const Assignment& a) {
  if (a.empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : a) {
    out += (first ? "" : ", ") + k + "=" + fmt(v);
    first = false;
  }
  return out + "}";
}

std::string fmt(const Trail& t) {
  std::string out = t.nodes.front();
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& s = t.steps[k];
    const auto sign = std::string(to_string(s.edge.sign));
    out += s.direction == Direction::WithEdge ? " -[" + sign + "]-> " : " <-[" + sign + "]- ";
    out += t.nodes[k + 1];
  }
  return out;
}

void render_verdict(std::ostream& out, std::string_view label, const InfluenceVerdict& v) {
  out << label << ": " << to_string(v.verdict) << "\n";
  if (v.witness) {
    const auto& w = *v.witness;
    out << "    witness: context " << fmt(w.context) << ", level " << fmt(w.high_level)
        << " vs " << fmt(w.low_level) << " (" << to_string(w.order) << "), at "
        << fmt(w.support_point) << "\n"
        << "    cdf high " << fmt(w.cdf_high) << "\n"
        << "    cdf low  " << fmt(w.cdf_low) << "\n";
  }
  if (!v.skipped_contexts.empty()) {
    out << "    skipped zero-mass contexts:";
    for (const auto& a : v.skipped_contexts) out << " " << fmt(a);
    out << "\n";
  }
}

void render_mlrp(std::ostream& out, const MlrpResult& r) {
  out << "MLRP: " << (r.holds ? "holds" : "fails") << "\n";
  if (r.witness) {
    const auto& w = *r.witness;
    out << "    x=" << fmt(w.x) << ", x'=" << fmt(w.x_prime) << ", y=" << fmt(w.y)
        << ", y'=" << fmt(w.y_prime) << ": ratio at x " << fmt(w.ratio_at_x)
        << " < ratio at x' " << fmt(w.ratio_at_x_prime) << "\n";
  }
}

void render_tp2(std::ostream& out, const Tp2Result& r) {
  out << "TP2: " << (r.holds ? "holds" : "fails") << "\n";
  if (r.witness) {
    const auto& w = *r.witness;
    out << "    x=" << fmt(w.x) << " < x'=" << fmt(w.x_prime) << ", y=" << fmt(w.y)
        << " < y'=" << fmt(w.y_prime) << ": " << fmt(w.discordant) << " > "
        << fmt(w.concordant) << "\n";
  }
}

void render_association(std::ostream& out, const AssociationResult& r) {
  out << "association: " << (r.holds ? "holds" : "fails") << "\n";
  if (r.witness) {
    const auto& w = *r.witness;
    out << "    P(U and V) = " << fmt(w.p_intersection) << " < P(U) P(V) = " << fmt(w.p_u)
        << " * " << fmt(w.p_v) << "\n";
  }
}

void render_report(std::ostream& out, const SatisfactionReport& r) {
  out << (r.satisfied ? "satisfied" : "NOT satisfied") << "\n";
  for (const auto& c : r.markov_checks) {
    out << "  [" << (c.ok ? " ok " : "FAIL") << "] markov  " << c.variable;
    if (c.nondescendants.empty()) {
      out << " (no non-descendants)\n";
    } else {
      out << " _|_ {" << join(c.nondescendants) << "} | {" << join(c.parents)
          << "}  max deviation " << fmt(c.max_deviation) << "\n";
    }
  }
  for (const auto& c : r.edge_checks) {
    out << "  [" << (c.ok ? " ok " : "FAIL") << "] edge    " << c.edge.from << " -> "
        << c.edge.to << " (" << to_string(c.edge.sign) << ")  verdict "
        << to_string(c.verdict.verdict);
    if (!c.context.empty()) out << " given {" << join(c.context) << "}";
    out << "\n";
  }
}

void render_propagation(std::ostream& out, const PropagationResult& r, bool trails) {
  out << "observe " << r.evidence_node << "=" << to_string(r.evidence_sign) << " ("
      << to_string(r.mode) << " mode)\n";
  for (const auto& [node, s] : r.node_signs) {
    if (node == r.evidence_node) continue;
    out << "  " << std::left << std::setw(20) << node << " " << to_string(s) << "\n";
    if (!trails) continue;
    const auto it = r.trail_log.find(node);
    if (it == r.trail_log.end()) continue;
    for (const auto& c : it->second)
      out << "      " << fmt(c.trail) << "   => " << to_string(c.sign) << "\n";
  }
}

void render_dag(std::ostream& out, const SignedDag& dag) {
  out << "variables:";
  for (const auto& v : dag.variables()) out << " " << v.name << fmt(v.support);
  out << "\nedges:\n";
  for (const auto& e : dag.edges())
    out << "  " << e.from << " -> " << e.to << " (" << to_string(e.sign) << ")\n";
}

Sign parse_evidence_sign(const std::string& text) {
  const auto s = parse_sign(text);
  if (!s || (*s != Sign::Plus && *s != Sign::Minus))
    fail(ErrorKind::BadEvidenceSign, "evidence sign must be + or -, got '" + text + "'");
  return *s;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_check(const CliConfig& c, std::ostream& out) {
  const auto qpn = load_network(c.network_path);
  const auto table = load_distribution(c.dist_path);
  const auto report = satisfies_qpn(table, qpn);
  if (c.output == OutputFormat::Json) {
    emit(out, to_json(report));
  } else {
    render_report(out, report);
  }
  return report.satisfied ? kOk : kNegative;
}

Json mlrp_or_error(const JointTable& t, const std::string& x, const std::string& y,
                   std::optional<MlrpResult>& result, std::string& error) {
  try {
    result = mlrp_check(t, x, y);
    return to_json(*result);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroColumn) throw;
    error = e.what();
    return {{"error", error}};
  }
}

int cmd_dependence(const CliConfig& c, std::ostream& out) {
  const auto table = load_distribution(c.dist_path);
  const auto forward = influence_sign(table, c.x, c.y, c.given);
  const auto reverse = influence_sign(table, c.y, c.x, c.given);
  std::optional<MlrpResult> mlrp;
  std::string mlrp_error;
  Json mlrp_json = mlrp_or_error(table, c.x, c.y, mlrp, mlrp_error);
  const auto tp2 = tp2_check(table, c.x, c.y);
  const auto assoc = association_check(table, c.x, c.y);
  if (c.output == OutputFormat::Json) {
    emit(out, {{"x", c.x},
               {"y", c.y},
               {"context", c.given},
               {"forward", to_json(forward)},
               {"reverse", to_json(reverse)},
               {"mlrp", mlrp_json},
               {"tp2", to_json(tp2)},
               {"association", to_json(assoc)}});
    return kOk;
  }
  std::string ctx = c.given.empty() ? "" : " given {" + join(c.given) + "}";
  render_verdict(out, c.x + " -> " + c.y + ctx, forward);
  render_verdict(out, c.y + " -> " + c.x + ctx, reverse);
  if (mlrp) {
    render_mlrp(out, *mlrp);
  } else {
    out << "MLRP: undefined (" << mlrp_error << ")\n";
  }
  render_tp2(out, tp2);
  render_association(out, assoc);
  return kOk;
}

int cmd_propagate(const CliConfig& c, std::ostream& out) {
  const auto qpn = load_network(c.network_path);
  const auto eq = c.observe.rfind('=');
  if (eq == std::string::npos)
    fail(ErrorKind::InvalidArgument, "--observe expects NODE=+ or NODE=-");
  const auto node = c.observe.substr(0, eq);
  const auto sign = parse_evidence_sign(c.observe.substr(eq + 1));
  const auto result = propagate(qpn, node, sign, c.mode);
  if (c.output == OutputFormat::Json) {
    emit(out, to_json(result, c.trails));
  } else {
    render_propagation(out, result, c.trails);
  }
  return kOk;
}

int cmd_query(const CliConfig& c, std::ostream& out) {
  const auto qpn = load_network(c.network_path);
  const auto result = query(qpn, c.from, c.to, c.mode);
  if (c.output == OutputFormat::Json) {
    emit(out, to_json(result));
    return kOk;
  }
  out << "influence of " << c.from << " on " << c.to << " (" << to_string(c.mode)
      << " mode): " << to_string(result.sign) << "\n";
  for (const auto& s : result.transcript) {
    out << "  " << to_string(s.kind) << " " << s.node;
    if (s.kind == QueryStep::Kind::Reverse) out << " -> " << s.other;
    out << "\n";
  }
  return kOk;
}

int cmd_reduce(const CliConfig& c, std::ostream& out) {
  const auto reduced = reduce_vertex(load_network(c.network_path), c.node);
  if (c.output == OutputFormat::Json) {
    emit(out, to_json(reduced));
  } else {
    render_dag(out, reduced);
  }
  return kOk;
}

int cmd_reverse(const CliConfig& c, std::ostream& out) {
  const auto comma = c.edge.find(',');
  if (comma == std::string::npos) fail(ErrorKind::InvalidArgument, "--edge expects FROM,TO");
  const auto reversed = reverse_edge(load_network(c.network_path), c.edge.substr(0, comma),
                                     c.edge.substr(comma + 1), c.mode);
  if (c.output == OutputFormat::Json) {
    emit(out, to_json(reversed));
  } else {
    render_dag(out, reversed);
  }
  return kOk;
}

int cmd_dsep(const CliConfig& c, std::ostream& out) {
  const auto dag = load_network(c.network_path);
  const NameSet given(c.given.begin(), c.given.end());
  const bool separated = d_separated(dag, c.x, c.y, given);
  const auto trails = active_trails(dag, c.x, c.y, given);
  if (c.output == OutputFormat::Json) {
    Json list = Json::array();
    for (const auto& t : trails) list.push_back(to_json(t));
    emit(out, {{"a", c.x},
               {"b", c.y},
               {"given", std::vector<std::string>(given.begin(), given.end())},
               {"d_separated", separated},
               {"active_trails", list}});
    return kOk;
  }
  out << c.x << " and " << c.y << " are " << (separated ? "d-separated" : "d-connected")
      << " given {" << join({given.begin(), given.end()}) << "}\n";
  for (const auto& t : trails) out << "  " << fmt(t) << "\n";
  return kOk;
}

int demo_table1(const CliConfig& c, std::ostream& out) {
  const auto t = table1_fixture();
  const auto forward = influence_sign(t, "X", "Y");
  const auto reverse = influence_sign(t, "Y", "X");
  const auto mlrp = mlrp_check(t, "X", "Y");
  const auto tp2 = tp2_check(t, "X", "Y");
  const auto assoc = association_check(t, "X", "Y");
  const auto check = satisfies_qpn(t, two_node_qpn());
  if (c.output == OutputFormat::Json) {
    emit(out, {{"table", to_json(t)},
               {"marginal_x", to_json(cdf_of(t, "X"))},
               {"marginal_y", to_json(cdf_of(t, "Y"))},
               {"forward", to_json(forward)},
               {"reverse", to_json(reverse)},
               {"mlrp", to_json(mlrp)},
               {"tp2", to_json(tp2)},
               {"association", to_json(assoc)},
               {"two_node_qpn", to_json(check)}});
    return kOk;
  }
  out << "joint of (X, Y), rows X = 1..3, columns Y = 1..3\n";
  for (std::size_t a = 0; a < 3; ++a) {
    out << "  ";
    for (std::size_t b = 0; b < 3; ++b) out << std::setw(8) << fmt(t[a * 3 + b]);
    out << "\n";
  }
  render_verdict(out, "X -> Y", forward);
  render_verdict(out, "Y -> X", reverse);
  render_mlrp(out, mlrp);
  render_tp2(out, tp2);
  render_association(out, assoc);
  out << "QPN X -> Y (+): ";
  render_report(out, check);
  return kOk;
}

int demo_shuttle(const CliConfig& c, std::ostream& out) {
  const auto qpn = shuttle_qpn();
  const auto table = shuttle_distribution(c.fault_prob);
  const auto report = satisfies_qpn(table, qpn);
  const auto forward = influence_sign(table, "HeOxTemp", "HeOxTempProbe");
  const auto reverse = influence_sign(table, "HeOxTempProbe", "HeOxTemp");
  const auto prop = propagate(qpn, "HeOxTempProbe", Sign::Plus, c.mode);
  if (c.output == OutputFormat::Json) {
    emit(out, {{"fault_prob", c.fault_prob},
               {"satisfies", to_json(report)},
               {"temp_to_probe", to_json(forward)},
               {"probe_to_temp", to_json(reverse)},
               {"propagation", to_json(prop, c.trails)}});
    return kOk;
  }
  out << "shuttle distribution (fault probability " << fmt(c.fault_prob) << "): ";
  render_report(out, report);
  render_verdict(out, "HeOxTemp -> HeOxTempProbe", forward);
  render_verdict(out, "HeOxTempProbe -> HeOxTemp", reverse);
  render_propagation(out, prop, c.trails);
  return kOk;
}

int cmd_demo(const CliConfig& c, std::ostream& out) {
  if (c.demo == "table1") return demo_table1(c, out);
  if (c.demo == "shuttle") return demo_shuttle(c, out);
  fail(ErrorKind::InvalidArgument, "unknown demo '" + c.demo + "' (expected table1 or shuttle)");
}

int cmd_find_counterexample(const CliConfig& c, std::ostream& out) {
  const auto qpn = load_network(c.network_path);
  const auto claim = parse_claim(c.claim);
  const auto report = find_counterexample(qpn, claim, c.seed, c.trials);
  if (c.output == OutputFormat::Json) {
    emit(out, to_json(report));
  } else if (report.found) {
    out << "counterexample to " << to_string(claim) << " after " << report.trials_used
        << " trials (seed " << report.seed << ")\n";
    render_verdict(out, claim.source + " -> " + claim.target, *report.claim_verdict);
    out << "table: " << to_json(*report.table).dump() << "\n";
    out << "QPN check: ";
    render_report(out, *report.qpn_report);
  } else {
    out << "no counterexample to " << to_string(claim) << " in " << report.trials_used
        << " trials (seed " << report.seed << ")\n";
  }
  return report.found ? kOk : kNegative;
}

}  // namespace

int parse_args(const std::vector<std::string>& args, CliConfig& config, bool& help_shown,
               std::ostream& out, std::ostream& err) {
  help_shown = false;
  CLI::App app{"Qualitative probabilistic network engine", "qpn"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string mode = "sound", output = "text";
  app.add_option("--mode", mode, "Inference mode")
      ->check(CLI::IsMember({"classical", "sound"}));
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--trails", config.trails, "Include trail logs");

  auto* check = app.add_subcommand("check", "Check a distribution against a network");
  check->add_option("--network", config.network_path)->required();
  check->add_option("--dist", config.dist_path)->required();

  auto* dep = app.add_subcommand("dependence", "Pairwise dependence report");
  dep->add_option("--dist", config.dist_path)->required();
  dep->add_option("--x", config.x)->required();
  dep->add_option("--y", config.y)->required();
  dep->add_option("--context", config.given, "Conditioning variables")->delimiter(',');

  auto* prop = app.add_subcommand("propagate", "Propagate a qualitative observation");
  prop->add_option("--network", config.network_path)->required();
  prop->add_option("--observe", config.observe, "NODE=+ or NODE=-")->required();

  auto* qry = app.add_subcommand("query", "Influence of one variable on another");
  qry->add_option("--network", config.network_path)->required();
  qry->add_option("--from", config.from)->required();
  qry->add_option("--to", config.to)->required();

  auto* red = app.add_subcommand("reduce", "Remove a node with at most one parent");
  red->add_option("--network", config.network_path)->required();
  red->add_option("--node", config.node)->required();

  auto* rev = app.add_subcommand("reverse", "Reverse an edge");
  rev->add_option("--network", config.network_path)->required();
  rev->add_option("--edge", config.edge, "FROM,TO")->required();

  auto* dsep = app.add_subcommand("dsep", "d-separation test");
  dsep->add_option("--network", config.network_path)->required();
  dsep->add_option("--a", config.x)->required();
  dsep->add_option("--b", config.y)->required();
  dsep->add_option("--given", config.given)->delimiter(',');

  auto* demo = app.add_subcommand("demo", "Built-in scenarios");
  demo->add_option("name", config.demo, "table1 or shuttle")
      ->required()
      ->check(CLI::IsMember({"table1", "shuttle"}));
  demo->add_option("--fault-prob", config.fault_prob, "Probe fault probability (shuttle)");

  auto* fce = app.add_subcommand("find-counterexample", "Search for a refuting distribution");
  fce->add_option("--network", config.network_path)->required();
  fce->add_option("--claim", config.claim, "SOURCE->TARGET:SIGN")->required();
  fce->add_option("--seed", config.seed);
  fce->add_option("--trials", config.trials)->check(CLI::PositiveNumber);

  // CLI11 expects arguments in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    help_shown = true;
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  config.mode = mode == "classical" ? Mode::Classical : Mode::Sound;
  config.output = output == "json" ? OutputFormat::Json : OutputFormat::Text;
  return kOk;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, int (*)(const CliConfig&, std::ostream&)> commands = {
      {"check", cmd_check},       {"dependence", cmd_dependence},
      {"propagate", cmd_propagate}, {"query", cmd_query},
      {"reduce", cmd_reduce},     {"reverse", cmd_reverse},
      {"dsep", cmd_dsep},         {"demo", cmd_demo},
      {"find-counterexample", cmd_find_counterexample}};
  const auto it = commands.find(config.subcommand);
  if (it == commands.end()) {
    err << "error: unknown subcommand '" << config.subcommand << "'\n";
    return kInputError;
  }
  try {
    return it->second(config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig config;
  bool help = false;
  if (const int rc = parse_args(args, config, help, out, err); rc != kOk || help) return rc;
  return run(config, out, err);
}

}  // namespace qpn::cli
