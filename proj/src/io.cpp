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

#include "qpn/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qpn/error.hpp"

namespace qpn {

namespace {

std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Records the line on which every value of a document starts, keyed by JSON
// pointer. Runs the library's SAX parser over a string stream and reads the
// stream position at each event.
class Locator : public nlohmann::json_sax<Json> {
 public:
  Locator(std::istringstream& in, std::string_view text) : in_(in), text_(text) {}

  std::map<std::string, std::size_t> take() { return std::move(lines_); }

  bool null() override { return scalar(); }
  bool boolean(bool) override { return scalar(); }
  bool number_integer(number_integer_t) override { return scalar(); }
  bool number_unsigned(number_unsigned_t) override { return scalar(); }
  bool number_float(number_float_t, const string_t&) override { return scalar(); }
  bool string(string_t&) override { return scalar(); }
  bool binary(binary_t&) override { return scalar(); }

  bool start_object(std::size_t) override {
    mark();
    frames_.push_back({false, {}, 0});
    return true;
  }
  bool key(string_t& k) override {
    frames_.back().key = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override {
    mark();
    frames_.push_back({true, {}, 0});
    return true;
  }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  struct Frame {
    bool array;
    std::string key;
    std::size_t index;
  };

  std::string path() const {
    std::string p;
    for (const auto& f : frames_) p += "/" + (f.array ? std::to_string(f.index) : f.key);
    return p;
  }
  void mark() {
    const auto pos = static_cast<std::size_t>(std::max<std::streamoff>(in_.tellg(), 1));
    // The lexer has consumed at most one character past the token.
    lines_.emplace(path(), line_at(text_, pos - 1));
  }
  bool scalar() {
    mark();
    advance();
    return true;
  }
  bool close() {
    frames_.pop_back();
    advance();
    return true;
  }
  void advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }

  std::istringstream& in_;
  std::string_view text_;
  std::vector<Frame> frames_;
  std::map<std::string, std::size_t> lines_;
};

class Document {
 public:
  Document(std::string_view text, std::string_view source) : source_(source) {
    try {
      root_ = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
      throw Error(ErrorKind::ParseError, where(line_at(text, byte)) +
                                             " ParseError: malformed JSON (" + e.what() + ")");
    }
    std::istringstream in{std::string(text)};
    Locator locator(in, text);
    Json::sax_parse(in, &locator);
    lines_ = locator.take();
  }

  const Json& root() const { return root_; }

  [[noreturn]] void error(ErrorKind kind, const std::string& path,
                          const std::string& message) const {
    const std::string tag = std::string(to_string(kind)) + ": ";
    const std::string body = message.starts_with(tag) ? message : tag + message;
    throw Error(kind, where(line_of(path)) + " " + body);
  }

  void require_object(const Json& node, const std::string& path,
                      std::initializer_list<std::string_view> keys) const {
    if (!node.is_object()) error(ErrorKind::ParseError, path, "expected a JSON object");
    for (const auto& [k, _] : node.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end())
        error(ErrorKind::ParseError, path + "/" + k, "unknown key '" + k + "'");
    }
    for (auto k : keys) {
      if (!node.contains(std::string(k)))
        error(ErrorKind::ParseError, path, "missing key '" + std::string(k) + "'");
    }
  }

  const Json& array_at(const Json& node, const std::string& key, const std::string& path) const {
    const auto& a = node.at(key);
    if (!a.is_array()) error(ErrorKind::ParseError, path + "/" + key, "'" + key + "' must be an array");
    return a;
  }

  std::string string_at(const Json& node, const std::string& key, const std::string& path) const {
    const auto& s = node.at(key);
    if (!s.is_string()) error(ErrorKind::ParseError, path + "/" + key, "'" + key + "' must be a string");
    return s.get<std::string>();
  }

  std::vector<double> numbers(const Json& array, const std::string& path) const {
    std::vector<double> out;
    for (std::size_t k = 0; k < array.size(); ++k) {
      if (!array[k].is_number())
        error(ErrorKind::ParseError, path + "/" + std::to_string(k), "expected a number");
      out.push_back(array[k].get<double>());
    }
    return out;
  }

 private:
  std::string where(std::size_t line) const {
    return std::string(source_) + ":" + std::to_string(line) + ":";
  }

  std::size_t line_of(std::string path) const {
    while (true) {
      if (auto it = lines_.find(path); it != lines_.end()) return it->second;
      if (path.empty()) return 1;
      path.erase(path.rfind('/'));
    }
  }

  std::string source_;
  Json root_;
  std::map<std::string, std::size_t> lines_;
};

std::vector<VariableSpec> parse_variables(const Document& doc) {
  const auto& vars = doc.array_at(doc.root(), "variables", "");
  std::vector<VariableSpec> out;
  std::set<std::string> names;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const std::string path = "/variables/" + std::to_string(k);
    doc.require_object(vars[k], path, {"name", "support"});
    VariableSpec v{doc.string_at(vars[k], "name", path),
                   doc.numbers(doc.array_at(vars[k], "support", path), path + "/support")};
    try {
      validate(v);
    } catch (const Error& e) {
      doc.error(e.kind(), path, std::string(e.what()));
    }
    if (!names.insert(v.name).second)
      doc.error(ErrorKind::DuplicateVariable, path, "variable '" + v.name + "' declared twice");
    out.push_back(std::move(v));
  }
  if (out.empty()) doc.error(ErrorKind::ParseError, "/variables", "no variables declared");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path + ":0: ParseError: cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json assignment(const Assignment& a) {
  Json out = Json::object();
  for (const auto& [k, v] : a) out[k] = v;
  return out;
}

Json cells(const std::vector<Cell>& cs) {
  Json out = Json::array();
  for (const auto& [x, y] : cs) out.push_back({x, y});
  return out;
}

Json markov_json(const MarkovCheck& c) {
  return {{"variable", c.variable},
          {"parents", c.parents},
          {"nondescendants", c.nondescendants},
          {"max_deviation", c.max_deviation},
          {"ok", c.ok}};
}

Json edge_check_json(const EdgeCheck& c) {
  return {{"edge", to_json(c.edge)},
          {"context", c.context},
          {"verdict", to_json(c.verdict)},
          {"ok", c.ok}};
}

}  // namespace

SignedDag parse_network(std::string_view text, std::string_view source) {
  Document doc(text, source);
  doc.require_object(doc.root(), "", {"variables", "edges"});
  auto variables = parse_variables(doc);

  const auto& edges_json = doc.array_at(doc.root(), "edges", "");
  std::vector<SignedEdge> edges;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t k = 0; k < edges_json.size(); ++k) {
    const std::string path = "/edges/" + std::to_string(k);
    doc.require_object(edges_json[k], path, {"from", "to", "sign"});
    SignedEdge e{doc.string_at(edges_json[k], "from", path),
                 doc.string_at(edges_json[k], "to", path), Sign::Question};
    const auto sign_text = doc.string_at(edges_json[k], "sign", path);
    const auto sign = parse_sign(sign_text);
    if (!sign || *sign == Sign::Zero)
      doc.error(ErrorKind::InvalidEdge, path + "/sign",
                "edge sign must be \"+\", \"-\" or \"?\", got \"" + sign_text + "\"");
    e.sign = *sign;
    for (const auto* end : {&e.from, &e.to}) {
      const bool known = std::any_of(variables.begin(), variables.end(),
                                     [&](const VariableSpec& v) { return v.name == *end; });
      if (!known) doc.error(ErrorKind::UnknownVariable, path, "edge endpoint '" + *end + "' is not declared");
    }
    if (e.from == e.to) doc.error(ErrorKind::InvalidEdge, path, "self-loop on '" + e.from + "'");
    if (!seen.insert({e.from, e.to}).second)
      doc.error(ErrorKind::DuplicateEdge, path, "edge " + e.from + "->" + e.to + " declared twice");
    edges.push_back(std::move(e));
  }
  try {
    return SignedDag(std::move(variables), std::move(edges));
  } catch (const Error& e) {
    doc.error(e.kind(), "/edges", e.what());
  }
}

JointTable parse_distribution(std::string_view text, std::string_view source) {
  Document doc(text, source);
  doc.require_object(doc.root(), "", {"variables", "probabilities"});
  auto variables = parse_variables(doc);
  auto probs = doc.numbers(doc.array_at(doc.root(), "probabilities", ""), "/probabilities");
  JointTable table(std::move(variables), std::move(probs));
  try {
    validate(table);
  } catch (const Error& e) {
    doc.error(e.kind(), "/probabilities", e.what());
  }
  return table;
}

SignedDag load_network(const std::string& path) { return parse_network(read_file(path), path); }

JointTable load_distribution(const std::string& path) {
  return parse_distribution(read_file(path), path);
}

Json to_json(const VariableSpec& v) { return {{"name", v.name}, {"support", v.support}}; }

Json to_json(const JointTable& table) {
  Json vars = Json::array();
  for (const auto& v : table.variables()) vars.push_back(to_json(v));
  return {{"variables", vars},
          {"probabilities", std::vector<double>(table.probabilities().begin(),
                                                table.probabilities().end())}};
}

Json to_json(const SignedEdge& e) {
  return {{"from", e.from}, {"to", e.to}, {"sign", std::string(to_string(e.sign))}};
}

Json to_json(const SignedDag& dag) {
  Json vars = Json::array();
  for (const auto& v : dag.variables()) vars.push_back(to_json(v));
  Json edges = Json::array();
  for (const auto& e : dag.edges()) edges.push_back(to_json(e));
  return {{"variables", vars}, {"edges", edges}};
}

Json to_json(const Trail& trail) {
  Json steps = Json::array();
  for (const auto& s : trail.steps) {
    auto j = to_json(s.edge);
    j["direction"] = s.direction == Direction::WithEdge ? "with_edge" : "against_edge";
    steps.push_back(std::move(j));
  }
  return {{"nodes", trail.nodes}, {"steps", steps}};
}

Json to_json(const Cdf& cdf) {
  return {{"support", cdf.support}, {"cumulative", cdf.cumulative}};
}

Json to_json(const InfluenceVerdict& verdict) {
  Json witness = nullptr;
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    witness = {{"context", assignment(w.context)},
               {"high_level", w.high_level},
               {"low_level", w.low_level},
               {"order", std::string(to_string(w.order))},
               {"support_point", w.support_point},
               {"cdf_high", w.cdf_high},
               {"cdf_low", w.cdf_low}};
  }
  Json skipped = Json::array();
  for (const auto& a : verdict.skipped_contexts) skipped.push_back(assignment(a));
  return {{"verdict", std::string(to_string(verdict.verdict))},
          {"witness", witness},
          {"skipped_contexts", skipped}};
}

Json to_json(const MlrpResult& r) {
  Json witness = nullptr;
  if (r.witness) {
    const auto& w = *r.witness;
    witness = {{"x", w.x},
               {"x_prime", w.x_prime},
               {"y", w.y},
               {"y_prime", w.y_prime},
               {"ratio_at_x", number(w.ratio_at_x)},
               {"ratio_at_x_prime", number(w.ratio_at_x_prime)}};
  }
  return {{"holds", r.holds}, {"witness", witness}};
}

Json to_json(const Tp2Result& r) {
  Json witness = nullptr;
  if (r.witness) {
    const auto& w = *r.witness;
    witness = {{"x", w.x},
               {"x_prime", w.x_prime},
               {"y", w.y},
               {"y_prime", w.y_prime},
               {"discordant", w.discordant},
               {"concordant", w.concordant}};
  }
  return {{"holds", r.holds}, {"witness", witness}};
}

Json to_json(const AssociationResult& r) {
  Json witness = nullptr;
  if (r.witness) {
    const auto& w = *r.witness;
    witness = {{"upper_u", cells(w.upper_u)},
               {"upper_v", cells(w.upper_v)},
               {"p_intersection", w.p_intersection},
               {"p_u", w.p_u},
               {"p_v", w.p_v}};
  }
  return {{"holds", r.holds}, {"witness", witness}};
}

Json to_json(const SatisfactionReport& report) {
  Json markov = Json::array(), markov_bad = Json::array();
  for (const auto& c : report.markov_checks) markov.push_back(markov_json(c));
  for (const auto& c : report.markov_violations) markov_bad.push_back(markov_json(c));
  Json edges = Json::array(), edges_bad = Json::array();
  for (const auto& c : report.edge_checks) edges.push_back(edge_check_json(c));
  for (const auto& c : report.edge_violations) edges_bad.push_back(edge_check_json(c));
  return {{"satisfied", report.satisfied},
          {"markov_checks", markov},
          {"markov_violations", markov_bad},
          {"edge_checks", edges},
          {"edge_violations", edges_bad}};
}

Json to_json(const PropagationResult& result, bool with_trails) {
  Json signs = Json::object();
  for (const auto& [node, s] : result.node_signs) signs[node] = std::string(to_string(s));
  Json out = {{"evidence", {{"node", result.evidence_node},
                            {"sign", std::string(to_string(result.evidence_sign))}}},
              {"mode", std::string(to_string(result.mode))},
              {"signs", signs}};
  if (with_trails) {
    Json log = Json::object();
    for (const auto& [node, contributions] : result.trail_log) {
      Json list = Json::array();
      for (const auto& c : contributions) {
        auto t = to_json(c.trail);
        t["sign"] = std::string(to_string(c.sign));
        list.push_back(std::move(t));
      }
      log[node] = std::move(list);
    }
    out["trails"] = std::move(log);
  }
  return out;
}

Json to_json(const QueryResult& result) {
  Json steps = Json::array();
  for (const auto& s : result.transcript) {
    Json edges = Json::array();
    for (const auto& e : s.edges_after) edges.push_back(to_json(e));
    Json step = {{"op", std::string(to_string(s.kind))}, {"node", s.node}, {"edges_after", edges}};
    if (s.kind == QueryStep::Kind::Reverse) {
      step["from"] = s.node;
      step["to"] = s.other;
      step.erase("node");
    }
    steps.push_back(std::move(step));
  }
  return {{"sign", std::string(to_string(result.sign))}, {"transcript", steps}};
}

Json to_json(const CounterexampleReport& report) {
  return {{"found", report.found},
          {"seed", report.seed},
          {"trials_used", report.trials_used},
          {"table", report.table ? to_json(*report.table) : Json(nullptr)},
          {"qpn_report", report.qpn_report ? to_json(*report.qpn_report) : Json(nullptr)},
          {"claim_verdict", report.claim_verdict ? to_json(*report.claim_verdict) : Json(nullptr)}};
}

}  // namespace qpn
