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

// JSON network and distribution files, and JSON renderings of every result.
//
// Network file:
//   {"variables": [{"name": str, "support": [num, ...]}, ...],
//    "edges": [{"from": str, "to": str, "sign": "+" | "-" | "?"}, ...]}
// Distribution file:
//   {"variables": [...as above...], "probabilities": [num, ...]}
// with probabilities row-major over the variable list. Unknown keys are
// rejected. Load errors are qpn::Error values whose message starts with
// "<file>:<line>:".

#ifndef QPN_IO_HPP
#define QPN_IO_HPP

#include <string>
#include <string_view>

#include "json.hpp"
#include "qpn/dependence.hpp"
#include "qpn/distribution.hpp"
#include "qpn/graph.hpp"
#include "qpn/inference.hpp"
#include "qpn/scenarios.hpp"
#include "qpn/semantics.hpp"

namespace qpn {

using Json = nlohmann::json;

SignedDag parse_network(std::string_view text, std::string_view source = "<network>");
JointTable parse_distribution(std::string_view text, std::string_view source = "<distribution>");
SignedDag load_network(const std::string& path);
JointTable load_distribution(const std::string& path);

Json to_json(const VariableSpec& v);
Json to_json(const JointTable& table);
Json to_json(const SignedEdge& e);
Json to_json(const SignedDag& dag);
Json to_json(const Trail& trail);
Json to_json(const Cdf& cdf);
Json to_json(const InfluenceVerdict& verdict);
Json to_json(const MlrpResult& r);
Json to_json(const Tp2Result& r);
Json to_json(const AssociationResult& r);
Json to_json(const SatisfactionReport& report);
Json to_json(const PropagationResult& result, bool with_trails);
Json to_json(const QueryResult& result);
Json to_json(const CounterexampleReport& report);

}  // namespace qpn

#endif  // QPN_IO_HPP
