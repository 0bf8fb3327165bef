// Copyright 2026 The bfdcqo Authors
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

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "bfdcqo/hubo.hpp"

namespace bfdcqo {

using json = nlohmann::json;

inline json problem_to_json(const HuboProblem& p) {
  json linear = json::array();
  for (const auto& [i, v] : p.linear()) linear.push_back({i, v});
  json quadratic = json::array();
  for (const auto& [ij, v] : p.quadratic()) quadratic.push_back({ij[0], ij[1], v});
  json cubic = json::array();
  for (const auto& [ijk, v] : p.cubic()) cubic.push_back({ijk[0], ijk[1], ijk[2], v});
  json doc;
  doc["n"] = p.n();
  doc["offset"] = p.offset();
  doc["linear"] = std::move(linear);
  doc["quadratic"] = std::move(quadratic);
  doc["cubic"] = std::move(cubic);
  return doc;
}

inline HuboProblem problem_from_json(const json& doc) {
  try {
    HuboProblem p(doc.at("n").get<std::size_t>());
    p.add_offset(doc.value("offset", 0.0));
    for (const auto& t : doc.value("linear", json::array()))
      p.add_linear(t.at(0).get<Index>(), t.at(1).get<double>());
    for (const auto& t : doc.value("quadratic", json::array()))
      p.add_quadratic(t.at(0).get<Index>(), t.at(1).get<Index>(), t.at(2).get<double>());
    for (const auto& t : doc.value("cubic", json::array()))
      p.add_cubic(t.at(0).get<Index>(), t.at(1).get<Index>(), t.at(2).get<Index>(),
                  t.at(3).get<double>());
    return p;
  } catch (const json::exception& e) {
    throw FormatError(std::string("problem document: ") + e.what());
  }
}

/// Weighted DIMACS-like text:
///   c <comment>
///   w-cnf <n_vars> <n_clauses>
///   <weight> <lit> <lit> <lit> 0
/// Literals are 1-based, negative for negation.
inline void write_wcnf(std::ostream& out, const CnfInstance& c) {
  out << "w-cnf " << c.n_vars() << ' ' << c.clauses().size() << '\n';
  std::ostringstream line;
  line.precision(17);
  for (const auto& clause : c.clauses()) {
    line.str({});
    line << clause.weight;
    for (const auto& lit : clause.literals) {
      const long v = static_cast<long>(lit.var) + 1;
      line << ' ' << (lit.negated ? -v : v);
    }
    line << " 0\n";
    out << line.str();
  }
}

inline std::string wcnf_to_string(const CnfInstance& c) {
  std::ostringstream out;
  write_wcnf(out, c);
  return out.str();
}

inline CnfInstance read_wcnf(std::istream& in) {
  std::string line;
  std::size_t n_vars = 0;
  std::size_t declared = 0;
  bool have_header = false;
  std::vector<Clause> clauses;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == 'c') continue;
    if (head == "w-cnf") {
      if (!(ls >> n_vars >> declared)) throw FormatError("w-cnf: malformed header");
      have_header = true;
      continue;
    }
    if (!have_header) throw FormatError("w-cnf: clause before header");
    Clause clause;
    try {
      clause.weight = std::stod(head);
    } catch (const std::exception&) {
      throw FormatError("w-cnf: bad weight '" + head + "'");
    }
    for (auto& lit : clause.literals) {
      long v = 0;
      if (!(ls >> v) || v == 0) throw FormatError("w-cnf: clause must have three literals");
      lit.negated = v < 0;
      lit.var = static_cast<Index>((v < 0 ? -v : v) - 1);
    }
    long terminator = -1;
    if (!(ls >> terminator) || terminator != 0)
      throw FormatError("w-cnf: clause line must end with 0");
    clauses.push_back(clause);
  }
  if (!have_header) throw FormatError("w-cnf: missing header");
  if (clauses.size() != declared) throw FormatError("w-cnf: clause count mismatch");
  try {
    return CnfInstance(n_vars, std::move(clauses));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("w-cnf: ") + e.what());
  }
}

}  // namespace bfdcqo
