// Copyright 2026 The maxrpc Authors
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
//
// Line-oriented native instance format and its JSON equivalent. The
// grammar is documented in docs/native-format.md.

#ifndef MAXRPC_NATIVE_FORMAT_HPP_
#define MAXRPC_NATIVE_FORMAT_HPP_

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "maxrpc/instance.hpp"

namespace maxrpc {

/// Malformed input. The message starts with the location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input using a feature outside the supported subset.
class UnsupportedFeature : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_int(std::string_view s, long long& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

inline int to_int(std::string_view s, const std::string& where) {
  long long v = 0;
  if (!parse_int(s, v) || v < INT32_MIN || v > INT32_MAX)
    throw ParseError(where + ": expected an integer, got '" + std::string(s) + "'");
  return static_cast<int>(v);
}

/// Appends the values of one domain item: `v` or `lo..hi`.
inline void append_domain_item(std::string_view item, std::vector<int>& out,
                               const std::string& where) {
  const auto dots = item.find("..");
  if (dots == std::string_view::npos) {
    out.push_back(to_int(item, where));
    return;
  }
  const int lo = to_int(item.substr(0, dots), where);
  const int hi = to_int(item.substr(dots + 2), where);
  if (hi < lo) throw ParseError(where + ": empty range '" + std::string(item) + "'");
  for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
}

inline void check_increasing(const std::vector<int>& v, const std::string& where) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i]) throw ParseError(where + ": domain values must be strictly increasing");
}

inline std::string compress_domain(const std::vector<int>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j + 1 < values.size() && static_cast<long long>(values[j + 1]) == values[j] + 1LL) ++j;
    if (!out.empty()) out += ' ';
    if (j >= i + 2)
      out += std::to_string(values[i]) + ".." + std::to_string(values[j]);
    else
      for (std::size_t k = i; k <= j; ++k) {
        if (k > i) out += ' ';
        out += std::to_string(values[k]);
      }
    i = j + 1;
  }
  return out;
}

}  // namespace detail

/// Serializes to the native text format. Lossless; throws
/// std::invalid_argument for names the line format cannot carry.
inline std::string write_native(const InstanceDoc& doc) {
  auto token = [](const std::string& s, const char* what) {
    if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos || s.front() == '#')
      throw std::invalid_argument(std::string("native format: ") + what + " '" + s +
                                  "' is not a single token");
  };
  if (!doc.name.empty()) token(doc.name, "name");
  for (const auto& [k, v] : doc.provenance) {
    token(k, "meta key");
    if (v.find_first_of("\r\n") != std::string::npos || (!v.empty() && (v.front() == ' ' || v.back() == ' ')))
      throw std::invalid_argument("native format: meta value of '" + k + "' does not fit one line");
  }
  for (const VariableDoc& v : doc.variables) token(v.name, "variable name");
  std::ostringstream os;
  os << "maxrpc-csp 1\n";
  if (!doc.name.empty()) os << "name " << doc.name << "\n";
  for (const auto& [k, v] : doc.provenance) os << "meta " << k << " " << v << "\n";
  for (const VariableDoc& v : doc.variables)
    os << "var " << v.name << " " << detail::compress_domain(v.values) << "\n";
  for (const ConstraintDoc& c : doc.constraints) {
    os << "con " << doc.variables[c.x].name << " " << doc.variables[c.y].name;
    if (const auto* ext = std::get_if<ExtensionalSpec>(&c.relation)) {
      os << (ext->supports ? " supports" : " conflicts");
      for (auto [a, b] : ext->tuples) os << " " << a << "," << b;
    } else {
      os << " pred";
      const auto& atoms = std::get<IntensionalSpec>(c.relation).atoms;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) os << " and";
        os << " " << to_string(atoms[i].term) << " " << to_string(atoms[i].op) << " " << atoms[i].k;
      }
    }
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

inline InstanceDoc read_native(std::string_view text) {
  InstanceDoc doc;
  bool header = false;
  bool ended = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && !ended) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "maxrpc-csp" || tok[1] != "1")
        throw ParseError(where + ": expected header 'maxrpc-csp 1'");
      header = true;
      continue;
    }
    const std::string_view kw = tok[0];
    if (kw == "end") {
      ended = true;
    } else if (kw == "name") {
      if (tok.size() != 2) throw ParseError(where + ": 'name' takes one token");
      doc.name = std::string(tok[1]);
    } else if (kw == "meta") {
      if (tok.size() < 2) throw ParseError(where + ": 'meta' needs a key");
      const auto key_end = static_cast<std::size_t>(tok[1].data() - line.data()) + tok[1].size();
      std::string_view rest = line.substr(key_end);
      while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r')) rest.remove_suffix(1);
      doc.provenance[std::string(tok[1])] = std::string(rest);
    } else if (kw == "var") {
      if (tok.size() < 3) throw ParseError(where + ": 'var' needs a name and a domain");
      VariableDoc v{std::string(tok[1]), {}};
      if (doc.var_index(v.name) >= 0)
        throw ParseError(where + ": variable '" + v.name + "' declared twice");
      for (std::size_t i = 2; i < tok.size(); ++i) detail::append_domain_item(tok[i], v.values, where);
      detail::check_increasing(v.values, where);
      doc.variables.push_back(std::move(v));
    } else if (kw == "con") {
      if (tok.size() < 4) throw ParseError(where + ": 'con' needs two variables and a relation");
      ConstraintDoc c;
      c.x = doc.var_index(std::string(tok[1]));
      c.y = doc.var_index(std::string(tok[2]));
      if (c.x < 0 || c.y < 0) throw ParseError(where + ": unknown variable in scope");
      const std::string_view kind = tok[3];
      if (kind == "supports" || kind == "conflicts") {
        ExtensionalSpec ext;
        ext.supports = kind == "supports";
        for (std::size_t i = 4; i < tok.size(); ++i) {
          const auto comma = tok[i].find(',');
          if (comma == std::string_view::npos)
            throw ParseError(where + ": tuple '" + std::string(tok[i]) + "' is not 'a,b'");
          ext.tuples.emplace_back(detail::to_int(tok[i].substr(0, comma), where),
                                  detail::to_int(tok[i].substr(comma + 1), where));
        }
        c.relation = std::move(ext);
      } else if (kind == "pred") {
        IntensionalSpec in;
        std::size_t i = 4;
        for (;;) {
          if (i + 3 > tok.size()) throw ParseError(where + ": atom needs 'term op k'");
          try {
            in.atoms.push_back(
                {parse_term(tok[i]), parse_cmp(tok[i + 1]), detail::to_int(tok[i + 2], where)});
          } catch (const std::invalid_argument& e) {
            throw ParseError(where + ": " + e.what());
          }
          i += 3;
          if (i == tok.size()) break;
          if (tok[i] != "and") throw ParseError(where + ": expected 'and' between atoms");
          ++i;
        }
        c.relation = std::move(in);
      } else {
        throw ParseError(where + ": unknown relation kind '" + std::string(kind) + "'");
      }
      doc.constraints.push_back(std::move(c));
    } else {
      throw ParseError(where + ": unknown keyword '" + std::string(kw) + "'");
    }
  }
  if (!header) throw ParseError("line 1: missing header 'maxrpc-csp 1'");
  if (!ended) throw ParseError("line " + std::to_string(line_no) + ": missing 'end'");
  return doc;
}

inline nlohmann::json to_json(const InstanceDoc& doc) {
  using nlohmann::json;
  json j;
  j["format"] = "maxrpc-csp";
  j["version"] = 1;
  j["name"] = doc.name;
  j["provenance"] = doc.provenance;
  j["variables"] = json::array();
  for (const VariableDoc& v : doc.variables)
    j["variables"].push_back({{"name", v.name}, {"values", v.values}});
  j["constraints"] = json::array();
  for (const ConstraintDoc& c : doc.constraints) {
    json jc;
    jc["scope"] = {doc.variables[c.x].name, doc.variables[c.y].name};
    if (const auto* ext = std::get_if<ExtensionalSpec>(&c.relation)) {
      jc["semantics"] = ext->supports ? "supports" : "conflicts";
      jc["tuples"] = json::array();
      for (auto [a, b] : ext->tuples) jc["tuples"].push_back({a, b});
    } else {
      jc["predicate"] = json::array();
      for (const Atom& at : std::get<IntensionalSpec>(c.relation).atoms)
        jc["predicate"].push_back({{"term", std::string(to_string(at.term))},
                                   {"op", std::string(to_string(at.op))},
                                   {"k", at.k}});
    }
    j["constraints"].push_back(std::move(jc));
  }
  return j;
}

inline InstanceDoc from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "maxrpc-csp") throw ParseError("json: 'format' must be 'maxrpc-csp'");
    InstanceDoc doc;
    doc.name = j.value("name", "");
    if (j.contains("provenance"))
      doc.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
    for (const auto& jv : j.at("variables")) {
      VariableDoc v{jv.at("name").get<std::string>(), jv.at("values").get<std::vector<int>>()};
      detail::check_increasing(v.values, "json variable '" + v.name + "'");
      doc.variables.push_back(std::move(v));
    }
    for (const auto& jc : j.at("constraints")) {
      ConstraintDoc c;
      const auto& scope = jc.at("scope");
      if (scope.size() != 2) throw UnsupportedFeature("json: only binary scopes are supported");
      c.x = doc.var_index(scope[0].get<std::string>());
      c.y = doc.var_index(scope[1].get<std::string>());
      if (c.x < 0 || c.y < 0) throw ParseError("json: unknown variable in scope");
      if (jc.contains("tuples")) {
        ExtensionalSpec ext;
        ext.supports = jc.value("semantics", "supports") == "supports";
        for (const auto& t : jc.at("tuples")) ext.tuples.emplace_back(t.at(0), t.at(1));
        c.relation = std::move(ext);
      } else {
        IntensionalSpec in;
        for (const auto& a : jc.at("predicate"))
          in.atoms.push_back({parse_term(a.at("term").get<std::string>()),
                              parse_cmp(a.at("op").get<std::string>()), a.at("k").get<long long>()});
        c.relation = std::move(in);
      }
      doc.constraints.push_back(std::move(c));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
}

}  // namespace maxrpc

#endif  // MAXRPC_NATIVE_FORMAT_HPP_
