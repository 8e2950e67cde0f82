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
// XCSP 2.1 reader for binary instances.
//
// Supported: <domains> with integer values and ranges; <variables>;
// <relations> of arity 2 with semantics supports|conflicts; <predicates>
// whose <functional> expression normalizes to a conjunction of
// comparisons of x-y or |x-y| against a constant (eq ne lt le gt ge, abs,
// sub, add, neg, mul by a constant, and); <constraints> of arity 2
// referencing a relation or predicate. Anything else is reported with the
// line and the name of the offending element. Tuples that fall outside a
// constraint's domains are dropped.

#ifndef MAXRPC_XCSP_HPP_
#define MAXRPC_XCSP_HPP_

#include <expat.h>

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "maxrpc/instance.hpp"
#include "maxrpc/native_format.hpp"

namespace maxrpc {

namespace xcsp_detail {

// ---- functional expressions --------------------------------------------

struct ExprNode {
  enum class Kind { call, ident, integer } kind = Kind::integer;
  std::string name;
  long long value = 0;
  std::vector<ExprNode> args;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, std::string where) : s_(text), where_(std::move(where)) {}

  ExprNode parse() {
    ExprNode n = node();
    skip();
    if (i_ != s_.size()) fail("trailing characters");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(where_ + ": bad functional expression (" + what + ") at offset " +
                     std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  ExprNode node() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    const char c = s_[i_];
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_ + 1;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      ExprNode n;
      n.kind = ExprNode::Kind::integer;
      if (!detail::parse_int(s_.substr(i_, j - i_), n.value)) fail("bad integer");
      i_ = j;
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') fail("unexpected character");
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    ExprNode n;
    n.name = std::string(s_.substr(i_, j - i_));
    i_ = j;
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      n.kind = ExprNode::Kind::call;
      ++i_;
      for (;;) {
        n.args.push_back(node());
        skip();
        if (i_ >= s_.size()) fail("unclosed call");
        if (s_[i_] == ',') {
          ++i_;
          continue;
        }
        if (s_[i_] == ')') {
          ++i_;
          break;
        }
        fail("expected ',' or ')'");
      }
    } else {
      n.kind = ExprNode::Kind::ident;
    }
    return n;
  }

  std::string_view s_;
  std::string where_;
  std::size_t i_ = 0;
};

/// Operand bound to a predicate parameter: scope position 0/1, or constant.
struct Operand {
  int var = -1;
  long long constant = 0;
};

/// cx * x + cy * y + c0
struct Linear {
  long long cx = 0, cy = 0, c0 = 0;
};

struct SymValue {
  enum class Kind { linear, abs, boolean } kind = Kind::linear;
  Linear lin;                // linear, or the argument of abs
  std::vector<Atom> atoms;   // boolean: conjunction
};

class Normalizer {
 public:
  Normalizer(const std::map<std::string, Operand>& params, std::string where)
      : params_(params), where_(std::move(where)) {}

  std::vector<Atom> predicate(const ExprNode& root) {
    SymValue v = eval(root);
    if (v.kind != SymValue::Kind::boolean) unsupported("expression is not a condition");
    return v.atoms;
  }

 private:
  [[noreturn]] void unsupported(const std::string& what) const {
    throw UnsupportedFeature(where_ + ": " + what);
  }

  SymValue eval(const ExprNode& n) {
    using K = ExprNode::Kind;
    if (n.kind == K::integer) return linear({0, 0, n.value});
    if (n.kind == K::ident) {
      auto it = params_.find(n.name);
      if (it == params_.end()) throw ParseError(where_ + ": unknown parameter '" + n.name + "'");
      const Operand& op = it->second;
      if (op.var == 0) return linear({1, 0, 0});
      if (op.var == 1) return linear({0, 1, 0});
      return linear({0, 0, op.constant});
    }
    const std::string& f = n.name;
    auto arity = [&](std::size_t k) {
      if (n.args.size() != k)
        throw ParseError(where_ + ": '" + f + "' takes " + std::to_string(k) + " arguments");
    };
    if (f == "neg" || f == "abs") {
      arity(1);
      Linear a = need_linear(eval(n.args[0]), f);
      if (f == "neg") return linear({-a.cx, -a.cy, -a.c0});
      SymValue v;
      v.kind = SymValue::Kind::abs;
      v.lin = a;
      return v;
    }
    if (f == "add" || f == "sub") {
      arity(2);
      Linear a = need_linear(eval(n.args[0]), f);
      Linear b = need_linear(eval(n.args[1]), f);
      const long long s = f == "add" ? 1 : -1;
      return linear({a.cx + s * b.cx, a.cy + s * b.cy, a.c0 + s * b.c0});
    }
    if (f == "mul") {
      arity(2);
      Linear a = need_linear(eval(n.args[0]), f);
      Linear b = need_linear(eval(n.args[1]), f);
      if (a.cx == 0 && a.cy == 0) std::swap(a, b);
      if (b.cx != 0 || b.cy != 0) unsupported("non-linear 'mul'");
      return linear({a.cx * b.c0, a.cy * b.c0, a.c0 * b.c0});
    }
    if (f == "and") {
      if (n.args.size() < 2) throw ParseError(where_ + ": 'and' needs two arguments");
      SymValue out;
      out.kind = SymValue::Kind::boolean;
      for (const ExprNode& arg : n.args) {
        SymValue v = eval(arg);
        if (v.kind != SymValue::Kind::boolean) unsupported("'and' over a non-condition");
        out.atoms.insert(out.atoms.end(), v.atoms.begin(), v.atoms.end());
      }
      return out;
    }
    static const std::set<std::string> cmps = {"eq", "ne", "lt", "le", "gt", "ge"};
    if (cmps.contains(f)) {
      arity(2);
      return compare(parse_cmp(f), eval(n.args[0]), eval(n.args[1]));
    }
    unsupported("function '" + f + "'");
  }

  SymValue compare(Cmp op, const SymValue& a, const SymValue& b) {
    using K = SymValue::Kind;
    SymValue out;
    out.kind = K::boolean;
    if (a.kind == K::linear && b.kind == K::linear) {
      const Linear d{a.lin.cx - b.lin.cx, a.lin.cy - b.lin.cy, a.lin.c0 - b.lin.c0};
      // d.cx x + d.cy y + d.c0 op 0
      if (d.cx == 1 && d.cy == -1) {
        out.atoms.push_back({Term::diff, op, -d.c0});
        return out;
      }
      if (d.cx == -1 && d.cy == 1) {
        out.atoms.push_back({Term::diff, swap_operands(op), d.c0});
        return out;
      }
      unsupported("comparison is not of the form x - y op k");
    }
    if (a.kind == K::abs && b.kind == K::linear) return abs_atom(op, a.lin, b.lin);
    if (a.kind == K::linear && b.kind == K::abs) return abs_atom(swap_operands(op), b.lin, a.lin);
    unsupported("comparison operands are not arithmetic over x - y");
  }

  SymValue abs_atom(Cmp op, const Linear& inside, const Linear& bound) {
    const bool is_diff = (inside.cx == 1 && inside.cy == -1) || (inside.cx == -1 && inside.cy == 1);
    if (!is_diff || inside.c0 != 0 || bound.cx != 0 || bound.cy != 0)
      unsupported("comparison is not of the form |x - y| op k");
    SymValue out;
    out.kind = SymValue::Kind::boolean;
    out.atoms.push_back({Term::absdiff, op, bound.c0});
    return out;
  }

  Linear need_linear(const SymValue& v, const std::string& f) {
    if (v.kind != SymValue::Kind::linear) unsupported("'" + f + "' over a non-linear operand");
    return v.lin;
  }

  static SymValue linear(Linear l) {
    SymValue v;
    v.lin = l;
    return v;
  }

  const std::map<std::string, Operand>& params_;
  std::string where_;
};

// ---- XML collection ------------------------------------------------------

struct RawDomain {
  std::string text;
  int line = 0;
};
struct RawRelation {
  int arity = 0;
  std::string semantics;
  std::string text;
  int line = 0;
};
struct RawPredicate {
  std::string parameters;
  std::string functional;
  std::string unsupported_form;
  int line = 0;
};
struct RawConstraint {
  std::string name;
  int arity = 0;
  std::string scope;
  std::string reference;
  std::string parameters;
  int line = 0;
};

struct Collector {
  XML_Parser parser = nullptr;
  std::string instance_name;
  std::map<std::string, RawDomain> domains;
  std::vector<std::pair<std::string, std::string>> variables;  // name, domain
  std::vector<int> variable_lines;
  std::map<std::string, RawRelation> relations;
  std::map<std::string, RawPredicate> predicates;
  std::vector<RawConstraint> constraints;
  std::vector<std::string> stack;
  std::string* text = nullptr;  // sink for character data
  std::string current_domain, current_relation, current_predicate;
  std::optional<std::string> error;
  bool error_unsupported = false;

  int line() const { return static_cast<int>(XML_GetCurrentLineNumber(parser)); }

  void fail(const std::string& msg, bool unsupported) {
    if (error) return;
    error = "xcsp line " + std::to_string(line()) + ": " + msg;
    error_unsupported = unsupported;
    XML_StopParser(parser, XML_FALSE);
  }

  static std::string attr(const XML_Char** atts, const char* key) {
    for (int i = 0; atts[i]; i += 2)
      if (std::string_view(atts[i]) == key) return atts[i + 1];
    return {};
  }

  static int to_int_attr(const std::string& s) {
    long long v = 0;
    if (!detail::parse_int(s, v)) return -1;
    return static_cast<int>(v);
  }

  void start(std::string_view el, const XML_Char** atts) {
    const std::string parent = stack.empty() ? "" : stack.back();
    stack.emplace_back(el);
    text = nullptr;
    if (el == "presentation") {
      instance_name = attr(atts, "name");
      const std::string fmt = attr(atts, "format");
      if (!fmt.empty() && fmt != "XCSP 2.1" && fmt != "XCSP 2.0")
        fail("format '" + fmt + "' is not supported (XCSP 2.1 expected)", true);
    } else if (el == "domain") {
      current_domain = attr(atts, "name");
      auto& d = domains[current_domain];
      d.line = line();
      text = &d.text;
    } else if (el == "variable") {
      variables.emplace_back(attr(atts, "name"), attr(atts, "domain"));
      variable_lines.push_back(line());
    } else if (el == "relation") {
      current_relation = attr(atts, "name");
      RawRelation& r = relations[current_relation];
      r.arity = to_int_attr(attr(atts, "arity"));
      r.semantics = attr(atts, "semantics");
      r.line = line();
      if (r.arity != 2)
        fail("relation '" + current_relation + "' has arity " + attr(atts, "arity") +
                 "; only binary relations are supported",
             true);
      else if (r.semantics != "supports" && r.semantics != "conflicts")
        fail("relation '" + current_relation + "' has semantics '" + r.semantics +
                 "'; only supports/conflicts are supported",
             true);
      text = &r.text;
    } else if (el == "predicate") {
      current_predicate = attr(atts, "name");
      predicates[current_predicate].line = line();
    } else if (el == "parameters" && parent == "predicate") {
      text = &predicates[current_predicate].parameters;
    } else if (el == "functional" && parent == "expression") {
      text = &predicates[current_predicate].functional;
    } else if (parent == "expression") {
      predicates[current_predicate].unsupported_form = std::string(el);
    } else if (el == "constraint") {
      RawConstraint c;
      c.name = attr(atts, "name");
      c.arity = to_int_attr(attr(atts, "arity"));
      c.scope = attr(atts, "scope");
      c.reference = attr(atts, "reference");
      c.line = line();
      if (c.arity != 2)
        fail("constraint '" + c.name + "' has arity " + attr(atts, "arity") +
                 "; only binary constraints are supported",
             true);
      else if (c.reference.rfind("global:", 0) == 0)
        fail("constraint '" + c.name + "' references global constraint '" + c.reference + "'",
             true);
      constraints.push_back(std::move(c));
    } else if (el == "parameters" && parent == "constraint") {
      text = &constraints.back().parameters;
    } else if (el == "instance" || el == "domains" || el == "variables" || el == "relations" ||
               el == "predicates" || el == "constraints" || el == "expression") {
      // containers
    } else {
      fail("element <" + std::string(el) + "> is not supported", true);
    }
  }

  void end() {
    if (!stack.empty()) stack.pop_back();
    text = nullptr;
  }

  void chars(const XML_Char* s, int len) {
    if (text) text->append(s, static_cast<std::size_t>(len));
  }
};

inline std::vector<std::string> split_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (auto t : detail::split_ws(s)) {
    // newlines are not handled by split_ws
    std::size_t b = 0;
    while (b < t.size()) {
      std::size_t e = t.find('\n', b);
      if (e == std::string_view::npos) e = t.size();
      if (e > b) out.emplace_back(t.substr(b, e - b));
      b = e + 1;
    }
  }
  return out;
}

}  // namespace xcsp_detail

/// Parses an XCSP 2.1 document restricted to binary constraints. Throws
/// ParseError (malformed, with location) or UnsupportedFeature.
inline InstanceDoc parse_xcsp(std::string_view bytes) {
  using namespace xcsp_detail;
  Collector col;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate(nullptr), &XML_ParserFree);
  col.parser = parser.get();
  XML_SetUserData(parser.get(), &col);
  XML_SetElementHandler(
      parser.get(),
      [](void* ud, const XML_Char* name, const XML_Char** atts) {
        static_cast<Collector*>(ud)->start(name, atts);
      },
      [](void* ud, const XML_Char*) { static_cast<Collector*>(ud)->end(); });
  XML_SetCharacterDataHandler(parser.get(), [](void* ud, const XML_Char* s, int len) {
    static_cast<Collector*>(ud)->chars(s, len);
  });
  const auto status =
      XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (col.error) {
    if (col.error_unsupported) throw UnsupportedFeature(*col.error);
    throw ParseError(*col.error);
  }
  if (status != XML_STATUS_OK)
    throw ParseError("xcsp line " + std::to_string(XML_GetCurrentLineNumber(parser.get())) +
                     " column " + std::to_string(XML_GetCurrentColumnNumber(parser.get())) +
                     ": " + XML_ErrorString(XML_GetErrorCode(parser.get())));

  InstanceDoc doc;
  doc.name = col.instance_name;
  doc.provenance["format"] = "xcsp2.1";

  std::map<std::string, std::vector<int>> domain_values;
  for (const auto& [name, raw] : col.domains) {
    const std::string where = "xcsp line " + std::to_string(raw.line) + ": domain '" + name + "'";
    std::vector<int> values;
    for (const auto& item : split_tokens(raw.text)) detail::append_domain_item(item, values, where);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) throw ParseError(where + ": empty domain");
    domain_values[name] = std::move(values);
  }

  std::unordered_map<std::string, int> var_index;
  for (std::size_t i = 0; i < col.variables.size(); ++i) {
    const auto& [name, dom] = col.variables[i];
    const std::string where = "xcsp line " + std::to_string(col.variable_lines[i]);
    auto it = domain_values.find(dom);
    if (it == domain_values.end())
      throw ParseError(where + ": variable '" + name + "' references unknown domain '" + dom + "'");
    if (!var_index.emplace(name, static_cast<int>(i)).second)
      throw ParseError(where + ": variable '" + name + "' declared twice");
    doc.variables.push_back({name, it->second});
  }

  std::map<std::string, std::vector<std::pair<int, int>>> relation_tuples;
  for (const auto& [name, raw] : col.relations) {
    const std::string where = "xcsp line " + std::to_string(raw.line) + ": relation '" + name + "'";
    std::vector<std::pair<int, int>> tuples;
    std::string_view rest = raw.text;
    while (!rest.empty()) {
      const auto bar = rest.find('|');
      const auto toks = split_tokens(rest.substr(0, bar));
      if (!toks.empty()) {
        if (toks.size() != 2) throw ParseError(where + ": tuple without exactly two values");
        tuples.emplace_back(detail::to_int(toks[0], where), detail::to_int(toks[1], where));
      }
      if (bar == std::string_view::npos) break;
      rest.remove_prefix(bar + 1);
    }
    relation_tuples[name] = std::move(tuples);
  }

  for (const RawConstraint& c : col.constraints) {
    const std::string where =
        "xcsp line " + std::to_string(c.line) + ": constraint '" + c.name + "'";
    const auto scope = split_tokens(c.scope);
    if (scope.size() != 2) throw ParseError(where + ": scope must name two variables");
    ConstraintDoc cd;
    for (int s = 0; s < 2; ++s) {
      auto it = var_index.find(scope[s]);
      if (it == var_index.end())
        throw ParseError(where + ": unknown variable '" + scope[s] + "' in scope");
      (s == 0 ? cd.x : cd.y) = it->second;
    }
    if (cd.x == cd.y) throw UnsupportedFeature(where + ": both scope entries are the same variable");

    if (auto rt = relation_tuples.find(c.reference); rt != relation_tuples.end()) {
      ExtensionalSpec ext;
      ext.supports = col.relations.at(c.reference).semantics == "supports";
      const auto& vx = doc.variables[cd.x].values;
      const auto& vy = doc.variables[cd.y].values;
      for (auto [a, b] : rt->second)
        if (std::binary_search(vx.begin(), vx.end(), a) && std::binary_search(vy.begin(), vy.end(), b))
          ext.tuples.emplace_back(a, b);
      cd.relation = std::move(ext);
    } else if (auto pt = col.predicates.find(c.reference); pt != col.predicates.end()) {
      const RawPredicate& p = pt->second;
      if (!p.unsupported_form.empty())
        throw UnsupportedFeature(where + ": predicate '" + c.reference + "' uses <" +
                                 p.unsupported_form + "> (only <functional> is supported)");
      const auto formal = split_tokens(p.parameters);
      if (formal.size() % 2 != 0)
        throw ParseError(where + ": malformed parameters of predicate '" + c.reference + "'");
      const auto actual = split_tokens(c.parameters);
      if (actual.size() * 2 != formal.size())
        throw ParseError(where + ": expected " + std::to_string(formal.size() / 2) +
                         " parameters for predicate '" + c.reference + "'");
      std::map<std::string, Operand> bind;
      for (std::size_t i = 0; i < actual.size(); ++i) {
        if (formal[2 * i] != "int")
          throw UnsupportedFeature(where + ": parameter type '" + formal[2 * i] + "'");
        Operand op;
        if (actual[i] == scope[0]) {
          op.var = 0;
        } else if (actual[i] == scope[1]) {
          op.var = 1;
        } else if (!detail::parse_int(actual[i], op.constant)) {
          throw ParseError(where + ": parameter '" + actual[i] + "' is neither a scope variable nor an integer");
        }
        bind[formal[2 * i + 1]] = op;
      }
      const std::string pwhere = where + " (predicate '" + c.reference + "')";
      const ExprNode root = ExprParser(p.functional, pwhere).parse();
      cd.relation = IntensionalSpec{Normalizer(bind, pwhere).predicate(root)};
    } else {
      throw ParseError(where + ": unknown reference '" + c.reference + "'");
    }
    doc.constraints.push_back(std::move(cd));
  }
  return doc;
}

}  // namespace maxrpc

#endif  // MAXRPC_XCSP_HPP_
