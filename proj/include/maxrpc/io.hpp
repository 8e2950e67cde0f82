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

#ifndef MAXRPC_IO_HPP_
#define MAXRPC_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "maxrpc/instance.hpp"
#include "maxrpc/native_format.hpp"
#include "maxrpc/xcsp.hpp"

namespace maxrpc {

/// Reads any supported format, sniffed from the first non-blank byte:
/// '<' XCSP, '{' JSON, anything else native text.
inline InstanceDoc read_instance_text(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '<') return parse_xcsp(text);
  if (pos != std::string_view::npos && text[pos] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("json: ") + e.what());
    }
    return from_json(j);
  }
  return read_native(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Loads an instance; the file stem names it when the document does not.
inline InstanceDoc read_instance_file(const std::string& path) {
  InstanceDoc doc = read_instance_text(read_file(path));
  if (doc.name.empty()) {
    const auto slash = path.find_last_of('/');
    std::string stem = path.substr(slash == std::string::npos ? 0 : slash + 1);
    auto dot = stem.find('.');
    if (dot != std::string::npos && dot > 0) stem.resize(dot);
    doc.name = stem;
  }
  doc.provenance["file"] = path;
  return doc;
}

}  // namespace maxrpc

#endif  // MAXRPC_IO_HPP_
