/* Copyright 2026 The univdef Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "univdef/pack.hpp"

#include <map>
#include <stdexcept>

namespace univdef {

std::string SynthesisPack::to_string() const {
  return "pack(S=" + univdef::to_string(S) + ";pi=" + pi.to_string() + ";u=" + u.to_string() +
         ";c=" + c.to_string() + ")";
}

SynthesisPack SynthesisPack::parse(const FieldDesc& field, const std::string& text_in) {
  std::string text;
  for (char ch : text_in) {
    if (ch != ' ') text += ch;
  }
  if (text.rfind("pack(", 0) != 0 || text.back() != ')') {
    throw std::invalid_argument("bad pack record '" + text_in + "'");
  }
  std::string inner = text.substr(5, text.size() - 6);
  std::map<std::string, std::string> fields;
  int depth = 0;
  std::string cur;
  auto flush = [&]() {
    auto eq = cur.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad pack field '" + cur + "'");
    fields[cur.substr(0, eq)] = cur.substr(eq + 1);
    cur.clear();
  };
  for (char ch : inner) {
    if (ch == '{' || ch == '(' || ch == '[') ++depth;
    if (ch == '}' || ch == ')' || ch == ']') --depth;
    if (ch == ';' && depth == 0) {
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  for (const char* key : {"S", "pi", "u", "c"}) {
    if (!fields.count(key)) throw std::invalid_argument(std::string("pack record lacks ") + key);
  }
  SynthesisPack pack;
  pack.field = field;
  pack.S = parse_place_set(field, fields["S"]);
  pack.pi = parse_element(field, fields["pi"]);
  pack.u = parse_element(field, fields["u"]);
  pack.c = parse_element(field, fields["c"]);
  return pack;
}

}  // namespace univdef
