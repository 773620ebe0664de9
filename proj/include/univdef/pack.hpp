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
#pragma once

#include <string>

#include "univdef/place.hpp"

namespace univdef {

// (S, pi, u, c) driving the union construction for V \ S.
struct SynthesisPack {
  FieldDesc field;
  PlaceSet S;
  FieldElement pi, u, c;

  // "pack(S={q:5};pi=5;u=2;c=1)"
  std::string to_string() const;
  static SynthesisPack parse(const FieldDesc& field, const std::string& text);
};

}  // namespace univdef
