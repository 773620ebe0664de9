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

#include <cstdint>
#include <random>
#include <vector>

#include "univdef/place.hpp"

namespace univdef {

struct ApproximationTarget {
  Place place;
  FieldElement value;
  int gamma = 0;
};

// x with v_i(x - a_i) > gamma_i for every target. Places must be distinct.
FieldElement weak_approximate(const FieldDesc& field, const std::vector<ApproximationTarget>& targets);

// All elements of height <= H, each once, ascending under height_less.
std::vector<FieldElement> enumerate_by_height(const FieldDesc& field, int H);

// Pseudo-random element of height <= H (uniform over numerator/denominator draws).
FieldElement random_element(const FieldDesc& field, int H, std::mt19937_64& rng);

}  // namespace univdef
