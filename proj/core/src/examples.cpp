// Copyright 2026 The multicon Authors
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

#include "multicon/examples.hpp"

#include <string>

namespace multicon {

namespace {

// 1-based link and cell literals.
LinkChange add(Node from, Node to) { return {from - 1, to - 1, true}; }
LinkChange remove(Node from, Node to) { return {from - 1, to - 1, false}; }

Partition cells(std::size_t n, std::vector<NodeSet> one_based) {
  for (auto& c : one_based)
    for (auto& v : c) --v;
  return Partition(n, std::move(one_based));
}

IntMatrix subtract_added(const IntMatrix& total, const std::vector<LinkChange>& added) {
  IntMatrix l = total;
  for (const auto& c : added) {
    l(c.to, c.from) += 1;
    l(c.to, c.to) -= 1;
  }
  return l;
}

const IntMatrix& total8() {
  static const IntMatrix m{
      {0, 0, 0, 0, 0, 0, 0, 0},     //
      {0, 1, -1, 0, 0, 0, 0, 0},    //
      {0, -1, 1, 0, 0, 0, 0, 0},    //
      {-1, 0, -1, 2, 0, 0, 0, 0},   //
      {0, 0, 0, -1, 3, 0, -1, -1},  //
      {0, 0, 0, -1, 0, 3, -1, -1},  //
      {0, 0, 0, 0, 0, 0, 1, -1},    //
      {0, 0, 0, 0, 0, 0, -1, 1},
  };
  return m;
}

const IntMatrix& total10() {
  static const IntMatrix m{
      {1, 0, -1, 0, 0, 0, 0, 0, 0, 0},      //
      {0, 1, 0, -1, 0, 0, 0, 0, 0, 0},      //
      {0, 0, 1, -1, 0, 0, 0, 0, 0, 0},      //
      {-1, 0, -1, 2, 0, 0, 0, 0, 0, 0},     //
      {-1, 0, -1, 0, 2, 0, 0, 0, 0, 0},     //
      {0, -1, 0, -1, -1, 3, 0, 0, 0, 0},    //
      {0, 0, 0, 0, -1, -1, 3, 0, 0, -1},    //
      {0, 0, 0, 0, -1, -1, -1, 4, 0, -1},   //
      {0, 0, 0, 0, 0, -1, 0, 0, 1, 0},      //
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
  };
  return m;
}

BuiltinExample eight_agents(int id, std::string summary, LayerMode mode) {
  const std::vector<LinkChange> added{add(4, 5), add(8, 5)};
  return BuiltinExample{id,
                        std::move(summary),
                        subtract_added(total8(), added),
                        cells(8, {{2, 3}, {5, 6}, {7, 8}, {1}, {4}}),
                        mode,
                        total8(),
                        added,
                        false,
                        {}};
}

BuiltinExample ten_agents(int id, std::string summary) {
  const std::vector<LinkChange> added{add(3, 4), add(4, 3), add(4, 6), add(6, 7), add(10, 7)};
  return BuiltinExample{id,
                        std::move(summary),
                        subtract_added(total10(), added),
                        cells(10, {{1, 4}, {2, 3}, {5, 6}, {7, 8}, {9}, {10}}),
                        LayerMode::AddOnly,
                        total10(),
                        added,
                        false,
                        {}};
}

}  // namespace

BuiltinExample builtin_example(int id) {
  switch (id) {
    case 1:
      return eight_agents(1, "8 single integrators, add-only layer", LayerMode::AddOnly);
    case 2:
      return ten_agents(2, "10 single integrators, add-only layer");
    case 3: {
      auto e = eight_agents(3, "8 second-order agents (a = 1, b = 0.8)", LayerMode::AddOnly);
      e.second_order = true;
      e.gains = {{1.0, 0.8, 0.62, 0.98}, {1.0, 0.8, 0.45, 0.98}};
      return e;
    }
    case 4: {
      auto e = ten_agents(4, "10 second-order agents (a = 1, b = 0.8)");
      e.second_order = true;
      e.gains = {{1.0, 0.8, 2.0, 1.8}, {1.0, 0.8, 0.4, 1.8}};
      return e;
    }
    case 5: {
      auto e = eight_agents(5, "8 single integrators, signed layer", LayerMode::Signed);
      e.published_total = IntMatrix();
      e.published_changes = {remove(4, 6)};
      return e;
    }
    case 6: {
      auto e = eight_agents(6, "8 single integrators, signed layer keeping weak connectivity",
                            LayerMode::SignedConnected);
      e.published_total = IntMatrix();
      e.published_changes.clear();
      return e;
    }
    default:
      throw InvalidNode("example " + std::to_string(id) + " does not exist; choose 1..6");
  }
}

}  // namespace multicon
