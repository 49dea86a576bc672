/*
 * Copyright 2026 The coexplore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "coexplore/world_model.h"

#include <random>
#include <stdexcept>
#include <vector>

#include "coexplore/errors.h"
#include "gtest/gtest.h"
#include "test_maps.h"

namespace coexplore {
namespace {

using testing::GridFromRows;
using testing::RandomGrid;

TEST(LoadWorldTest, AllFreeBlock) {
  const WorldModel world = LoadWorld("resolution 0.1\n...\n...\n...\n");
  EXPECT_EQ(world.width(), 3);
  EXPECT_EQ(world.height(), 3);
  EXPECT_DOUBLE_EQ(world.resolution(), 0.1);
  EXPECT_EQ(world.FreeCount(), 9u);
}

TEST(LoadWorldTest, ObstacleClassesAndRowOrder) {
  const WorldModel world = LoadWorld("resolution 1\n.#.\nx..\n");
  // First text row is the top of the world.
  EXPECT_DOUBLE_EQ(world.ObstacleHeight({1, 1}), kTallObstacleHeight);
  EXPECT_DOUBLE_EQ(world.ObstacleHeight({0, 0}), kLowObstacleHeight);
  EXPECT_TRUE(world.IsFree({0, 1}));
  EXPECT_TRUE(world.IsFree({2, 0}));
  EXPECT_EQ(world.FreeCount(), 4u);
}

TEST(LoadWorldTest, RaggedRowsReportTheOffendingLine) {
  try {
    LoadWorld("resolution 1\n...\n....\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    // Line numbers count the header, so the second row is file line 3.
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(LoadWorldTest, UnknownCharacterReportsColumn) {
  try {
    LoadWorld("resolution 1\n..?\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(LoadWorldTest, BadHeader) {
  EXPECT_THROW(LoadWorld("res 1\n...\n"), ParseError);
  EXPECT_THROW(LoadWorld("resolution -1\n...\n"), ParseError);
  EXPECT_THROW(LoadWorld("resolution 1\n"), ParseError);
  EXPECT_THROW(LoadWorld(""), ParseError);
}

TEST(LoadWorldTest, AcceptsCarriageReturns) {
  const WorldModel world = LoadWorld("resolution 0.5\r\n.#\r\n..\r\n");
  EXPECT_EQ(world.width(), 2);
  EXPECT_EQ(world.FreeCount(), 3u);
}

TEST(GridTransformTest, CellCenterConvention) {
  const OccupancyGrid a(4, 4, 1.0, {0.0, 0.0});
  const Point2 p = a.GridToWorld({0, 0});
  EXPECT_DOUBLE_EQ(p.x, 0.5);
  EXPECT_DOUBLE_EQ(p.y, 0.5);

  const OccupancyGrid b(100, 100, 0.1, {-5.0, -5.0});
  const Point2 q = GridToWorld(b, 50, 50);
  EXPECT_NEAR(q.x, 0.05, 1e-12);
  EXPECT_NEAR(q.y, 0.05, 1e-12);
  EXPECT_THROW(a.GridToWorld({4, 0}), std::out_of_range);
  EXPECT_THROW(a.GridToWorld({0, -1}), std::out_of_range);
}

TEST(GridTransformTest, FloorRuleLookup) {
  const OccupancyGrid a(3, 1, 1.0, {0.0, 0.0});
  EXPECT_EQ(*a.WorldToGrid({0.5, 0.5}), (CellIndex{0, 0}));
  EXPECT_EQ(*WorldToGrid(a, 2.999, 0.0), (CellIndex{2, 0}));
  EXPECT_FALSE(a.WorldToGrid({-0.1, 0.0}).has_value());
  EXPECT_FALSE(a.WorldToGrid({3.0, 0.0}).has_value());
  EXPECT_FALSE(a.WorldToGrid({0.0, 1.0}).has_value());
}

TEST(GridTransformTest, RoundTripOnEveryCell) {
  const OccupancyGrid grid(17, 11, 0.05, {-0.3, 1.7});
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      const auto back = grid.WorldToGrid(grid.GridToWorld({x, y}));
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, (CellIndex{x, y}));
    }
  }
}

TEST(OccupancyGridTest, RejectsValuesOutsideTheAlphabet) {
  EXPECT_THROW(OccupancyGrid(1, 1, 1.0, {}, std::vector<Occupancy>{50}),
               std::invalid_argument);
  EXPECT_THROW(OccupancyGrid(2, 1, 1.0, {}, std::vector<Occupancy>{0}),
               std::invalid_argument);
  EXPECT_TRUE(IsValidOccupancy(-1));
  EXPECT_FALSE(IsValidOccupancy(1));
}

TEST(MergeMapsTest, SingleMapIsCopied) {
  std::mt19937_64 rng(7);
  const OccupancyGrid a = RandomGrid(rng, 5, 4, 0.2, {1.0, -0.4});
  const std::vector<OccupancyGrid> maps{a};
  EXPECT_EQ(MergeMaps(maps, 0), a);
}

// Independent statement of the dominance rule.
Occupancy DominantValue(Occupancy a, Occupancy b) {
  if (a == kOccupied || b == kOccupied) return kOccupied;
  if (a == kFree || b == kFree) return kFree;
  return kUnknown;
}

TEST(MergeMapsTest, ValuePairTable) {
  const Occupancy values[] = {kUnknown, kFree, kOccupied};
  for (Occupancy a : values) {
    for (Occupancy b : values) {
      const std::vector<OccupancyGrid> maps{
          OccupancyGrid(1, 1, 1.0, {}, std::vector<Occupancy>{a}),
          OccupancyGrid(1, 1, 1.0, {}, std::vector<Occupancy>{b})};
      EXPECT_EQ((MergeMaps(maps, 0)[{0, 0}]), DominantValue(a, b))
          << int{a} << " vs " << int{b};
    }
  }
}

TEST(MergeMapsTest, ExtentIsTheBoundingBoxOfInputs) {
  const OccupancyGrid a = GridFromRows({"..", ".."}, 0.5, {0.0, 0.0});
  const OccupancyGrid b = GridFromRows({"##"}, 0.5, {1.0, 1.5});
  const std::vector<OccupancyGrid> maps{a, b};
  const OccupancyGrid merged = MergeMaps(maps, 0);
  EXPECT_EQ(merged.width(), 4);
  EXPECT_EQ(merged.height(), 4);
  EXPECT_DOUBLE_EQ(merged.origin().x, 0.0);
  EXPECT_DOUBLE_EQ(merged.origin().y, 0.0);
  EXPECT_EQ((merged[{0, 0}]), kFree);
  EXPECT_EQ((merged[{2, 3}]), kOccupied);
  EXPECT_EQ((merged[{3, 3}]), kOccupied);
  EXPECT_EQ((merged[{3, 0}]), kUnknown);
}

TEST(MergeMapsTest, AlgebraOnRandomMaps) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const OccupancyGrid a = RandomGrid(rng, 6, 6);
    const OccupancyGrid b = RandomGrid(rng, 6, 6);
    const OccupancyGrid c = RandomGrid(rng, 6, 6);
    const std::vector<OccupancyGrid> ab{a, b};
    const std::vector<OccupancyGrid> ba{b, a};
    const OccupancyGrid m_ab = MergeMaps(ab, 0);
    EXPECT_EQ(m_ab, MergeMaps(ba, 0));

    const std::vector<OccupancyGrid> again{m_ab, b};
    EXPECT_EQ(MergeMaps(again, 0), m_ab);

    const std::vector<OccupancyGrid> bc{b, c};
    const std::vector<OccupancyGrid> left{m_ab, c};
    const std::vector<OccupancyGrid> right{a, MergeMaps(bc, 0)};
    EXPECT_EQ(MergeMaps(left, 0), MergeMaps(right, 0));

    for (int y = 0; y < 6; ++y) {
      for (int x = 0; x < 6; ++x) {
        ASSERT_EQ((m_ab[{x, y}]), DominantValue(a[{x, y}], b[{x, y}]));
      }
    }
  }
}

TEST(MergeMapsTest, MismatchedResolutionThrows) {
  const std::vector<OccupancyGrid> maps{OccupancyGrid(2, 2, 0.1, {}),
                                        OccupancyGrid(2, 2, 0.2, {})};
  EXPECT_THROW(MergeMaps(maps, 0), GeometryMismatch);
  EXPECT_THROW(MergeMaps(maps, 2), std::out_of_range);
}

TEST(UavPriorMapTest, FullSweepOfFreeWorld) {
  const WorldModel world = LoadWorld("resolution 1\n.....\n.....\n.....\n");
  const OccupancyGrid prior = UavPriorMap(world, 1.0, 10.0);
  for (Occupancy v : prior.cells()) EXPECT_EQ(v, kFree);
}

TEST(UavPriorMapTest, HeightFilter) {
  const WorldModel world =
      LoadWorld("resolution 1\n.....\n.....\n..x..\n.....\n....#\n");
  const OccupancyGrid prior = UavPriorMap(world, 1.0, 10.0);
  EXPECT_EQ((prior[{2, 2}]), kFree);
  EXPECT_EQ((prior[{4, 0}]), kOccupied);
  EXPECT_EQ(prior.KnownCount(), 25u);
}

TEST(UavPriorMapTest, NarrowFootprintLeavesGaps) {
  const WorldModel world = LoadWorld(
      "resolution 1\n..........\n..........\n..........\n..........\n"
      "..........\n..........\n..........\n..........\n");
  // Rows at y = 2 and 6 with a 0.5 m half-width see one cell row each.
  const OccupancyGrid prior = UavPriorMap(world, UavSweep{1.0, 4.0, 0.5});
  for (int y = 0; y < world.height(); ++y) {
    const bool swept = y == 1 || y == 2 || y == 5 || y == 6;
    for (int x = 0; x < world.width(); ++x) {
      EXPECT_EQ((prior[{x, y}]), swept ? kFree : kUnknown) << x << "," << y;
    }
  }
}

TEST(UavPriorMapTest, NeverMarksLowObstacles) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<double> heights(30 * 20);
  for (double& h : heights) {
    const int k = pick(rng);
    h = k == 0 ? kLowObstacleHeight : k == 1 ? kTallObstacleHeight : 0.0;
  }
  const WorldModel world(30, 20, 0.25, heights);
  const OccupancyGrid prior = UavPriorMap(world, 1.0, 1.0);
  for (int y = 0; y < world.height(); ++y) {
    for (int x = 0; x < world.width(); ++x) {
      if (world.ObstacleHeight({x, y}) < 1.0) {
        EXPECT_NE((prior[{x, y}]), kOccupied);
      }
    }
  }
}

TEST(UavPriorMapTest, RejectsNonPositiveParameters) {
  const WorldModel world = LoadWorld("resolution 1\n..\n");
  EXPECT_THROW(UavPriorMap(world, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(UavPriorMap(world, 1.0, 0.0), std::invalid_argument);
}

TEST(WorldModelTest, GroundRenderingSeesBothHeights) {
  const WorldModel world = LoadWorld("resolution 1\n.x#\n");
  const OccupancyGrid ground = world.Render(0.2);
  EXPECT_EQ((ground[{0, 0}]), kFree);
  EXPECT_EQ((ground[{1, 0}]), kOccupied);
  EXPECT_EQ((ground[{2, 0}]), kOccupied);
  const OccupancyGrid high = world.Render(1.0);
  EXPECT_EQ((high[{1, 0}]), kFree);
  EXPECT_EQ((high[{2, 0}]), kOccupied);
}

}  // namespace
}  // namespace coexplore
