// SPDX-License-Identifier: Apache-2.0
//
// coherent-frames: certified numerics for coherent frames on finite groups
// Copyright (C) 2026 The coherent-frames authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "coherent/group_model.hpp"

using namespace coherent;

namespace {
CompactSet set_of(const GroupModel& g, const std::vector<Coords>& elems) {
    std::vector<ElementId> m;
    for (const auto& c : elems) m.push_back(g.at(c));
    return CompactSet(m);
}

CompactSet random_subset(const GroupModel& g, std::mt19937_64& rng, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<ElementId> m;
    for (ElementId x = 0; x < g.size(); ++x)
        if (keep(rng)) m.push_back(x);
    return CompactSet(m);
}
}  // namespace

TEST_CASE("compose and inverse on cyclic groups", "[group]") {
    const auto z8 = GroupModel::cyclic({8});
    CHECK(z8.coords(z8.compose(z8.at({3}), z8.at({6}))) == Coords{1});
    CHECK(z8.coords(z8.inverse(z8.at({3}))) == Coords{5});
    CHECK(z8.inverse(z8.identity()) == z8.identity());

    const auto z44 = GroupModel::cyclic({4, 4});
    CHECK(z44.coords(z44.compose(z44.at({1, 2}), z44.at({3, 3}))) == Coords{0, 1});
    CHECK(z44.coords(z44.inverse(z44.at({1, 2}))) == Coords{3, 2});

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<ElementId> pick(0, z44.size() - 1);
    for (int i = 0; i < 20; ++i) {
        const ElementId x = pick(rng);
        CHECK(z44.compose(z44.identity(), x) == x);
        CHECK(z44.compose(x, z44.identity()) == x);
        CHECK(z44.compose(x, z44.inverse(x)) == z44.identity());
    }
}

TEST_CASE("cyclic composition is associative and closed", "[group]") {
    const auto g = GroupModel::cyclic({3, 4});
    for (ElementId a = 0; a < g.size(); ++a)
        for (ElementId b = 0; b < g.size(); ++b)
            for (ElementId c = 0; c < g.size(); ++c)
                REQUIRE(g.compose(g.compose(a, b), c) == g.compose(a, g.compose(b, c)));
}

TEST_CASE("truncated groups flag escapes instead of wrapping", "[group]") {
    const auto box = GroupModel::truncated({-3}, {3});
    CHECK(box.size() == 7);
    CHECK(box.coords(box.compose(box.at({1}), box.at({2}))) == Coords{3});
    CHECK_FALSE(box.try_compose(box.at({2}), box.at({2})).has_value());
    CHECK_THROWS_AS(box.compose(box.at({2}), box.at({2})), OutOfCarrier);
    CHECK_THROWS_AS(ball(box, 4), OutOfCarrier);
    CHECK(ball(box, 3).size() == 7);

    const auto skew = GroupModel::truncated({-1}, {4});
    CHECK_THROWS_AS(skew.inverse(skew.at({3})), OutOfCarrier);
    CHECK_THROWS_AS(translate_set(box, box.at({3}), ball(box, 1)), OutOfCarrier);
}

TEST_CASE("balls are symmetric neighborhoods", "[group]") {
    const auto z8 = GroupModel::cyclic({8});
    CHECK(ball(z8, 1) == set_of(z8, {{7}, {0}, {1}}));
    CHECK(ball(z8, 0) == set_of(z8, {{0}}));
    CHECK(ball(GroupModel::cyclic({4, 4}), 1).size() == 9);

    for (const auto& g : {GroupModel::cyclic({8}), GroupModel::cyclic({5, 6}), GroupModel::cyclic({4, 4}),
                          GroupModel::truncated({-4, -4}, {4, 4})}) {
        for (long r = 0; r <= 4; ++r) {
            const CompactSet u = ball(g, r);
            REQUIRE(u.contains(g.identity()));
            for (ElementId x = 0; x < g.size(); ++x) {
                const auto inv = g.try_inverse(x);
                if (u.contains(x)) REQUIRE((inv && u.contains(*inv)));
            }
        }
    }
}

TEST_CASE("set algebra", "[group]") {
    const auto z8 = GroupModel::cyclic({8});
    const auto z4 = GroupModel::cyclic({4});
    const auto z44 = GroupModel::cyclic({4, 4});

    const CompactSet k01 = set_of(z8, {{0}, {1}});
    CHECK(product_set(z8, k01, k01) == set_of(z8, {{0}, {1}, {2}}));
    CHECK(product_set(z8, k01, set_of(z8, {{0}})) == k01);
    CHECK(product_set(z4, set_of(z4, {{0}, {2}}), set_of(z4, {{0}, {2}})) == set_of(z4, {{0}, {2}}));

    CHECK(translate_set(z8, z8.at({3}), k01) == set_of(z8, {{3}, {4}}));
    CHECK(translate_set(z8, z8.identity(), k01) == k01);
    CHECK(translate_set(z44, z44.at({1, 0}), set_of(z44, {{0, 0}, {0, 1}})) == set_of(z44, {{1, 0}, {1, 1}}));

    CHECK(complement(z4, set_of(z4, {{0}})) == set_of(z4, {{1}, {2}, {3}}));
    CHECK(complement(z4, whole(z4)).empty());
    CHECK(complement(z4, CompactSet{}) == whole(z4));

    CHECK(measure(z8, set_of(z8, {{7}, {0}, {1}})) == 3.0);
    CHECK(measure(z8, CompactSet{}) == 0.0);
    CHECK(measure(z44, whole(z44)) == 16.0);
}

TEST_CASE("counting Haar measure is left invariant", "[group][property]") {
    const auto g = GroupModel::cyclic({6, 5});
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const CompactSet k = random_subset(g, rng, 0.3);
        for (ElementId y = 0; y < g.size(); y += 7) REQUIRE(measure(g, translate_set(g, y, k)) == measure(g, k));
    }
}

TEST_CASE("product sets are monotone in the left factor", "[group][property]") {
    const auto g = GroupModel::cyclic({12});
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        const CompactSet k = random_subset(g, rng, 0.25);
        std::vector<ElementId> bigger = k.members();
        const CompactSet extra = random_subset(g, rng, 0.2);
        bigger.insert(bigger.end(), extra.begin(), extra.end());
        const CompactSet k2(bigger);
        const CompactSet l = random_subset(g, rng, 0.2);
        REQUIRE(product_set(g, k, l).subset_of(product_set(g, k2, l)));
    }
}

TEST_CASE("separation constant", "[group]") {
    const auto z8 = GroupModel::cyclic({8});
    CHECK(separation_constant(z8, full_point_set(z8), ball(z8, 1)) == 3);
    CHECK(separation_constant(z8, PointSet{{z8.at({0})}}, ball(z8, 2)) == 1);
    CHECK(separation_constant(z8, PointSet{{z8.at({0}), z8.at({0}), z8.at({1})}}, ball(z8, 1)) == 3);
    CHECK_THROWS_AS(separation_constant(z8, full_point_set(z8), set_of(z8, {{0}, {1}})), NonSymmetricNeighborhood);
}

TEST_CASE("separation constant agrees with the indicator-sum formulation", "[group][property]") {
    std::mt19937_64 rng(17);
    const std::vector<GroupModel> groups = {GroupModel::cyclic({16}), GroupModel::cyclic({4, 4}),
                                            GroupModel::cyclic({8, 8}),
                                            GroupModel::truncated({-6, -6}, {6, 6})};
    std::uniform_int_distribution<long> radius(0, 3);
    for (int t = 0; t < 50; ++t) {
        const GroupModel& g = groups[static_cast<std::size_t>(t) % groups.size()];
        std::uniform_int_distribution<ElementId> pick(0, g.size() - 1);
        PointSet x;
        const int n = 1 + t % 20;
        for (int i = 0; i < n; ++i) x.points.push_back(pick(rng));
        const CompactSet u = ball(g, radius(rng));
        REQUIRE(separation_constant(g, x, u) == separation_constant_indicator(g, x, u));
    }
}

TEST_CASE("lattice point sets", "[group]") {
    const auto g = GroupModel::cyclic({16, 16});
    CHECK(lattice_point_set(g, {2, 2}).size() == 64);
    CHECK(lattice_point_set(g, {1, 16}).size() == 16);
    CHECK_THROWS_AS(lattice_point_set(g, {2}), ValidationError);
}
