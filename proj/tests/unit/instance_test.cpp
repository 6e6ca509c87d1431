#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "oltsp/instance.hpp"
#include "support/fixtures.hpp"

using namespace oltsp;

TEST(ValidateInstance, Example1IsValid) {
  EXPECT_TRUE(validate_instance(fixtures::example1()).empty());
}

TEST(ValidateInstance, NegativeRelease) {
  Instance inst = fixtures::example1();
  inst.requests[0].release = -1;
  const Violations v = validate_instance(inst);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("release"), std::string::npos);
}

TEST(ValidateInstance, UnsortedRingNamesPair) {
  Instance inst;
  inst.space = MetricSpace::ring(1.0);
  inst.requests = {{1, Point::on_ring(0.6), 0}, {2, Point::on_ring(0.2), 0}};
  const Violations v = validate_instance(inst);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v[0].find("1"), std::string::npos);
  EXPECT_NE(v[0].find("2"), std::string::npos);
}

TEST(ValidateInstance, IdsMustBeContiguous) {
  Instance inst = fixtures::example1();
  inst.requests[2].id = 7;
  EXPECT_FALSE(validate_instance(inst).empty());
}

TEST(Codec, RoundTripExample1) {
  const Instance inst = fixtures::example1();
  EXPECT_EQ(decode(encode(inst)), inst);
}

TEST(Codec, RoundTripEverySpaceExactly) {
  for (SpaceKind k : {SpaceKind::SemiLine, SpaceKind::Line, SpaceKind::Ring, SpaceKind::Star,
                      SpaceKind::General}) {
    GenParams g;
    g.n = 7;
    g.seed = 99;
    g.release_horizon = 3.3;
    g.symmetric = k != SpaceKind::General;
    const Instance inst = generate_random(g, k);
    const std::string text = encode(inst);
    EXPECT_EQ(decode(text), inst) << to_string(k);
    EXPECT_EQ(encode(decode(text)), text);
  }
}

TEST(Codec, MissingVariant) {
  std::string text = encode(fixtures::example1());
  const auto pos = text.find("\"variant\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 9, "\"varianX\"");
  try {
    decode(text);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_NE(std::string(e.what()).find("missing field: variant"), std::string::npos) << e.what();
  }
}

TEST(Codec, BadRequestNamesEntry) {
  std::string text = encode(fixtures::example1());
  const auto pos = text.find("\"release\"");
  text.replace(pos, 9, "\"relaese\"");
  try {
    decode(text);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_NE(std::string(e.what()).find("requests[0]"), std::string::npos) << e.what();
  }
}

TEST(Codec, EmptyInstance) {
  Instance inst;
  inst.space = MetricSpace::line();
  inst.variant = Variant::Open;
  const Instance back = decode(encode(inst));
  EXPECT_EQ(back.size(), 0);
  EXPECT_EQ(back, inst);
}

TEST(Codec, MalformedText) {
  EXPECT_THROW(decode("{ not json"), DecodeError);
  EXPECT_THROW(decode("[1,2]"), DecodeError);
}

TEST(Codec, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "oltsp_instance_test.json";
  save_instance(fixtures::example1(), path.string());
  EXPECT_EQ(load_instance(path.string()), fixtures::example1());
  std::filesystem::remove(path);
}

TEST(Generate, Deterministic) {
  GenParams g;
  g.n = 6;
  g.seed = 123;
  g.release_horizon = 2;
  for (SpaceKind k : {SpaceKind::SemiLine, SpaceKind::Ring, SpaceKind::Star, SpaceKind::General}) {
    EXPECT_EQ(encode(generate_random(g, k)), encode(generate_random(g, k)));
  }
  GenParams h = g;
  h.seed = 124;
  EXPECT_NE(encode(generate_random(g, SpaceKind::Line)), encode(generate_random(h, SpaceKind::Line)));
}

TEST(Generate, EmptyIsValid) {
  GenParams g;
  const Instance inst = generate_random(g, SpaceKind::Ring);
  EXPECT_EQ(inst.size(), 0);
  EXPECT_TRUE(validate_instance(inst).empty());
}

TEST(Generate, SemiLineDomain) {
  GenParams g;
  g.seed = 1;
  g.n = 5;
  g.release_horizon = 2;
  const Instance inst = generate_random(g, SpaceKind::SemiLine);
  ASSERT_EQ(inst.size(), 5);
  for (const Request& r : inst.requests) {
    EXPECT_GE(r.point.x, 0.0);
    EXPECT_LE(r.point.x, g.extent);
    EXPECT_GE(r.release, 0.0);
    EXPECT_LE(r.release, 2.0);
  }
}

TEST(Generate, AlwaysValid) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (SpaceKind k : {SpaceKind::SemiLine, SpaceKind::Line, SpaceKind::Ring, SpaceKind::Star,
                        SpaceKind::General}) {
      GenParams g;
      g.seed = seed;
      g.n = static_cast<int>(seed % 9);
      g.release_horizon = 1.5;
      g.symmetric = seed % 2 == 0;
      g.ray_count = 1 + static_cast<int>(seed % 5);
      const Instance inst = generate_random(g, k);
      EXPECT_TRUE(validate_instance(inst).empty()) << to_string(k) << " seed " << seed;
    }
  }
}

TEST(Generate, RejectsBadParams) {
  GenParams g;
  g.n = -1;
  EXPECT_THROW(generate_random(g, SpaceKind::Line), std::invalid_argument);
  g.n = 1;
  g.release_horizon = -1;
  EXPECT_THROW(generate_random(g, SpaceKind::Line), std::invalid_argument);
}

TEST(Canonicalize, SortsRingByPositionThenRelease) {
  Instance inst;
  inst.space = MetricSpace::ring(1.0);
  inst.requests = {{1, Point::on_ring(0.5), 2}, {2, Point::on_ring(0.1), 0},
                   {3, Point::on_ring(0.5), 1}};
  canonicalize(inst);
  EXPECT_EQ(inst.requests[0].point.x, 0.1);
  EXPECT_EQ(inst.requests[1].release, 1);
  EXPECT_EQ(inst.requests[2].release, 2);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(inst.requests[i].id, i + 1);
}
