#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "abdhom/json_io.hpp"
#include "abdhom/solver.hpp"

using namespace abdhom;

TEST(ModelJson, RoundTrip) {
  HomModel m(3, {{"p"}, {}, {"p", "q"}, {"q"}});
  json j = model_to_json(m);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(model_from_json(j), m);
  EXPECT_EQ(model_from_json(parse_json(j.dump())), m);
}

TEST(ModelJson, Rejects) {
  EXPECT_THROW(model_from_json(parse_json(R"({"n": 2, "points": [[], []]})")), JsonContentError);
  EXPECT_THROW(model_from_json(parse_json(R"({"points": []})")), JsonContentError);
  EXPECT_THROW(model_from_json(parse_json(R"({"n": 0, "points": [[1]]})")), JsonContentError);
  EXPECT_THROW(parse_json(R"({"n": 1, "points": [)"), JsonInputError);
}

TEST(CompassJson, RoundTrip) {
  Formula phi = parse("<D> p & [B] !q");
  SolveOptions opt;
  opt.cap = 6;
  SolveResult r = solve(phi, opt);
  ASSERT_EQ(r.verdict, Verdict::Sat);
  AtomSpace sp(phi);
  json j = compass_to_json(sp, *r.compass);
  EXPECT_EQ(j["formula"], to_string(phi));
  Compass back = compass_from_json(sp, parse_json(j.dump()));
  EXPECT_EQ(back, *r.compass);
  EXPECT_TRUE(validate(sp, back).empty());
}

TEST(CompassJson, ClosureMismatch) {
  Formula phi = parse("<D> p");
  SolveOptions opt;
  opt.cap = 4;
  SolveResult r = solve(phi, opt);
  ASSERT_TRUE(r.compass);
  json j = compass_to_json(AtomSpace(phi), *r.compass);
  AtomSpace other(parse("<D> q"));
  EXPECT_THROW(compass_from_json(other, j), JsonContentError);
  json missing = j;
  missing["cells"].erase(missing["cells"].begin());
  EXPECT_THROW(compass_from_json(AtomSpace(phi), missing), JsonContentError);
  json alpha = j;
  alpha["cells"][0]["alpha"] = "";
  if (AtomSpace(phi).tfa_size() != 0) EXPECT_THROW(compass_from_json(AtomSpace(phi), alpha), JsonContentError);
}

TEST(InstanceJson, RoundTrip) {
  TilingInstance t = make_instance(2, 2, {{0, 1}, {2, 2}}, {{0, 2}});
  TilingInstance back = instance_from_json(instance_to_json(t));
  EXPECT_EQ(back.t_max, t.t_max);
  EXPECT_EQ(back.C, t.C);
  EXPECT_EQ(back.horiz, t.horiz);
  EXPECT_EQ(back.vert, t.vert);
  EXPECT_THROW(instance_from_json(parse_json(R"({"t_max": 1, "c": 0, "horiz": [], "vert": []})")), JsonContentError);
  EXPECT_THROW(instance_from_json(parse_json(R"({"t_max": 1, "c": 1, "horiz": [[0, 5]], "vert": []})")),
               JsonContentError);
}

TEST(Files, TruncatedAndMissing) {
  std::string path = ::testing::TempDir() + "abdhom_truncated.json";
  {
    std::ofstream out(path);
    out << R"({"n": 1, "points": [["p"], )";
  }
  EXPECT_THROW(read_json_file(path), JsonInputError);
  EXPECT_THROW(read_json_file(path + ".absent"), JsonInputError);
  HomModel m(1, {{"p"}, {}});
  write_json_file(path, model_to_json(m));
  EXPECT_EQ(model_from_json(read_json_file(path)), m);
  std::remove(path.c_str());
}
