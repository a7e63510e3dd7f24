#include "oracles.hpp"

#include <json.hpp>

using namespace simplexgeo;
using Json = nlohmann::ordered_json;

TEST(SequenceSpecJson, RoundTripsEveryKind) {
  SequenceSpec sphere = SequenceSpec::explicit_coords({3.0, 4.0}, Normalization::ToSphere);
  sphere.q = 3.0;
  const SequenceSpec specs[] = {
      SequenceSpec::uniform(4),
      SequenceSpec::geometric(0.25, 6, Normalization::None),
      SequenceSpec::explicit_coords({0.1, 0.2, 0.7}),
      SequenceSpec::custom_decay("power", 2.5, 5, Normalization::None),
      sphere,
  };
  for (const SequenceSpec& spec : specs) {
    EXPECT_EQ(sequence_spec_from_json(to_json(spec)), spec) << to_json(spec);
  }
}

TEST(SequenceSpecJson, Layout) {
  const Json j = Json::parse(to_json(SequenceSpec::geometric(0.5, 3)));
  EXPECT_EQ(j["kind"], "geometric");
  EXPECT_EQ(j["dim"], 3);
  EXPECT_EQ(j["ratio"], 0.5);
  EXPECT_EQ(j["normalize"], "simplex");
  EXPECT_FALSE(j.contains("coords"));
}

TEST(SequenceSpecJson, Defaults) {
  const SequenceSpec e = sequence_spec_from_json(R"({"kind": "explicit", "coords": [1, 2, 3]})");
  EXPECT_EQ(e.dim, 3);
  EXPECT_EQ(e.normalization, Normalization::ToSimplex);
  EXPECT_SGEO_ERROR(sequence_spec_from_json(R"({"kind": "uniform"})"), ErrorCode::ParseError);
}

TEST(SequenceSpecJson, Errors) {
  EXPECT_SGEO_ERROR(sequence_spec_from_json("{not json"), ErrorCode::ParseError);
  EXPECT_SGEO_ERROR(sequence_spec_from_json(R"({"kind": "fractal", "dim": 3})"), ErrorCode::ParseError);
  EXPECT_SGEO_ERROR(sequence_spec_from_json(R"({"kind": "geometric", "dim": 3, "ratio": 1.5})"),
                    ErrorCode::RatioOutOfRange);
  EXPECT_SGEO_ERROR(sequence_spec_from_json(R"({"kind": "uniform", "dim": "three"})"),
                    ErrorCode::ParseError);
}

TEST(IntegrabilityReportJson, Fields) {
  IntegrabilityReport rep;
  rep.brackets_max_abs = 0.0;
  rep.conservation_max_drift = 1e-16;
  rep.gram_det = 0.5;
  rep.pass = true;
  rep.seed = 42;
  const Json j = Json::parse(to_json(rep));
  EXPECT_EQ(j["brackets_max_abs"], 0.0);
  EXPECT_EQ(j["conservation_max_drift"], 1e-16);
  EXPECT_EQ(j["gram_det"], 0.5);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["seed"], 42);
  rep.gram_det = NAN;
  EXPECT_TRUE(Json::parse(to_json(rep))["gram_det"].is_null());
}
