#include "simplexgeo/error.hpp"
#include "simplexgeo/hamiltonian.hpp"
#include "simplexgeo/sequence.hpp"

#include <json.hpp>

#include <cmath>

namespace simplexgeo {

using nlohmann::json;

namespace {

std::string where(const char* op) { return std::string("sequence_core::") + op; }

const char* kind_name(SequenceKind k) {
  switch (k) {
    case SequenceKind::Explicit: return "explicit";
    case SequenceKind::Uniform: return "uniform";
    case SequenceKind::Geometric: return "geometric";
    case SequenceKind::CustomDecay: return "custom";
  }
  return "uniform";
}

const char* normalization_name(Normalization n) {
  switch (n) {
    case Normalization::ToSimplex: return "simplex";
    case Normalization::ToSphere: return "sphere";
    case Normalization::None: return "none";
  }
  return "none";
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string to_json(const SequenceSpec& spec) {
  json j;
  j["kind"] = kind_name(spec.kind);
  j["dim"] = spec.dim;
  if (spec.kind == SequenceKind::Geometric) j["ratio"] = spec.ratio;
  if (spec.kind == SequenceKind::Explicit) j["coords"] = spec.coords;
  if (spec.kind == SequenceKind::CustomDecay) {
    j["name"] = spec.decay_name;
    j["param"] = spec.decay_param;
  }
  j["normalize"] = normalization_name(spec.normalization);
  if (spec.normalization == Normalization::ToSphere) j["q"] = spec.q;
  return j.dump();
}

SequenceSpec sequence_spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::ParseError, where("sequence_spec_from_json"), e.what());
  }
  try {
    SequenceSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") {
      spec.kind = SequenceKind::Uniform;
    } else if (kind == "geometric") {
      spec.kind = SequenceKind::Geometric;
      spec.ratio = j.at("ratio").get<double>();
      if (!(spec.ratio > 0.0 && spec.ratio < 1.0)) {
        raise(ErrorCode::RatioOutOfRange, where("sequence_spec_from_json"),
              "ratio must lie in (0, 1)");
      }
    } else if (kind == "explicit") {
      spec.kind = SequenceKind::Explicit;
      spec.coords = j.at("coords").get<std::vector<double>>();
    } else if (kind == "custom" || kind == "custom-decay") {
      spec.kind = SequenceKind::CustomDecay;
      spec.decay_name = j.at("name").get<std::string>();
      spec.decay_param = j.at("param").get<double>();
    } else {
      raise(ErrorCode::ParseError, where("sequence_spec_from_json"), "unknown kind '" + kind + "'");
    }
    if (j.contains("dim")) {
      spec.dim = j.at("dim").get<Index>();
    } else if (spec.kind == SequenceKind::Explicit) {
      spec.dim = static_cast<Index>(spec.coords.size());
    } else {
      raise(ErrorCode::ParseError, where("sequence_spec_from_json"), "missing 'dim'");
    }
    const std::string norm = j.value("normalize", std::string("simplex"));
    if (norm == "simplex") {
      spec.normalization = Normalization::ToSimplex;
    } else if (norm == "sphere") {
      spec.normalization = Normalization::ToSphere;
      spec.q = j.value("q", 2.0);
    } else if (norm == "none") {
      spec.normalization = Normalization::None;
    } else {
      raise(ErrorCode::ParseError, where("sequence_spec_from_json"),
            "unknown normalization '" + norm + "'");
    }
    return spec;
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, where("sequence_spec_from_json"), e.what());
  }
}

std::string to_json(const IntegrabilityReport& report) {
  json j;
  j["brackets_max_abs"] = report.brackets_max_abs;
  j["conservation_max_drift"] = report.conservation_max_drift;
  j["gram_det"] = finite_or_null(report.gram_det);
  j["pass"] = report.pass;
  j["seed"] = report.seed;
  return j.dump();
}

}  // namespace simplexgeo
