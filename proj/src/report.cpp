#include "camforge/report.hpp"

#include <json.hpp>

#include "camforge/error.hpp"

namespace camforge {

using Json = nlohmann::ordered_json;

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::TravelLimit: return "TravelLimit";
    case BoundaryKind::RootTouch: return "RootTouch";
    case BoundaryKind::SearchTruncated: return "SearchTruncated";
    case BoundaryKind::BasePoint: return "BasePoint";
  }
  return "Unknown";
}

std::vector<TrackSample> sample_branch(const TrackBranch& branch, std::size_t count) {
  const double tol = branch.boundary_tolerance();
  const double lo = branch.domain().lo + (branch.domain().lo_closed ? 0.0 : tol);
  const double hi = branch.domain().hi - (branch.domain().hi_closed ? 0.0 : tol);
  std::vector<TrackSample> out;
  if (!(hi > lo) || count < 2) return out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back({x, eval_branch(branch, x)});
  }
  return out;
}

DesignReport make_report(const BranchSet& set, ForceEcho force, bool exact_params,
                         std::size_t samples_per_branch, std::size_t residual_samples) {
  DesignReport r;
  r.force = std::move(force);
  r.stiffness = set.problem.stiffness;
  r.preload = set.problem.preload;
  r.travel_limit = set.problem.travel_limit;
  r.search_window = set.problem.window();
  r.boundary_tolerance = set.problem.tolerances.boundary;
  r.quadrature_tolerance = set.problem.tolerances.quadrature;
  r.exact_params = exact_params;
  r.existence_notes = set.existence_notes;
  for (const auto& b : set.branches) {
    BranchRecord rec;
    rec.label = std::string(label_name(b.label()));
    rec.sign = b.sign();
    rec.stiffness_class = b.stiffness_class() == StiffnessClass::Positive ? "positive" : "negative";
    rec.preload_class = b.preload_class() == PreloadClass::Zero ? "zero" : "nonzero";
    rec.stiffness = b.stiffness();
    rec.preload = b.preload();
    rec.domain_lo = b.domain().lo;
    rec.domain_hi = b.domain().hi;
    rec.lo_kind = std::string(to_string(b.domain().lo_kind));
    rec.hi_kind = std::string(to_string(b.domain().hi_kind));
    rec.lo_closed = b.domain().lo_closed;
    rec.hi_closed = b.domain().hi_closed;
    const auto res = reconstruction_residual(b, residual_samples);
    rec.residual_sup_abs = res.sup_abs;
    rec.residual_rms_abs = res.rms_abs;
    rec.residual_sup_rel = res.sup_rel;
    rec.residual_rms_rel = res.rms_rel;
    for (const auto& s : sample_branch(b, samples_per_branch)) rec.samples.push_back({s.x, s.y});
    r.branches.push_back(std::move(rec));
  }
  return r;
}

std::string serialize_report(const DesignReport& r) {
  Json doc;
  doc["tool_version"] = r.tool_version;
  Json force;
  force["kind"] = r.force.kind;
  force["text"] = r.force.text;
  force["coefficients"] = r.force.coefficients;
  force["interpolation"] = r.force.interpolation;
  doc["force"] = force;
  doc["stiffness"] = r.stiffness;
  doc["preload"] = r.preload;
  doc["travel_limit"] = r.travel_limit;
  doc["search_window"] = r.search_window;
  doc["boundary_tolerance"] = r.boundary_tolerance;
  doc["quadrature_tolerance"] = r.quadrature_tolerance;
  doc["exact_params"] = r.exact_params;
  Json branches = Json::array();
  for (const auto& b : r.branches) {
    Json j;
    j["label"] = b.label;
    j["sign"] = b.sign;
    j["stiffness_class"] = b.stiffness_class;
    j["preload_class"] = b.preload_class;
    j["stiffness"] = b.stiffness;
    j["preload"] = b.preload;
    j["domain"] = {{"lo", b.domain_lo},     {"hi", b.domain_hi},         {"lo_kind", b.lo_kind},
                   {"hi_kind", b.hi_kind}, {"lo_closed", b.lo_closed}, {"hi_closed", b.hi_closed}};
    j["residual"] = {{"sup_abs", b.residual_sup_abs},
                     {"rms_abs", b.residual_rms_abs},
                     {"sup_rel", b.residual_sup_rel},
                     {"rms_rel", b.residual_rms_rel}};
    j["samples"] = b.samples;
    branches.push_back(std::move(j));
  }
  doc["branches"] = std::move(branches);
  doc["existence_notes"] = r.existence_notes;
  if (r.wall_clock_s) doc["wall_clock_s"] = *r.wall_clock_s;
  return doc.dump(2) + "\n";
}

DesignReport parse_report(const std::string& text) {
  try {
    const Json doc = Json::parse(text);
    DesignReport r;
    r.tool_version = doc.at("tool_version").get<std::string>();
    const Json& force = doc.at("force");
    r.force.kind = force.at("kind").get<std::string>();
    r.force.text = force.at("text").get<std::string>();
    r.force.coefficients = force.at("coefficients").get<std::vector<double>>();
    r.force.interpolation = force.at("interpolation").get<std::string>();
    r.stiffness = doc.at("stiffness").get<double>();
    r.preload = doc.at("preload").get<double>();
    r.travel_limit = doc.at("travel_limit").get<double>();
    r.search_window = doc.at("search_window").get<double>();
    r.boundary_tolerance = doc.at("boundary_tolerance").get<double>();
    r.quadrature_tolerance = doc.at("quadrature_tolerance").get<double>();
    r.exact_params = doc.at("exact_params").get<bool>();
    for (const Json& j : doc.at("branches")) {
      BranchRecord b;
      b.label = j.at("label").get<std::string>();
      b.sign = j.at("sign").get<int>();
      b.stiffness_class = j.at("stiffness_class").get<std::string>();
      b.preload_class = j.at("preload_class").get<std::string>();
      b.stiffness = j.at("stiffness").get<double>();
      b.preload = j.at("preload").get<double>();
      const Json& d = j.at("domain");
      b.domain_lo = d.at("lo").get<double>();
      b.domain_hi = d.at("hi").get<double>();
      b.lo_kind = d.at("lo_kind").get<std::string>();
      b.hi_kind = d.at("hi_kind").get<std::string>();
      b.lo_closed = d.at("lo_closed").get<bool>();
      b.hi_closed = d.at("hi_closed").get<bool>();
      const Json& res = j.at("residual");
      b.residual_sup_abs = res.at("sup_abs").get<double>();
      b.residual_rms_abs = res.at("rms_abs").get<double>();
      b.residual_sup_rel = res.at("sup_rel").get<double>();
      b.residual_rms_rel = res.at("rms_rel").get<double>();
      b.samples = j.at("samples").get<std::vector<std::array<double, 2>>>();
      r.branches.push_back(std::move(b));
    }
    r.existence_notes = doc.at("existence_notes").get<std::vector<std::string>>();
    if (doc.contains("wall_clock_s")) r.wall_clock_s = doc.at("wall_clock_s").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("malformed design report: ") + e.what());
  }
}

}  // namespace camforge
