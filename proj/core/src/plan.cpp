#include <cmath>
#include <set>

#include <json.hpp>

#include "planvec/planio.hpp"

namespace planvec::planio {

using ordered_json = nlohmann::ordered_json;

FormatError::FormatError(const std::string& what, std::optional<std::size_t> index)
    : std::runtime_error(what), index_(index) {}

namespace {

ordered_json parse(std::string_view text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

double finite_number(const ordered_json& obj, const char* key, const std::string& where,
                     std::optional<std::size_t> index) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw FormatError(where + ": \"" + key + "\" must be a number", index);
  }
  const double v = obj.at(key).get<double>();
  if (!std::isfinite(v)) throw FormatError(where + ": \"" + key + "\" must be finite", index);
  return v;
}

OpeningSymbol symbol_from(const ordered_json& e, std::size_t i) {
  const std::string where = "symbol " + std::to_string(i);
  if (!e.is_object()) throw FormatError(where + ": expected an object", i);
  if (!e.contains("kind") || !e.at("kind").is_string()) throw FormatError(where + ": \"kind\" must be a string", i);
  OpeningSymbol s;
  const auto kind = e.at("kind").get<std::string>();
  if (kind == "door") {
    s.kind = OpeningKind::door;
  } else if (kind == "window") {
    s.kind = OpeningKind::window;
  } else {
    throw FormatError(where + ": unknown kind \"" + kind + "\"", i);
  }
  s.x = finite_number(e, "x", where, i);
  s.y = finite_number(e, "y", where, i);
  s.w = finite_number(e, "w", where, i);
  s.h = finite_number(e, "h", where, i);
  if (s.w <= 0 || s.h <= 0) throw FormatError(where + ": w and h must be positive", i);
  if (e.contains("confidence")) {
    s.confidence = finite_number(e, "confidence", where, i);
    if (s.confidence < 0 || s.confidence > 1) throw FormatError(where + ": confidence must lie in [0, 1]", i);
  }
  return s;
}

ordered_json symbol_json(const OpeningSymbol& s) {
  ordered_json e;
  e["kind"] = std::string(to_string(s.kind));
  e["x"] = s.x;
  e["y"] = s.y;
  e["w"] = s.w;
  e["h"] = s.h;
  e["confidence"] = s.confidence;
  return e;
}

std::vector<OpeningSymbol> symbols_from(const ordered_json& doc) {
  if (!doc.is_array()) throw FormatError("symbols: expected a JSON array");
  std::vector<OpeningSymbol> out;
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(symbol_from(doc[i], i));
  return out;
}

}  // namespace

std::vector<OpeningSymbol> load_symbols(std::string_view text) { return symbols_from(parse(text, "symbols")); }

std::string symbols_to_json(std::span<const OpeningSymbol> symbols) {
  ordered_json doc = ordered_json::array();
  for (const auto& s : symbols) doc.push_back(symbol_json(s));
  return doc.dump();
}

std::string plan_to_json(const PlanVectorization& plan) {
  ordered_json doc;
  doc["source_width"] = plan.source_width;
  doc["source_height"] = plan.source_height;
  doc["walls"] = ordered_json::array();
  for (const auto& w : plan.walls) {
    ordered_json e;
    e["id"] = w.id;
    e["angle_deg"] = w.frame_angle_deg;
    e["x"] = w.x;
    e["y"] = w.y;
    e["w"] = w.w;
    e["h"] = w.h;
    doc["walls"].push_back(std::move(e));
  }
  doc["symbols"] = ordered_json::array();
  for (const auto& s : plan.symbols) doc["symbols"].push_back(symbol_json(s));
  doc["diagnostics"] = plan.diagnostics;
  return doc.dump(2) + "\n";
}

PlanVectorization plan_from_json(std::string_view text) {
  const ordered_json doc = parse(text, "plan");
  if (!doc.is_object()) throw FormatError("plan: expected a JSON object");
  PlanVectorization plan;
  for (const char* key : {"source_width", "source_height"}) {
    if (!doc.contains(key) || !doc.at(key).is_number_integer() || doc.at(key).get<long long>() <= 0 ||
        doc.at(key).get<long long>() > 1'000'000) {
      throw FormatError(std::string("plan: \"") + key + "\" must be a positive integer");
    }
  }
  plan.source_width = doc.at("source_width").get<int>();
  plan.source_height = doc.at("source_height").get<int>();

  if (!doc.contains("walls") || !doc.at("walls").is_array()) throw FormatError("plan: \"walls\" must be an array");
  std::set<int> ids;
  const auto& walls = doc.at("walls");
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const auto& e = walls[i];
    const std::string where = "wall " + std::to_string(i);
    if (!e.is_object()) throw FormatError(where + ": expected an object", i);
    if (!e.contains("id") || !e.at("id").is_number_integer()) throw FormatError(where + ": \"id\" must be an integer", i);
    WallBox w;
    w.id = e.at("id").get<int>();
    if (!ids.insert(w.id).second) throw FormatError(where + ": duplicate id " + std::to_string(w.id), i);
    w.frame_angle_deg = e.contains("angle_deg") ? finite_number(e, "angle_deg", where, i) : 0.0;
    w.x = finite_number(e, "x", where, i);
    w.y = finite_number(e, "y", where, i);
    w.w = finite_number(e, "w", where, i);
    w.h = finite_number(e, "h", where, i);
    if (w.w <= 0 || w.h <= 0) throw FormatError(where + ": w and h must be positive", i);
    plan.walls.push_back(w);
  }
  if (doc.contains("symbols")) plan.symbols = symbols_from(doc.at("symbols"));
  if (doc.contains("diagnostics")) {
    const auto& d = doc.at("diagnostics");
    if (!d.is_array()) throw FormatError("plan: \"diagnostics\" must be an array");
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!d[i].is_string()) throw FormatError("plan: diagnostic " + std::to_string(i) + " must be a string", i);
      plan.diagnostics.push_back(d[i].get<std::string>());
    }
  }
  return plan;
}

}  // namespace planvec::planio
