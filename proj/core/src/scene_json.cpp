#include <cmath>

#include <json.hpp>

#include "planvec/reconstruct.hpp"

namespace planvec::recon {

namespace {

using ordered_json = nlohmann::ordered_json;

double round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no "-0.0" in the output
}

double number(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw SceneFormatError(where + ": missing or non-numeric \"" + key + "\"");
  }
  return j.at(key).get<double>();
}

}  // namespace

std::string export_semantic_json(const Scene3D& scene) {
  ordered_json doc;
  doc["unit"] = scene.unit;
  doc["scale"] = round6(scene.scale_m_per_px);
  doc["walls"] = ordered_json::array();
  for (const auto& w : scene.walls) {
    ordered_json jw;
    jw["id"] = w.id;
    jw["footprint"] = ordered_json::array();
    for (const auto& p : w.footprint) jw["footprint"].push_back({round6(p.x), round6(p.y)});
    jw["height"] = round6(w.height_m);
    jw["openings"] = ordered_json::array();
    for (const auto& o : w.openings) {
      ordered_json jo;
      jo["kind"] = std::string(to_string(o.kind));
      jo["along_offset"] = round6(o.along_offset_m);
      jo["width"] = round6(o.width_m);
      jo["sill"] = round6(o.sill_m);
      jo["height"] = round6(o.height_m);
      jw["openings"].push_back(std::move(jo));
    }
    doc["walls"].push_back(std::move(jw));
  }
  return doc.dump();
}

Scene3D import_semantic_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SceneFormatError(std::string("scene JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SceneFormatError("scene JSON: top level must be an object");

  Scene3D scene;
  if (!doc.contains("unit") || !doc.at("unit").is_string()) throw SceneFormatError("scene JSON: missing \"unit\"");
  scene.unit = doc.at("unit").get<std::string>();
  scene.scale_m_per_px = number(doc, "scale", "scene JSON");
  if (!doc.contains("walls") || !doc.at("walls").is_array()) throw SceneFormatError("scene JSON: missing \"walls\"");

  const auto& walls = doc.at("walls");
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const auto& jw = walls[i];
    const std::string where = "wall " + std::to_string(i);
    if (!jw.is_object()) throw SceneFormatError(where + ": not an object");
    SceneWall w;
    if (!jw.contains("id") || !jw.at("id").is_number_integer()) throw SceneFormatError(where + ": missing \"id\"");
    w.id = jw.at("id").get<int>();
    if (!jw.contains("footprint") || !jw.at("footprint").is_array() || jw.at("footprint").size() != 4) {
      throw SceneFormatError(where + ": footprint must hold 4 points");
    }
    for (int k = 0; k < 4; ++k) {
      const auto& p = jw.at("footprint")[k];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw SceneFormatError(where + ": footprint point " + std::to_string(k) + " must be [x, y]");
      }
      w.footprint[k] = {p[0].get<double>(), p[1].get<double>()};
    }
    w.height_m = number(jw, "height", where);
    if (jw.contains("openings")) {
      const auto& ops = jw.at("openings");
      if (!ops.is_array()) throw SceneFormatError(where + ": openings must be an array");
      for (std::size_t k = 0; k < ops.size(); ++k) {
        const auto& jo = ops[k];
        const std::string owhere = where + " opening " + std::to_string(k);
        if (!jo.is_object()) throw SceneFormatError(owhere + ": not an object");
        Opening3D o;
        o.wall_id = w.id;
        const std::string kind = jo.value("kind", "");
        if (kind == "door") {
          o.kind = OpeningKind::door;
        } else if (kind == "window") {
          o.kind = OpeningKind::window;
        } else {
          throw SceneFormatError(owhere + ": kind must be \"door\" or \"window\"");
        }
        o.along_offset_m = number(jo, "along_offset", owhere);
        o.width_m = number(jo, "width", owhere);
        o.sill_m = number(jo, "sill", owhere);
        o.height_m = number(jo, "height", owhere);
        w.openings.push_back(o);
      }
    }
    scene.walls.push_back(std::move(w));
  }
  return scene;
}

}  // namespace planvec::recon
