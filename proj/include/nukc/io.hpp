#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nukc/instance.hpp"

namespace nukc::io {

using json = nlohmann::json;

// Planted ground truth carried alongside generated instances.
struct PlantedTruth {
  PointSet centers1;
  PointSet centers2;
  PointSet outliers;
};

struct InstanceFile {
  NUkCInstance instance;
  std::optional<PointSet> Y;  // present for well-separated instances
  std::optional<PlantedTruth> planted;
  std::string kind;           // generator name, informational
  std::optional<std::uint64_t> seed;
};

inline PointSet read_point_set(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInstance(std::string(what) + " must be an array of indices");
  PointSet out;
  for (const auto& v : j) out.push_back(v.get<int>());
  return normalized(std::move(out));
}

// {"points": [[x,y],...]} or {"distance_matrix": [[...],...]} plus
// "r1", "r2", "k1", "k2", "m"; optional "Y", "planted", "generator", "seed".
inline InstanceFile instance_from_json(const json& j) {
  try {
    InstanceFile f;
    MetricSpace metric;
    if (j.contains("points") && j.contains("distance_matrix")) {
      throw InvalidInstance("give either \"points\" or \"distance_matrix\", not both");
    }
    if (j.contains("points")) {
      std::vector<Point2> pts;
      for (const auto& p : j.at("points")) {
        if (!p.is_array() || p.size() != 2) throw InvalidInstance("each point must be [x, y]");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      metric = MetricSpace::from_points(std::move(pts));
    } else if (j.contains("distance_matrix")) {
      metric = MetricSpace::from_matrix(j.at("distance_matrix").get<std::vector<std::vector<double>>>());
    } else {
      throw InvalidInstance("instance needs \"points\" or \"distance_matrix\"");
    }
    f.instance = NUkCInstance::make(std::move(metric), j.at("r1").get<double>(),
                                    j.at("r2").get<double>(), j.at("k1").get<int>(),
                                    j.at("k2").get<int>(), j.at("m").get<int>());
    if (j.contains("Y")) f.Y = read_point_set(j.at("Y"), "Y");
    if (j.contains("planted")) {
      const auto& p = j.at("planted");
      PlantedTruth t;
      t.centers1 = read_point_set(p.at("centers1"), "planted.centers1");
      t.centers2 = read_point_set(p.at("centers2"), "planted.centers2");
      if (p.contains("outliers")) t.outliers = read_point_set(p.at("outliers"), "planted.outliers");
      f.planted = std::move(t);
    }
    if (j.contains("generator")) f.kind = j.at("generator").get<std::string>();
    if (j.contains("seed")) f.seed = j.at("seed").get<std::uint64_t>();
    return f;
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance JSON: ") + e.what());
  }
}

inline json instance_to_json(const InstanceFile& f) {
  json j;
  const NUkCInstance& inst = f.instance;
  if (inst.metric.coords()) {
    json pts = json::array();
    for (const Point2& p : *inst.metric.coords()) pts.push_back({p.x, p.y});
    j["points"] = std::move(pts);
  } else {
    j["distance_matrix"] = inst.metric.matrix();
  }
  j["r1"] = inst.r1;
  j["r2"] = inst.r2;
  j["k1"] = inst.k1;
  j["k2"] = inst.k2;
  j["m"] = inst.m;
  if (f.Y) j["Y"] = *f.Y;
  if (f.planted) {
    j["planted"] = {{"centers1", f.planted->centers1},
                    {"centers2", f.planted->centers2},
                    {"outliers", f.planted->outliers}};
  }
  if (!f.kind.empty()) j["generator"] = f.kind;
  if (f.seed) j["seed"] = *f.seed;
  return j;
}

inline json solution_to_json(bool feasible, const NUkCSolution& sol, int covered) {
  json j;
  j["status"] = feasible ? "solution" : "infeasible";
  j["dilation"] = sol.dilation;
  j["centers1"] = sol.centers1;
  j["centers2"] = sol.centers2;
  j["covered_count"] = covered;
  return j;
}

struct SolutionFile {
  bool feasible = false;
  NUkCSolution solution;
  int covered = 0;
};

inline SolutionFile solution_from_json(const json& j) {
  try {
    SolutionFile s;
    const std::string status = j.at("status").get<std::string>();
    if (status != "solution" && status != "infeasible") {
      throw InvalidInstance("status must be \"solution\" or \"infeasible\"");
    }
    s.feasible = status == "solution";
    s.solution.dilation = j.at("dilation").get<double>();
    s.solution.centers1 = read_point_set(j.at("centers1"), "centers1");
    s.solution.centers2 = read_point_set(j.at("centers2"), "centers2");
    s.covered = j.at("covered_count").get<int>();
    return s;
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed solution JSON: ") + e.what());
  }
}

// Doubles are written in shortest round-trip form (up to 17 significant
// digits), so parse(dump(x)) == x bit for bit.
inline std::string dump(const json& j, int indent = 2) { return j.dump(indent); }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInstance("cannot parse " + path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInstance("cannot write " + path);
  out << text << '\n';
}

}  // namespace nukc::io
