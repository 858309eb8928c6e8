#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horoball/error.hpp"
#include "horoball/model.hpp"
#include "horoball/objective.hpp"
#include "horoball/oracle.hpp"
#include "horoball/space.hpp"

// JSON forms:
//   space     {"kind":"euclidean","dim":n} | {"kind":"spider","legs":m} | {"kind":"orthant_cycle","k":k}
//   point     {"coords":[...]} | {"leg":i,"t":...} | {"quadrant":i,"s":...,"t":...}
//             | {"model3d":[x,y,z]} (input only, five-quadrant cycle)
//   envelope  {"terms":[{"center":<point>,"beta":1.0,"gamma":0.0}, ...]}
//   instance  {"space":..., "points":[...], "objective":{"type":"circumcenter"}
//              | {"type":"balls","radii":[...]} | {"type":"envelope","terms":[...]},
//              "feasible_ball":{"center":<point>,"radius":r}}

namespace horoball::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, (path.empty() ? std::string("<root>") : path) + ": " + what);
}

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

inline std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// Line and column of a byte offset, both 1-based.
inline std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline json to_json(const Space& space) {
  switch (space.kind()) {
    case Space::Kind::Euclidean: return {{"kind", "euclidean"}, {"dim", space.dim()}};
    case Space::Kind::Spider: return {{"kind", "spider"}, {"legs", space.legs()}};
    case Space::Kind::OrthantCycle: return {{"kind", "orthant_cycle"}, {"k", space.quadrants()}};
  }
  return {};
}

inline Space space_from_json(const json& j, const std::string& path = "space") {
  using namespace detail;
  const json& kind = field(j, path, "kind");
  if (!kind.is_string()) fail(join(path, "kind"), "expected a string");
  const auto name = kind.get<std::string>();
  try {
    if (name == "euclidean") return Space::euclidean(integer(field(j, path, "dim"), join(path, "dim")));
    if (name == "spider") return Space::spider(integer(field(j, path, "legs"), join(path, "legs")));
    if (name == "orthant_cycle") return Space::orthant_cycle(integer(field(j, path, "k"), join(path, "k")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(path, e.what());
  }
  fail(join(path, "kind"), "unknown space kind \"" + name + "\"");
}

inline json to_json(const Point& p) {
  if (const auto* e = std::get_if<EuclideanPoint>(&p)) return {{"coords", e->coords}};
  if (const auto* s = std::get_if<SpiderPoint>(&p)) return {{"leg", s->leg}, {"t", s->t}};
  const auto& o = std::get<OrthantPoint>(p);
  return {{"quadrant", o.quadrant}, {"s", o.s}, {"t", o.t}};
}

/// Parses and canonicalizes a point. Invalid indices or coordinates raise
/// InvalidPoint / SpaceMismatch / NotOnComplex with the field path attached;
/// structural problems raise ParseError.
inline Point point_from_json(const Space& space, const json& j, const std::string& path) {
  using namespace detail;
  if (!j.is_object()) fail(path, "expected a point object");
  Point p;
  if (j.contains("model3d")) {
    if (space.kind() != Space::Kind::OrthantCycle || space.quadrants() != 5)
      throw Error(ErrorCode::SpaceMismatch, path + ": model3d points need an orthant cycle with k = 5");
    const json& m = j["model3d"];
    if (!m.is_array() || m.size() != 3) fail(join(path, "model3d"), "expected an array of three numbers");
    Model3 c{};
    for (std::size_t i = 0; i < 3; ++i) c[i] = number(m[i], index(join(path, "model3d"), i));
    try {
      return from_model_r3(c);
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what());
    }
  }
  // A point written in another space's form is a mismatch, not a typo.
  const bool foreign = (j.contains("coords") && space.kind() != Space::Kind::Euclidean) ||
                       (j.contains("leg") && space.kind() != Space::Kind::Spider) ||
                       (j.contains("quadrant") && space.kind() != Space::Kind::OrthantCycle);
  if (foreign) throw Error(ErrorCode::SpaceMismatch, path + ": point does not belong to a " + describe(space));
  switch (space.kind()) {
    case Space::Kind::Euclidean: {
      const json& c = field(j, path, "coords");
      if (!c.is_array()) fail(join(path, "coords"), "expected an array");
      std::vector<double> coords;
      for (std::size_t i = 0; i < c.size(); ++i) coords.push_back(number(c[i], index(join(path, "coords"), i)));
      p = EuclideanPoint{std::move(coords)};
      break;
    }
    case Space::Kind::Spider:
      p = SpiderPoint{integer(field(j, path, "leg"), join(path, "leg")), number(field(j, path, "t"), join(path, "t"))};
      break;
    case Space::Kind::OrthantCycle:
      p = OrthantPoint{integer(field(j, path, "quadrant"), join(path, "quadrant")),
                       number(field(j, path, "s"), join(path, "s")), number(field(j, path, "t"), join(path, "t"))};
      break;
  }
  try {
    return canonicalize(space, p);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

inline json to_json(const DistanceEnvelope& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"center", to_json(t.center)}, {"beta", t.beta}, {"gamma", t.gamma}});
  return {{"terms", terms}};
}

inline std::vector<EnvelopeTerm> terms_from_json(const Space& space, const json& j, const std::string& path) {
  using namespace detail;
  const json& arr = field(j, path, "terms");
  if (!arr.is_array()) fail(join(path, "terms"), "expected an array");
  std::vector<EnvelopeTerm> terms;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string tp = index(join(path, "terms"), i);
    EnvelopeTerm t;
    t.center = point_from_json(space, field(arr[i], tp, "center"), join(tp, "center"));
    t.beta = arr[i].contains("beta") ? number(arr[i]["beta"], join(tp, "beta")) : 1.0;
    t.gamma = arr[i].contains("gamma") ? number(arr[i]["gamma"], join(tp, "gamma")) : 0.0;
    if (t.beta < 0.0) fail(join(tp, "beta"), "slope must be >= 0");
    terms.push_back(std::move(t));
  }
  return terms;
}

inline DistanceEnvelope envelope_from_json(const Space& space, const json& j, const std::string& path = "") {
  auto terms = terms_from_json(space, j, path);
  if (terms.empty()) detail::fail(detail::join(path, "terms"), "need at least one term");
  return DistanceEnvelope(space, std::move(terms));
}

enum class ObjectiveKind { Circumcenter, Balls, Envelope };

struct Instance {
  Space space = Space::euclidean(1);
  std::vector<Point> points;
  ObjectiveKind objective_kind = ObjectiveKind::Circumcenter;
  std::vector<double> radii;
  std::vector<EnvelopeTerm> terms;
  std::optional<FeasibleBall> feasible_ball;

  DistanceEnvelope objective() const { return objective(objective_kind); }

  DistanceEnvelope objective(ObjectiveKind kind) const {
    switch (kind) {
      case ObjectiveKind::Circumcenter: return make_circumcenter(space, points);
      case ObjectiveKind::Balls: {
        if (radii.size() != points.size())
          throw Error(ErrorCode::ParseError, "objective.radii: need one radius per point");
        std::vector<Ball> balls;
        for (std::size_t i = 0; i < points.size(); ++i) balls.push_back({points[i], radii[i]});
        return make_intersecting_balls(space, balls);
      }
      case ObjectiveKind::Envelope: return DistanceEnvelope(space, terms);
    }
    return make_circumcenter(space, points);
  }

  bool operator==(const Instance& o) const {
    if (!(space == o.space && points == o.points && objective_kind == o.objective_kind && radii == o.radii &&
          terms == o.terms && feasible_ball.has_value() == o.feasible_ball.has_value()))
      return false;
    if (!feasible_ball) return true;
    return feasible_ball->center == o.feasible_ball->center && feasible_ball->radius == o.feasible_ball->radius;
  }
};

inline json to_json(const Instance& inst) {
  json j;
  j["space"] = to_json(inst.space);
  json pts = json::array();
  for (const auto& p : inst.points) pts.push_back(to_json(p));
  j["points"] = pts;
  switch (inst.objective_kind) {
    case ObjectiveKind::Circumcenter: j["objective"] = {{"type", "circumcenter"}}; break;
    case ObjectiveKind::Balls: j["objective"] = {{"type", "balls"}, {"radii", inst.radii}}; break;
    case ObjectiveKind::Envelope: {
      json obj = to_json(DistanceEnvelope(inst.space, inst.terms));
      obj["type"] = "envelope";
      j["objective"] = obj;
      break;
    }
  }
  if (inst.feasible_ball)
    j["feasible_ball"] = {{"center", to_json(inst.feasible_ball->center)}, {"radius", inst.feasible_ball->radius}};
  return j;
}

inline Instance instance_from_json(const json& j) {
  using namespace detail;
  if (!j.is_object()) fail("", "instance must be a JSON object");
  Instance inst;
  inst.space = space_from_json(field(j, "", "space"));
  if (j.contains("points")) {
    const json& pts = j["points"];
    if (!pts.is_array()) fail("points", "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) inst.points.push_back(point_from_json(inst.space, pts[i], index("points", i)));
  }
  if (j.contains("objective")) {
    const json& obj = j["objective"];
    const json& type = field(obj, "objective", "type");
    if (!type.is_string()) fail("objective.type", "expected a string");
    const auto name = type.get<std::string>();
    if (name == "circumcenter") {
      inst.objective_kind = ObjectiveKind::Circumcenter;
    } else if (name == "balls") {
      inst.objective_kind = ObjectiveKind::Balls;
      const json& radii = field(obj, "objective", "radii");
      if (!radii.is_array()) fail("objective.radii", "expected an array");
      for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = number(radii[i], index("objective.radii", i));
        if (r < 0.0) throw Error(ErrorCode::NegativeRadius, index("objective.radii", i) + ": radius must be >= 0");
        inst.radii.push_back(r);
      }
      if (inst.radii.size() != inst.points.size()) fail("objective.radii", "need one radius per point");
    } else if (name == "envelope") {
      inst.objective_kind = ObjectiveKind::Envelope;
      inst.terms = terms_from_json(inst.space, obj, "objective");
      if (inst.terms.empty()) fail("objective.terms", "need at least one term");
    } else {
      fail("objective.type", "unknown objective \"" + name + "\"");
    }
  }
  if (inst.objective_kind != ObjectiveKind::Envelope && inst.points.empty())
    fail("points", "need at least one point");
  if (j.contains("feasible_ball")) {
    const json& b = j["feasible_ball"];
    Point c = point_from_json(inst.space, field(b, "feasible_ball", "center"), "feasible_ball.center");
    const double r = number(field(b, "feasible_ball", "radius"), "feasible_ball.radius");
    if (r < 0.0) throw Error(ErrorCode::NegativeRadius, "feasible_ball.radius: radius must be >= 0");
    inst.feasible_ball.emplace(inst.space, std::move(c), r);
  }
  return inst;
}

/// Parses instance text; JSON syntax errors report line and column.
inline Instance parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  return instance_from_json(j);
}

}  // namespace horoball::io
