#include "document.hpp"

#include <algorithm>
#include <set>

namespace surfmmp::cli {

using Json = nlohmann::ordered_json;

DocumentError::DocumentError(std::string path, std::string message, std::size_t line,
                             std::size_t column, std::vector<std::string> details)
    : Error((path.empty() ? std::string() : path + ": ") + message),
      path_(std::move(path)),
      line_(line),
      column_(column),
      details_(std::move(details)) {}

const Fibration& InputDocument::require_fibration() const {
  if (!fibration) {
    throw ArgumentError("the document has no fibration block");
  }
  return *fibration;
}

std::vector<std::size_t> InputDocument::ray_policy_indices() const {
  std::vector<std::size_t> out;
  for (const auto& id : options.ray_policy) {
    out.push_back(configuration.curve_index(id));
  }
  return out;
}

namespace {

void line_and_column(std::string_view text, std::size_t byte, std::size_t& line,
                     std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string join(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

void expect(bool ok, const std::string& path, const std::string& message) {
  if (!ok) {
    throw DocumentError(path, message);
  }
}

const Json& object(const Json& j, const std::string& path,
                   std::initializer_list<std::string_view> allowed) {
  expect(j.is_object(), path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    expect(std::find(allowed.begin(), allowed.end(), key) != allowed.end(), join(path, key),
           "unknown field");
  }
  return j;
}

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  expect(j.contains(key), join(path, key), "missing field");
  return j.at(key);
}

std::int64_t integer(const Json& j, const std::string& path) {
  expect(j.is_number_integer(), path, "expected an integer");
  return j.get<std::int64_t>();
}

std::string string(const Json& j, const std::string& path) {
  expect(j.is_string(), path, "expected a string");
  return j.get<std::string>();
}

Rational rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    return Rational(j.get<std::int64_t>());
  }
  expect(j.is_string(), path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ArgumentError& e) {
    throw DocumentError(path, e.what());
  }
}

std::size_t curve_ref(const Configuration& config, const Json& j, const std::string& path) {
  const auto id = string(j, path);
  const auto index = config.find_curve(id);
  expect(index.has_value(), path, "unknown curve id '" + id + "'");
  return *index;
}

Configuration parse_configuration(const Json& j, const std::string& path) {
  object(j, path, {"curves", "matrix", "points", "chi_structure", "canon_self_int"});
  std::vector<Curve> curves;
  const auto cpath = join(path, "curves");
  const Json& cj = field(j, path, "curves");
  expect(cj.is_array(), cpath, "expected an array");
  for (std::size_t i = 0; i < cj.size(); ++i) {
    const auto p = join(cpath, i);
    object(cj[i], p, {"id", "self_int", "canon_int", "vertical_over"});
    Curve c;
    c.id = string(field(cj[i], p, "id"), join(p, "id"));
    expect(!c.id.empty(), join(p, "id"), "empty id");
    c.self_int = integer(field(cj[i], p, "self_int"), join(p, "self_int"));
    c.canon_int = integer(field(cj[i], p, "canon_int"), join(p, "canon_int"));
    if (cj[i].contains("vertical_over")) {
      c.vertical_over = string(cj[i]["vertical_over"], join(p, "vertical_over"));
    }
    curves.push_back(std::move(c));
  }
  const std::size_t n = curves.size();

  const auto mpath = join(path, "matrix");
  const Json& mj = field(j, path, "matrix");
  expect(mj.is_array() && mj.size() == n, mpath,
         "expected " + std::to_string(n) + " rows, one per curve");
  linalg::IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto rp = join(mpath, r);
    expect(mj[r].is_array() && mj[r].size() == n, rp,
           "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) {
      m(r, c) = integer(mj[r][c], join(rp, c));
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      expect(m(r, c) == m(c, r), join(join(mpath, r), c),
             "matrix is not symmetric: entry (" + curves[r].id + ", " + curves[c].id + ") is " +
                 std::to_string(m(r, c)) + " but (" + curves[c].id + ", " + curves[r].id +
                 ") is " + std::to_string(m(c, r)));
    }
  }

  // Point curve references need the curve list, which is not a
  // Configuration yet.
  auto find = [&](const std::string& id) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (curves[i].id == id) {
        return i;
      }
    }
    return std::nullopt;
  };
  std::vector<IncidencePoint> points;
  if (j.contains("points")) {
    const auto ppath = join(path, "points");
    const Json& pj = j["points"];
    expect(pj.is_array(), ppath, "expected an array");
    for (std::size_t k = 0; k < pj.size(); ++k) {
      const auto p = join(ppath, k);
      object(pj[k], p, {"id", "curves", "residue_degree"});
      IncidencePoint pt;
      pt.id = string(field(pj[k], p, "id"), join(p, "id"));
      const Json& on = field(pj[k], p, "curves");
      expect(on.is_array() && on.size() == 2, join(p, "curves"), "expected exactly two curve ids");
      for (std::size_t s = 0; s < 2; ++s) {
        const auto id = string(on[s], join(join(p, "curves"), s));
        const auto idx = find(id);
        expect(idx.has_value(), join(join(p, "curves"), s), "unknown curve id '" + id + "'");
        pt.curves[s] = *idx;
      }
      pt.residue_degree = pj[k].contains("residue_degree")
                              ? integer(pj[k]["residue_degree"], join(p, "residue_degree"))
                              : 1;
      points.push_back(std::move(pt));
    }
  }
  std::optional<std::int64_t> chi;
  std::optional<std::int64_t> k2;
  if (j.contains("chi_structure")) {
    chi = integer(j["chi_structure"], join(path, "chi_structure"));
  }
  if (j.contains("canon_self_int")) {
    k2 = integer(j["canon_self_int"], join(path, "canon_self_int"));
  }
  Configuration config(std::move(curves), std::move(m), std::move(points), chi, k2);
  const auto report = validate_configuration(config);
  if (!report.ok()) {
    std::vector<std::string> details;
    for (const auto& v : report.violations) {
      details.push_back(std::string(to_string(v.kind)) + ": " + v.message);
    }
    throw DocumentError(path, report.violations.front().message, 0, 0, std::move(details));
  }
  return config;
}

Fibration parse_fibration(const Json& j, const std::string& path, const Configuration& config) {
  object(j, path, {"target_dim", "base_points", "fiber_classes"});
  Fibration fib;
  const auto tpath = join(path, "target_dim");
  fib.target_dim = static_cast<int>(integer(field(j, path, "target_dim"), tpath));
  expect(fib.target_dim >= 0 && fib.target_dim <= 2, tpath, "must be 0, 1 or 2");
  if (j.contains("base_points")) {
    const auto bpath = join(path, "base_points");
    expect(j["base_points"].is_array(), bpath, "expected an array");
    for (std::size_t i = 0; i < j["base_points"].size(); ++i) {
      fib.base_points.push_back(string(j["base_points"][i], join(bpath, i)));
    }
  }
  if (j.contains("fiber_classes")) {
    const auto fpath = join(path, "fiber_classes");
    expect(j["fiber_classes"].is_object(), fpath, "expected an object");
    for (const auto& [s, cls] : j["fiber_classes"].items()) {
      const auto spath = join(fpath, s);
      expect(cls.is_object(), spath, "expected an object of curve coefficients");
      Divisor f;
      for (const auto& [id, c] : cls.items()) {
        const auto idx = config.find_curve(id);
        expect(idx.has_value(), join(spath, id), "unknown curve id '" + id + "'");
        f.set(*idx, rational(c, join(spath, id)));
      }
      fib.fiber_classes[s] = std::move(f);
    }
  }
  return fib;
}

}  // namespace

InputDocument parse_input(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 0;
    std::size_t column = 0;
    line_and_column(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
    throw DocumentError("", "malformed JSON at line " + std::to_string(line) + ", column " +
                                std::to_string(column),
                        line, column);
  }
  object(root, "", {"schema_version", "configuration", "model", "pair", "fibration", "options"});
  InputDocument doc;
  doc.schema_version = static_cast<int>(integer(field(root, "", "schema_version"), "/schema_version"));
  expect(doc.schema_version == kSchemaVersion, "/schema_version",
         "unsupported schema version " + std::to_string(doc.schema_version));
  doc.configuration = parse_configuration(field(root, "", "configuration"), "/configuration");
  const auto& config = doc.configuration;

  if (root.contains("model")) {
    const Json& mj = object(root["model"], "/model", {"contracted", "q_factorial"});
    if (mj.contains("contracted")) {
      expect(mj["contracted"].is_array(), "/model/contracted", "expected an array");
      for (std::size_t i = 0; i < mj["contracted"].size(); ++i) {
        doc.contracted.push_back(
            curve_ref(config, mj["contracted"][i], join("/model/contracted", i)));
      }
      std::sort(doc.contracted.begin(), doc.contracted.end());
      expect(std::adjacent_find(doc.contracted.begin(), doc.contracted.end()) ==
                 doc.contracted.end(),
             "/model/contracted", "a curve is listed twice");
    }
    if (mj.contains("q_factorial")) {
      expect(mj["q_factorial"].is_boolean(), "/model/q_factorial", "expected a boolean");
      doc.q_factorial = mj["q_factorial"].get<bool>();
    }
  }
  if (root.contains("pair")) {
    const Json& pj = object(root["pair"], "/pair", {"boundary"});
    if (pj.contains("boundary")) {
      expect(pj["boundary"].is_object(), "/pair/boundary", "expected an object");
      for (const auto& [id, c] : pj["boundary"].items()) {
        const auto path = join(std::string("/pair/boundary"), id);
        const auto idx = config.find_curve(id);
        expect(idx.has_value(), path, "unknown curve id '" + id + "'");
        doc.boundary.set(*idx, rational(c, path));
      }
    }
  }
  if (root.contains("fibration")) {
    doc.fibration = parse_fibration(root["fibration"], "/fibration", config);
  }
  if (root.contains("options")) {
    const Json& oj = object(root["options"], "/options", {"ray_policy", "output_format"});
    if (oj.contains("ray_policy")) {
      expect(oj["ray_policy"].is_array(), "/options/ray_policy", "expected an array");
      for (std::size_t i = 0; i < oj["ray_policy"].size(); ++i) {
        const auto path = join("/options/ray_policy", i);
        curve_ref(config, oj["ray_policy"][i], path);
        doc.options.ray_policy.push_back(oj["ray_policy"][i].get<std::string>());
      }
    }
    if (oj.contains("output_format")) {
      doc.options.output_format = string(oj["output_format"], "/options/output_format");
      expect(doc.options.output_format == "human" || doc.options.output_format == "json",
             "/options/output_format", "must be \"human\" or \"json\"");
    }
  }

  // Semantic checks that need the assembled objects.
  Model model;
  try {
    model = doc.model();
  } catch (const Error& e) {
    throw DocumentError("/model/contracted", e.what());
  }
  try {
    Pair(model, doc.boundary);
  } catch (const Error& e) {
    throw DocumentError("/pair/boundary", e.what());
  }
  if (doc.fibration) {
    try {
      validate_fibration(model, *doc.fibration);
    } catch (const Error& e) {
      throw DocumentError("/fibration", e.what());
    }
  }
  return doc;
}

Json to_json(const InputDocument& doc) {
  const auto& config = doc.configuration;
  Json root;
  root["schema_version"] = doc.schema_version;
  Json cj;
  cj["curves"] = Json::array();
  for (const auto& c : config.curves()) {
    Json curve;
    curve["id"] = c.id;
    curve["self_int"] = c.self_int;
    curve["canon_int"] = c.canon_int;
    if (c.vertical_over) {
      curve["vertical_over"] = *c.vertical_over;
    }
    cj["curves"].push_back(std::move(curve));
  }
  cj["matrix"] = Json::array();
  for (std::size_t r = 0; r < config.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < config.size(); ++c) {
      row.push_back(config.intersection(r, c));
    }
    cj["matrix"].push_back(std::move(row));
  }
  cj["points"] = Json::array();
  for (const auto& p : config.points()) {
    Json pt;
    pt["id"] = p.id;
    pt["curves"] = {config.curve(p.curves[0]).id, config.curve(p.curves[1]).id};
    pt["residue_degree"] = p.residue_degree;
    cj["points"].push_back(std::move(pt));
  }
  if (config.chi_structure()) {
    cj["chi_structure"] = *config.chi_structure();
  }
  if (config.canon_self_int()) {
    cj["canon_self_int"] = *config.canon_self_int();
  }
  root["configuration"] = std::move(cj);

  Json mj;
  mj["contracted"] = Json::array();
  for (auto c : doc.contracted) {
    mj["contracted"].push_back(config.curve(c).id);
  }
  mj["q_factorial"] = doc.q_factorial;
  root["model"] = std::move(mj);

  Json boundary = Json::object();
  for (const auto& [i, x] : doc.boundary.terms()) {
    boundary[config.curve(i).id] = to_string(x);
  }
  root["pair"]["boundary"] = std::move(boundary);

  if (doc.fibration) {
    Json fj;
    fj["target_dim"] = doc.fibration->target_dim;
    fj["base_points"] = doc.fibration->base_points;
    Json classes = Json::object();
    for (const auto& [s, f] : doc.fibration->fiber_classes) {
      Json cls = Json::object();
      for (const auto& [i, x] : f.terms()) {
        if (is_integer(x)) {
          cls[config.curve(i).id] = static_cast<std::int64_t>(boost::multiprecision::numerator(x));
        } else {
          cls[config.curve(i).id] = to_string(x);
        }
      }
      classes[s] = std::move(cls);
    }
    fj["fiber_classes"] = std::move(classes);
    root["fibration"] = std::move(fj);
  }
  Json oj;
  oj["ray_policy"] = doc.options.ray_policy;
  oj["output_format"] = doc.options.output_format;
  root["options"] = std::move(oj);
  return root;
}

std::string serialize(const InputDocument& doc) { return to_json(doc).dump(2) + "\n"; }

}  // namespace surfmmp::cli
