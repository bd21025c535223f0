#include "ccfour/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "ccfour/dziobek.hpp"
#include "ccfour/tetra.hpp"

namespace ccfour::io {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string path_of(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

const Json& field(const Json& obj, const std::string& parent, const std::string& key) {
  if (!obj.is_object()) throw ParseError(parent.empty() ? "document" : parent, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path_of(parent, key), "missing field");
  return *it;
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(where, "expected a finite number");
  return x;
}

std::string text(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where, "expected a string");
  return v.get<std::string>();
}

Vec4 four_numbers(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) throw ParseError(where, "expected an array of 4 numbers");
  Vec4 out{};
  for (std::size_t j = 0; j < 4; ++j) out[j] = number(v[j], where + "[" + std::to_string(j) + "]");
  return out;
}

Json quantized(const Vec4& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(quantize(x));
  return a;
}

Json record_json(const SolutionRecord& r) {
  Json j;
  j["kind"] = r.kind;
  j["lambda"] = quantize(r.lambda);
  j["theta"] = quantize(r.theta);
  j["phi"] = quantize(r.phi);
  Json d = Json::object();
  for (int k = 0; k < 6; ++k) d[pair_key(k)] = quantize(r.distances[static_cast<std::size_t>(k)]);
  j["distances"] = d;
  j["recovered_masses"] = quantized(r.recovered_masses);
  j["residuals"] = {{"mass_mismatch", quantize(r.residuals.mass_mismatch)},
                    {"cm", quantize(r.residuals.cm)},
                    {"sigma_minus_1", quantize(r.residuals.sigma_minus_1)}};
  if (!r.equal_pairs.empty()) {
    Json pairs = Json::array();
    for (const auto& [a, b] : r.equal_pairs) pairs.push_back({a, b});
    j["symmetry"] = {{"equal_distances", pairs}};
  }
  return j;
}

SolutionRecord parse_record(const Json& j, const std::string& where) {
  SolutionRecord r;
  r.kind = text(field(j, where, "kind"), path_of(where, "kind"));
  try {
    ConfigurationType::from_label(r.kind);
  } catch (const PreconditionError&) {
    throw ParseError(path_of(where, "kind"), "unknown kind '" + r.kind + "'");
  }
  r.lambda = number(field(j, where, "lambda"), path_of(where, "lambda"));
  r.theta = number(field(j, where, "theta"), path_of(where, "theta"));
  r.phi = number(field(j, where, "phi"), path_of(where, "phi"));

  const std::string dpath = path_of(where, "distances");
  const Json& d = field(j, where, "distances");
  if (!d.is_object()) throw ParseError(dpath, "expected an object");
  std::array<bool, 6> seen{};
  for (const auto& [key, value] : d.items()) {
    const int k = pair_index_from_key(key);
    if (k < 0) throw ParseError(path_of(dpath, key), "unknown distance key");
    if (seen[static_cast<std::size_t>(k)]) throw ParseError(path_of(dpath, key), "duplicate pair");
    seen[static_cast<std::size_t>(k)] = true;
    r.distances[static_cast<std::size_t>(k)] = number(value, path_of(dpath, key));
  }
  for (int k = 0; k < 6; ++k) {
    if (!seen[static_cast<std::size_t>(k)]) throw ParseError(path_of(dpath, pair_key(k)), "missing field");
  }

  if (j.contains("recovered_masses")) {
    r.recovered_masses = four_numbers(j["recovered_masses"], path_of(where, "recovered_masses"));
  }
  if (j.contains("residuals")) {
    const std::string rp = path_of(where, "residuals");
    const Json& res = j["residuals"];
    r.residuals.mass_mismatch = number(field(res, rp, "mass_mismatch"), path_of(rp, "mass_mismatch"));
    r.residuals.cm = number(field(res, rp, "cm"), path_of(rp, "cm"));
    r.residuals.sigma_minus_1 = number(field(res, rp, "sigma_minus_1"), path_of(rp, "sigma_minus_1"));
  }
  if (j.contains("symmetry")) {
    const std::string sp = path_of(where, "symmetry.equal_distances");
    const Json& pairs = field(j["symmetry"], path_of(where, "symmetry"), "equal_distances");
    if (!pairs.is_array()) throw ParseError(sp, "expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string ip = sp + "[" + std::to_string(i) + "]";
      if (!pairs[i].is_array() || pairs[i].size() != 2) throw ParseError(ip, "expected a key pair");
      r.equal_pairs.emplace_back(text(pairs[i][0], ip), text(pairs[i][1], ip));
    }
  }
  return r;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte > 0 ? e.byte - 1 : 0)),
                     "invalid JSON");
  }
}

std::string fixed15(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_json(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
      out += "null";
      return;
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string text(buf, res.ptr);
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    out += text;
  } else if (j.is_array() && !j.empty()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      write_json(out, j[i], depth + 1);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      write_json(out, value, depth + 1);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else {
    out += j.dump();
  }
}

}  // namespace

double quantize(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.14e", x);
  return std::strtod(buf, nullptr);
}

std::vector<std::pair<std::string, std::string>> equal_distance_pairs(const std::array<double, 6>& r,
                                                                      double rel_tol) {
  const double scale = *std::max_element(r.begin(), r.end());
  std::vector<std::pair<std::string, std::string>> out;
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      if (std::abs(r[static_cast<std::size_t>(a)] - r[static_cast<std::size_t>(b)]) <= rel_tol * scale) {
        out.emplace_back(pair_key(a), pair_key(b));
      }
    }
  }
  return out;
}

SolutionRecord to_record(const CentralConfiguration& c, bool annotate_symmetry) {
  SolutionRecord r;
  r.kind = c.kind.label();
  r.lambda = c.lambda;
  r.theta = c.direction.theta;
  r.phi = c.direction.phi;
  r.distances = c.distances.values();
  r.recovered_masses = c.recovered.values();
  r.residuals = c.residuals;
  if (annotate_symmetry) r.equal_pairs = equal_distance_pairs(r.distances);
  return r;
}

std::string serialize(const SolutionDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["command"] = doc.command;
  j["masses"] = quantized(doc.masses);
  if (doc.relabel) j["relabel"] = *doc.relabel;
  Json list = Json::array();
  for (const auto& r : doc.solutions) list.push_back(record_json(r));
  j["solutions"] = list;
  std::string out;
  write_json(out, j, 0);
  return out + "\n";
}

SolutionDocument parse(std::string_view text_in) {
  const Json j = parse_json(text_in);
  SolutionDocument doc;
  const Json& version = field(j, "", "schema_version");
  if (!version.is_number_integer()) throw ParseError("schema_version", "expected an integer");
  doc.schema_version = version.get<int>();
  if (doc.schema_version != kSchemaVersion) {
    throw ParseError("schema_version", "unsupported version " + std::to_string(doc.schema_version));
  }
  if (j.contains("command")) doc.command = text(j["command"], "command");
  doc.masses = four_numbers(field(j, "", "masses"), "masses");
  if (j.contains("relabel")) {
    const Vec4 p = four_numbers(j["relabel"], "relabel");
    std::array<int, 4> perm{};
    for (std::size_t k = 0; k < 4; ++k) perm[k] = static_cast<int>(p[k]);
    doc.relabel = perm;
  }
  const Json& list = field(j, "", "solutions");
  if (!list.is_array()) throw ParseError("solutions", "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    doc.solutions.push_back(parse_record(list[i], "solutions[" + std::to_string(i) + "]"));
  }
  return doc;
}

void apply_settings(SolverSettings& s, std::string_view json_text) {
  const Json j = parse_json(json_text);
  if (!j.is_object()) throw ParseError("document", "expected an object");
  const auto as_int = [](const Json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ParseError(key, "expected an integer");
    return v.get<int>();
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "lambda_scan_points") s.lambda_scan_points = as_int(v, key);
    else if (key == "lambda_root_tol") s.lambda_root_tol = number(v, key);
    else if (key == "angle_tol") s.angle_tol = number(v, key);
    else if (key == "mass_tol") s.mass_tol = number(v, key);
    else if (key == "grid_theta") s.grid_theta = as_int(v, key);
    else if (key == "grid_phi") s.grid_phi = as_int(v, key);
    else if (key == "grid_lambda_scan_points") s.grid_lambda_scan_points = as_int(v, key);
    else if (key == "seeds_per_region") s.seeds_per_region = as_int(v, key);
    else if (key == "max_iterations") s.max_iterations = as_int(v, key);
    else if (key == "threads") s.threads = as_int(v, key);
    else throw ParseError(key, "unknown setting");
  }
  s.validate();
}

bool RecordCheck::passed(const Tolerances& tol) const {
  return failure.empty() && kind_matches && dziobek <= tol.dziobek && std::abs(cm) <= tol.cm &&
         std::abs(sigma_minus_1) <= tol.sigma && mass <= tol.mass;
}

std::pair<std::string, double> RecordCheck::worst(const Tolerances& tol) const {
  const std::array<std::pair<std::string, double>, 4> items{{
      {"dziobek", dziobek},
      {"cm", cm},
      {"sigma", sigma_minus_1},
      {"mass", mass},
  }};
  const std::array<double, 4> limits{tol.dziobek, tol.cm, tol.sigma, tol.mass};
  std::size_t k = 0;
  double ratio = -1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double q = std::abs(items[i].second) / limits[i];
    if (q > ratio || std::isnan(q)) {
      ratio = q;
      k = i;
    }
  }
  return items[k];
}

RecordCheck verify_record(const MassVector& masses, const SolutionRecord& record) {
  RecordCheck out;
  const Tetrahedron tetra = build_tetrahedron(masses);
  const WeightedAreas A = weighted_areas(tetra, Direction{record.theta, record.phi});

  DistanceSet d;
  try {
    d = DistanceSet(record.distances);
  } catch (const Error& e) {
    out.failure = e.what();
    out.dziobek = out.cm = out.sigma_minus_1 = out.mass = kInf;
    return out;
  }
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[static_cast<std::size_t>(k)];
    const double r = d.at(k);
    out.dziobek = std::max(out.dziobek, std::abs(1.0 / (r * r * r) - 1.0 - record.lambda * A[i] * A[j]));
  }
  out.cm = cayley_menger_normalized(d);
  out.sigma_minus_1 = sigma(masses, d) - 1.0;

  out.mass = kInf;
  try {
    const PlanarConfig p = embed_planar(d);
    out.kind_matches = classify(p.S).label() == record.kind;
    const MassVector m_hat = recovered_masses(p.S, A, masses.total());
    out.mass = 0.0;
    for (int j = 0; j < 4; ++j) out.mass = std::max(out.mass, std::abs(m_hat[j] - masses[j]) / masses.total());
  } catch (const Error& e) {
    out.failure = e.what();
  }
  return out;
}

bool records_match(const SolutionRecord& expected, const SolutionRecord& actual,
                   const MatchTolerances& tol) {
  if (expected.kind != actual.kind) return false;
  if (!(std::abs(expected.lambda - actual.lambda) <= tol.lambda)) return false;
  for (std::size_t k = 0; k < 6; ++k) {
    if (!(std::abs(expected.distances[k] - actual.distances[k]) <= tol.distance)) return false;
  }
  const double dphi = std::remainder(expected.phi - actual.phi, 2.0 * std::numbers::pi);
  return std::abs(expected.theta - actual.theta) <= tol.angle && std::abs(dphi) <= tol.angle;
}

int find_match(const SolutionRecord& expected, const std::vector<SolutionRecord>& candidates,
               const MatchTolerances& tol) {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (records_match(expected, candidates[i], tol)) return static_cast<int>(i);
  }
  return -1;
}

void print_table(std::ostream& out, const SolutionDocument& doc) {
  const auto key = [](int i, int j) {
    if (i > j) std::swap(i, j);
    return "r" + std::to_string(i + 1) + std::to_string(j + 1);
  };
  const auto cell = [&](const SolutionRecord& r, int i, int j) {
    return key(i, j) + " = " + fixed15(r.distances[static_cast<std::size_t>(pair_index(i, j))]);
  };
  out << "masses " << fixed15(doc.masses[0]) << ", " << fixed15(doc.masses[1]) << ", "
      << fixed15(doc.masses[2]) << ", " << fixed15(doc.masses[3]) << ": " << doc.solutions.size()
      << (doc.solutions.size() == 1 ? " solution\n" : " solutions\n");

  for (const auto& r : doc.solutions) {
    const ConfigurationType t = ConfigurationType::from_label(r.kind);
    out << '\n' << r.kind << "  lambda = " << fixed15(r.lambda) << '\n';
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("theta = " + fixed15(r.theta), "phi = " + fixed15(r.phi));
    if (t.kind == ConfigurationType::Kind::Concave) {
      const int c = t.interior;
      for (int i = 0; i < 4; ++i) {
        if (i == c) continue;
        int a = -1, b = -1;
        for (int k = 0; k < 4; ++k) {
          if (k == c || k == i) continue;
          (a < 0 ? a : b) = k;
        }
        rows.emplace_back(cell(r, c, i), cell(r, a, b));
      }
    } else if (t.kind == ConfigurationType::Kind::Convex) {
      const auto& dg = t.diagonals;
      // Diagonals through particle 4 keep the "r4j" spelling.
      const auto diagonal = [&](int i, int j) {
        const std::string value = cell(r, i, j);
        return j == 3 ? "r4" + std::to_string(i + 1) + value.substr(3) : value;
      };
      rows.emplace_back(diagonal(dg[0].first, dg[0].second), diagonal(dg[1].first, dg[1].second));
      const int p = dg[0].first, q = dg[0].second, s = dg[1].first, u = dg[1].second;
      rows.emplace_back(cell(r, p, s), cell(r, q, u));
      rows.emplace_back(cell(r, p, u), cell(r, q, s));
    }
    for (const auto& [left, right] : rows) out << "  " << std::left << std::setw(30) << left << right << '\n';
    for (const auto& [a, b] : r.equal_pairs) out << "  " << a << " = " << b << '\n';
  }
}

}  // namespace ccfour::io
