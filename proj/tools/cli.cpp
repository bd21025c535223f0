#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccfour/atlas.hpp"
#include "ccfour/errors.hpp"
#include "ccfour/io.hpp"
#include "ccfour/solver.hpp"
#include "ccfour/tetra.hpp"

#ifndef CCFOUR_GOLDEN_DIR
#define CCFOUR_GOLDEN_DIR "data/golden"
#endif

namespace ccfour::cli {

namespace {

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string masses;
  std::string out;
  std::string settings;
  std::string grid = "64x128";
  std::string file;
  std::string golden = default_golden_dir();
  bool with_solutions = false;
  bool relabel = false;
};

Vec4 parse_masses(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 4) throw ValidationError("--masses needs four comma-separated values");
  Vec4 m{};
  for (std::size_t j = 0; j < 4; ++j) {
    std::size_t used = 0;
    try {
      m[j] = std::stod(parts[j], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != parts[j].size()) {
      throw ValidationError("mass " + std::to_string(j + 1) + " is not a number: '" + parts[j] + "'");
    }
  }
  MassVector{m};
  return m;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  int n = 0, m = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t a = 0, b = 0;
    n = std::stoi(text.substr(0, x), &a);
    m = std::stoi(text.substr(x + 1), &b);
    if (a != x || b != text.size() - x - 1) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ValidationError("--grid expects NxM, got '" + text + "'");
  }
  if (n < 2 || m < 2) throw ValidationError("--grid sizes must be at least 2");
  return {n, m};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f << content;
  f.close();
  if (!f) throw IoError("cannot write " + path);
}

SolverSettings load_settings(const Options& o) {
  SolverSettings s;
  if (!o.settings.empty()) {
    try {
      io::apply_settings(s, read_file(o.settings));
    } catch (const io::ParseError& e) {
      throw io::ParseError(o.settings + ": " + e.where(), "invalid settings");
    }
  }
  return s;
}

void emit(const io::SolutionDocument& doc, const Options& o, std::ostream& out, std::ostream& err) {
  const std::string json = io::serialize(doc);
  if (o.out.empty()) {
    out << json;
    io::print_table(err, doc);
  } else {
    write_file(o.out, json);
    io::print_table(out, doc);
  }
  for (std::size_t i = 0; i < doc.solutions.size(); ++i) {
    if (doc.solutions[i].lambda > 0.0) err << "warning: solution " << i + 1 << " has lambda > 0\n";
  }
}

std::vector<io::SolutionRecord> records(const std::vector<CentralConfiguration>& sols, bool symmetry) {
  std::vector<io::SolutionRecord> out;
  for (const auto& c : sols) out.push_back(io::to_record(c, symmetry));
  return out;
}

bool equal_masses(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

// Permutation moving the equal pair to positions 3 and 4, others keeping order.
std::optional<std::array<int, 4>> kite_permutation(const Vec4& m) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!equal_masses(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)])) continue;
      std::array<int, 4> p{};
      int k = 0;
      for (int r = 0; r < 4; ++r) {
        if (r != i && r != j) p[static_cast<std::size_t>(k++)] = r;
      }
      p[2] = i;
      p[3] = j;
      return p;
    }
  }
  return std::nullopt;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const Vec4 m = parse_masses(o.masses);
  const SolverSettings s = load_settings(o);
  io::SolutionDocument doc;
  doc.command = "solve";
  doc.masses = m;
  doc.solutions = records(solve_all(MassVector{m}, s), false);
  emit(doc, o, out, err);
  return kOk;
}

int cmd_kite(const Options& o, std::ostream& out, std::ostream& err) {
  Vec4 m = parse_masses(o.masses);
  const SolverSettings s = load_settings(o);
  io::SolutionDocument doc;
  doc.command = "kite";
  if (!equal_masses(m[2], m[3])) {
    if (!o.relabel) throw PreconditionError("kite needs m3 == m4; pass --relabel to move an equal pair there");
    const auto p = kite_permutation(m);
    if (!p) throw PreconditionError("kite needs two equal masses");
    const Vec4 orig = m;
    std::array<int, 4> one_based{};
    for (std::size_t k = 0; k < 4; ++k) {
      m[k] = orig[static_cast<std::size_t>((*p)[k])];
      one_based[k] = (*p)[k] + 1;
    }
    doc.relabel = one_based;
    err << "relabeled masses to " << m[0] << "," << m[1] << "," << m[2] << "," << m[3] << "\n";
  }
  doc.masses = m;
  const KiteResult kite = solve_kite(MassVector{m}, s);
  doc.solutions = records(kite.solutions, true);
  emit(doc, o, out, err);
  std::ostream& info = o.out.empty() ? err : out;
  info << "\nsectors over the semicircle:\n";
  for (const auto& sector : kite.sectors) {
    info << "  " << sector.pattern.label() << "  t in [" << sector.t_begin << ", " << sector.t_end
         << "]  solutions: " << sector.solutions << "\n";
  }
  return kOk;
}

int cmd_map(const Options& o, std::ostream& out, std::ostream& err) {
  const Vec4 m = parse_masses(o.masses);
  const auto [nt, np] = parse_grid(o.grid);
  const SolverSettings s = load_settings(o);
  const Tetrahedron tetra = build_tetrahedron(MassVector{m});
  const auto samples = sample_hemisphere(tetra, nt, np);
  const auto circles = great_circles(tetra, 361);
  std::vector<CentralConfiguration> sols;
  if (o.with_solutions) sols = solve_all(MassVector{m}, s);

  const std::string prefix = o.out.empty() ? "map" : o.out;
  std::ostringstream csv, svg;
  write_region_csv(csv, samples);
  write_region_svg(svg, tetra, samples, circles, sols);
  write_file(prefix + ".csv", csv.str());
  write_file(prefix + ".svg", svg.str());

  out << "wrote " << prefix << ".csv and " << prefix << ".svg (" << samples.size() << " samples)\n";
  for (const auto& [label, count] : pattern_census(samples)) out << "  " << label << ": " << count << "\n";
  if (o.with_solutions) {
    out << "overlaid " << sols.size() << " solutions\n";
    for (const auto& c : sols) {
      out << "  " << c.kind.label() << "  lambda = " << c.lambda << "  region "
          << sign_pattern(tetra, c.direction).label() << "\n";
    }
  }
  (void)err;
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  io::SolutionDocument doc;
  try {
    doc = io::parse(read_file(o.file));
  } catch (const io::ParseError& e) {
    throw io::ParseError(o.file + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
  const Vec4 m = o.masses.empty() ? doc.masses : parse_masses(o.masses);
  const MassVector masses{m};
  int failures = 0;
  for (std::size_t i = 0; i < doc.solutions.size(); ++i) {
    const auto& r = doc.solutions[i];
    const io::RecordCheck c = io::verify_record(masses, r);
    const bool ok = c.passed();
    failures += ok ? 0 : 1;
    const auto [name, value] = c.worst();
    char line[256];
    std::snprintf(line, sizeof line,
                  "%-4s record %zu %-13s lambda=%.15g worst %s=%.3e  dziobek=%.3e cm=%.3e sigma-1=%.3e mass=%.3e%s",
                  ok ? "PASS" : "FAIL", i + 1, r.kind.c_str(), r.lambda, name.c_str(), value, c.dziobek,
                  c.cm, c.sigma_minus_1, c.mass, c.kind_matches ? "" : "  kind mismatch");
    out << line;
    if (!c.failure.empty()) out << "  (" << c.failure << ")";
    out << "\n";
  }
  out << doc.solutions.size() - static_cast<std::size_t>(failures) << "/" << doc.solutions.size()
      << " records pass\n";
  return failures == 0 ? kOk : kVerification;
}

std::vector<io::SolutionRecord> run_golden(const io::SolutionDocument& golden, const Vec4& m,
                                           const SolverSettings& s) {
  if (golden.command == "kite") return records(solve_kite(MassVector{m}, s).solutions, true);
  return records(solve_all(MassVector{m}, s), false);
}

int count_matches(const io::SolutionDocument& golden, const std::vector<io::SolutionRecord>& got) {
  int n = 0;
  for (const auto& g : golden.solutions) n += io::find_match(g, got) >= 0 ? 1 : 0;
  return n;
}

int cmd_repro(const Options& o, std::ostream& out, std::ostream& err) {
  const SolverSettings s = load_settings(o);
  const std::array<const char*, 3> files{"general_10_13_15_17.json", "kite_8_10_9_9.json",
                                         "asymmetric_8_10_9_9.json"};
  bool all_found = true;
  for (const char* name : files) {
    const std::string path = o.golden + "/" + name;
    const io::SolutionDocument golden = io::parse(read_file(path));
    const Vec4 m = golden.masses;
    const auto got = run_golden(golden, m, s);
    out << name << " (" << golden.command << " " << m[0] << "," << m[1] << "," << m[2] << "," << m[3]
        << "): " << got.size() << " computed, " << golden.solutions.size() << " tabulated\n";

    std::vector<bool> used(got.size(), false);
    int found = 0;
    for (const auto& g : golden.solutions) {
      const int k = io::find_match(g, got);
      if (k >= 0) {
        used[static_cast<std::size_t>(k)] = true;
        ++found;
      }
      out << "  " << (k >= 0 ? "MATCH  " : "MISSING") << " " << g.kind << " lambda=" << io::quantize(g.lambda)
          << "\n";
    }
    for (std::size_t k = 0; k < got.size(); ++k) {
      if (!used[k]) out << "  EXTRA   " << got[k].kind << " lambda=" << io::quantize(got[k].lambda) << "\n";
    }
    if (!o.out.empty()) {
      io::SolutionDocument doc;
      doc.command = golden.command;
      doc.masses = m;
      doc.solutions = got;
      write_file(o.out + "/" + name, io::serialize(doc));
    }
    if (found == static_cast<int>(golden.solutions.size())) continue;
    all_found = false;

    std::array<int, 4> p{0, 1, 2, 3};
    std::vector<Vec4> tried{m};
    while (std::next_permutation(p.begin(), p.end())) {
      Vec4 q{};
      for (std::size_t k = 0; k < 4; ++k) q[k] = m[static_cast<std::size_t>(p[k])];
      if (std::find(tried.begin(), tried.end(), q) != tried.end()) continue;
      tried.push_back(q);
      if (golden.command == "kite" && !equal_masses(q[2], q[3])) continue;
      if (count_matches(golden, run_golden(golden, q, s)) == static_cast<int>(golden.solutions.size())) {
        out << "  note: every tabulated record matches when the masses are read as " << q[0] << "," << q[1]
            << "," << q[2] << "," << q[3] << "\n";
        break;
      }
    }
  }
  if (!all_found) err << "repro: some tabulated solutions were not reproduced\n";
  return all_found ? kOk : kVerification;
}

}  // namespace

std::string default_golden_dir() { return CCFOUR_GOLDEN_DIR; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar central configurations of four bodies", "ccfour"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "All planar central configurations for the given masses");
  auto* kite = app.add_subcommand("kite", "Symmetric configurations for two equal masses");
  auto* map = app.add_subcommand("map", "Sign-pattern map of the direction hemisphere");
  auto* verify = app.add_subcommand("verify", "Recheck every record of a solutions file");
  auto* repro = app.add_subcommand("repro", "Compare against the bundled golden tables");

  for (auto* sub : {solve, kite, map}) {
    sub->add_option("--masses", o.masses, "Four positive masses a,b,c,d")->required();
    sub->add_option("--settings", o.settings, "JSON file of solver setting overrides");
  }
  solve->add_option("--out", o.out, "Write the JSON document here");
  kite->add_option("--out", o.out, "Write the JSON document here");
  kite->add_flag("--relabel", o.relabel, "Move an equal mass pair to positions 3 and 4");
  map->add_option("--out", o.out, "Output prefix for .csv and .svg")->default_str("map");
  map->add_option("--grid", o.grid, "Theta x phi samples")->default_str("64x128");
  map->add_flag("--with-solutions", o.with_solutions, "Overlay solve results");
  verify->add_option("file", o.file, "Solutions document")->required();
  verify->add_option("--masses", o.masses, "Override the masses stored in the file");
  repro->add_option("--golden", o.golden, "Golden file directory")->default_str(o.golden);
  repro->add_option("--out", o.out, "Directory for the computed documents");
  repro->add_option("--settings", o.settings, "JSON file of solver setting overrides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kOk : kValidation;
  }

  try {
    if (*solve) return cmd_solve(o, out, err);
    if (*kite) return cmd_kite(o, out, err);
    if (*map) return cmd_map(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    return cmd_repro(o, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace ccfour::cli
