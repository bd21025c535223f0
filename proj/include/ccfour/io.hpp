#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccfour/errors.hpp"
#include "ccfour/solver.hpp"

namespace ccfour::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed document. `where` is "line N" for syntax errors or a field path
/// such as "solutions[2].lambda" for schema errors.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct SolutionRecord {
  std::string kind;
  double lambda = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  std::array<double, 6> distances{};
  Vec4 recovered_masses{};
  Residuals residuals;
  /// Pairs of distance keys equal to 1e-12 relative, e.g. {"r13", "r14"}. Kite output only.
  std::vector<std::pair<std::string, std::string>> equal_pairs;

  bool operator==(const SolutionRecord&) const = default;
};

struct SolutionDocument {
  int schema_version = kSchemaVersion;
  std::string command;
  Vec4 masses{};
  /// relabel[k] is the 1-based input position now stored at position k + 1.
  std::optional<std::array<int, 4>> relabel;
  std::vector<SolutionRecord> solutions;

  bool operator==(const SolutionDocument&) const = default;
};

/// Rounds to 15 significant digits.
double quantize(double x);

SolutionRecord to_record(const CentralConfiguration& c, bool annotate_symmetry = false);

/// Distance key pairs equal to `rel_tol` relative to the largest distance.
std::vector<std::pair<std::string, std::string>> equal_distance_pairs(
    const std::array<double, 6>& r, double rel_tol = 1e-12);

/// JSON text, every real quantized to 15 significant digits.
std::string serialize(const SolutionDocument& doc);
SolutionDocument parse(std::string_view text);

/// Applies a JSON object of SolverSettings field overrides. Unknown keys and
/// wrong types throw ParseError; out-of-range values throw PreconditionError.
void apply_settings(SolverSettings& settings, std::string_view json_text);

struct Tolerances {
  double dziobek = 1e-8;
  double cm = 1e-10;
  double sigma = 1e-9;
  double mass = 1e-8;
};

struct RecordCheck {
  /// max |r^-3 - 1 - lambda A_j A_k| with A from the stored angles.
  double dziobek = 0.0;
  double cm = 0.0;
  double sigma_minus_1 = 0.0;
  /// max |m_hat_j - m_j| / m; infinite when the distances cannot be embedded.
  double mass = 0.0;
  bool kind_matches = false;
  std::string failure;

  bool passed(const Tolerances& tol = {}) const;
  /// Name and value of the residual furthest above (or closest to) its tolerance.
  std::pair<std::string, double> worst(const Tolerances& tol = {}) const;
};

RecordCheck verify_record(const MassVector& masses, const SolutionRecord& record);

struct MatchTolerances {
  double lambda = 1e-9;
  double distance = 1e-9;
  double angle = 1e-6;
};

/// Same kind, lambda, six distances and angles (phi compared mod 2 pi).
bool records_match(const SolutionRecord& expected, const SolutionRecord& actual,
                   const MatchTolerances& tol = {});

/// Index of the first record in `candidates` matching `expected`, or -1.
int find_match(const SolutionRecord& expected, const std::vector<SolutionRecord>& candidates,
               const MatchTolerances& tol = {});

/// Two columns per record: opposite edges share a row.
void print_table(std::ostream& out, const SolutionDocument& doc);

}  // namespace ccfour::io
