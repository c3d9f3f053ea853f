#pragma once
// End-to-end verification of a hypersurface with a cyclic action, plus
// standalone germ computations, recorded step by step.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsmooth/geom.hpp"

namespace qsmooth::geom {

struct ActionSpec {
  long order = 1;
  std::vector<long> weights;
};

struct GermEntry {
  std::string name;
  std::vector<std::string> variables;
  std::vector<std::string> equations;
  std::optional<ActionSpec> action;
  // Generators of M, one string per component.
  std::vector<std::vector<std::string>> submodule;
};

struct QuotientPointDecl {
  std::string label;
  long order = 1;
  std::vector<long> weights;
};

struct VerificationManifest {
  std::string name;
  std::optional<AmbientSpace> ambient;
  std::vector<std::string> variables;
  std::optional<std::string> equation;
  std::optional<ActionSpec> action;
  std::vector<Point> claimed_singular_points;
  std::optional<std::string> perturbation;
  // Number of quotient points stated alongside the example, for comparison.
  std::optional<std::size_t> stated_quotient_points;
  std::vector<GermEntry> germs;
  std::vector<QuotientPointDecl> quotient_points;
  // Free-form claims copied into the report.
  nlohmann::json claims;
};

enum class StepStatus { Pass, Fail, Skipped, Error };
std::string to_string(StepStatus s);

struct StepRecord {
  std::string step;
  StepStatus status = StepStatus::Skipped;
  nlohmann::json certificate;
  double wall_ms = 0;
};

struct Report {
  std::string name;
  nlohmann::json claims;
  std::vector<StepRecord> steps;

  // Every step passed or was skipped.
  bool passed() const;
  bool has_error() const;
};

struct PipelineOptions {
  bool germ_only = false;
  bool skip_family = false;
  GbOptions gb;
  t1::T1Options t1;
};

// Runs every step even after failures. Exceptions inside a step become
// Fail (rejected input such as a claim off the hypersurface) or Error.
Report example_pipeline(const VerificationManifest& manifest, const PipelineOptions& options = {});

}  // namespace qsmooth::geom
