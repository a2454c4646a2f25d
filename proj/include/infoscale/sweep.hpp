#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "infoscale/exact_models.hpp"

namespace infoscale {

enum class SweepVariable { beta, h };

struct SweepGrid {
  double from = 0.0;
  double to = 0.0;
  double step = 0.01;

  /// from + i * step up to `to` inclusive; values within 1e-9 step of zero snap to 0.
  /// Throws ParameterError for a non-positive step or an empty range.
  std::vector<double> points() const;
};

struct SweepConfig {
  std::string name;
  ModelSpec target;
  ModelSpec baseline;
  SweepVariable variable = SweepVariable::beta;
  SweepGrid grid;
  unsigned jobs = 1;
};

std::vector<std::string> figure_names();

/// Parameter bindings of a phase-diagram figure: 2a, 2b, 3a, 3b, 4a, 4b, 5a or 5b.
SweepConfig figure_preset(std::string_view name);

/// Copy of `model` with beta or h replaced.
ModelSpec with_parameter(ModelSpec model, SweepVariable variable, double value);

struct SweepResult {
  std::vector<PhaseRow> rows;
  std::size_t failed_rows = 0;  // rows filled with NaN after a numeric failure
};

/// Evaluates every grid point, in parallel when jobs > 1. Rows come back in
/// grid order regardless of the number of jobs.
SweepResult run_study(const SweepConfig& config);

enum class OutputFormat { csv, json };

std::string csv_header();
std::string format_rows(const std::vector<PhaseRow>& rows, OutputFormat format);

/// Inverse of format_rows for CSV; throws ParseError with the offending line.
std::vector<PhaseRow> parse_csv(std::string_view text);

}  // namespace infoscale
