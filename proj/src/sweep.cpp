#include "infoscale/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>
#include <type_traits>
#include <variant>

#include <json.hpp>

#include "infoscale/errors.hpp"
#include "infoscale/logging.hpp"

namespace infoscale {

namespace {

constexpr const char* kColumns[] = {"param",     "baseline_qoi", "true_qoi",  "xi_lower",
                                    "xi_upper",  "lin_lower",    "lin_upper", "re_rate"};

std::array<double, 8> as_array(const PhaseRow& r) {
  return {r.param, r.baseline_qoi, r.true_qoi, r.xi_lower, r.xi_upper, r.lin_lower, r.lin_upper, r.re_rate};
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

PhaseRow nan_row(double param) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {param, nan, nan, nan, nan, nan, nan, nan};
}

}  // namespace

std::vector<double> SweepGrid::points() const {
  if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step)) {
    throw ParameterError("sweep grid: bounds and step must be finite");
  }
  if (!(step > 0.0)) throw ParameterError("sweep grid: step must be positive");
  if (from > to) throw ParameterError("sweep grid: empty range (from > to)");
  std::vector<double> out;
  const double slack = 1e-9 * step;
  for (long i = 0;; ++i) {
    double x = from + static_cast<double>(i) * step;
    if (x > to + slack) break;
    if (std::abs(x) < slack) x = 0.0;
    out.push_back(x);
  }
  return out;
}

std::vector<std::string> figure_names() { return {"2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b"}; }

SweepConfig figure_preset(std::string_view name) {
  const SweepGrid beta_grid{0.1, 2.0, 0.01};
  const SweepGrid h_grid{-1.5, 1.5, 0.01};
  SweepConfig c;
  c.name = std::string(name);
  if (name == "2a") {
    c.baseline = MeanFieldParams{1.0, 2.0, 0.0, 1, Branch::positive};
    c.target = MeanFieldParams{1.0, 2.0, 0.6, 1, Branch::positive};
    c.variable = SweepVariable::beta;
    c.grid = beta_grid;
  } else if (name == "2b") {
    c.baseline = MeanFieldParams{1.0, 1.0, 0.0, 1, Branch::positive};
    c.target = MeanFieldParams{1.6, 1.0, 0.0, 1, Branch::positive};
    c.variable = SweepVariable::h;
    c.grid = h_grid;
  } else if (name == "3a") {
    c.baseline = MeanFieldParams{1.0, 1.0, 0.0, 1, Branch::positive};
    c.target = Ising1DParams{1.0, 1.0, 0.0};
    c.variable = SweepVariable::beta;
    c.grid = beta_grid;
  } else if (name == "3b") {
    c.baseline = MeanFieldParams{1.0, 1.0, 0.0, 1, Branch::positive};
    c.target = Ising1DParams{1.0, 1.0, 0.0};
    c.variable = SweepVariable::h;
    c.grid = h_grid;
  } else if (name == "4a" || name == "4b") {
    const Branch b = name == "4a" ? Branch::positive : Branch::negative;
    c.baseline = MeanFieldParams{1.0, 1.0, 0.0, 2, b};
    c.target = Ising2DParams{1.0, 1.0, b};
    c.variable = SweepVariable::beta;
    c.grid = beta_grid;
  } else if (name == "5a") {
    c.baseline = Ising1DParams{1.0, 1.0, 0.0};
    c.target = Ising1DParams{1.0, 1.0, 0.6};
    c.variable = SweepVariable::beta;
    c.grid = beta_grid;
  } else if (name == "5b") {
    c.baseline = Ising1DParams{1.0, 1.0, 0.0};
    c.target = Ising1DParams{1.6, 1.0, 0.0};
    c.variable = SweepVariable::h;
    c.grid = h_grid;
  } else {
    throw ParameterError("unknown figure preset '" + std::string(name) + "' (expected 2a, 2b, 3a, 3b, 4a, 4b, 5a or 5b)");
  }
  return c;
}

ModelSpec with_parameter(ModelSpec model, SweepVariable variable, double value) {
  std::visit(
      [&](auto& m) {
        using T = std::decay_t<decltype(m)>;
        if (variable == SweepVariable::beta) {
          m.beta = value;
        } else if constexpr (std::is_same_v<T, Ising2DParams>) {
          throw UnsupportedCombinationError("sweep: the square-lattice model has no field parameter");
        } else {
          m.h = value;
        }
      },
      model);
  return model;
}

SweepResult run_study(const SweepConfig& config) {
  const std::vector<double> xs = config.grid.points();
  SweepResult result;
  result.rows.resize(xs.size());
  std::vector<char> failed(xs.size(), 0);

  auto evaluate = [&](std::size_t i) {
    const double x = xs[i];
    try {
      result.rows[i] = phase_bound(with_parameter(config.target, config.variable, x),
                                   with_parameter(config.baseline, config.variable, x), x);
    } catch (const Error& e) {
      result.rows[i] = nan_row(x);
      failed[i] = 1;
      logger()->warn("grid point {} failed: {}", format_value(x), e.what());
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(xs.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < xs.size(); i = next++) evaluate(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (char f : failed) result.failed_rows += static_cast<std::size_t>(f);
  return result;
}

std::string csv_header() {
  std::string h;
  for (const char* c : kColumns) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h;
}

std::string format_rows(const std::vector<PhaseRow>& rows, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::string out = csv_header() + "\n";
    for (const PhaseRow& r : rows) {
      const auto v = as_array(r);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += format_value(v[i]);
      }
      out += '\n';
    }
    return out;
  }
  nlohmann::json doc;
  doc["columns"] = kColumns;
  doc["rows"] = nlohmann::json::array();
  for (const PhaseRow& r : rows) {
    nlohmann::json row = nlohmann::json::array();
    // Round through the CSV text form so both formats carry the same digits.
    for (double v : as_array(r)) {
      if (std::isnan(v)) {
        row.push_back(nullptr);
      } else {
        row.push_back(std::strtod(format_value(v).c_str(), nullptr));
      }
    }
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::vector<PhaseRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("csv: missing header");
  ++line_no;
  if (line != csv_header()) throw ParseError("csv line 1: unexpected header '" + line + "'");
  std::vector<PhaseRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, 8> v{};
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (field >= v.size()) throw ParseError("csv line " + std::to_string(line_no) + ": too many fields");
      char* end = nullptr;
      v[field] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') {
        throw ParseError("csv line " + std::to_string(line_no) + ", field '" + kColumns[field] + "': bad number '" +
                         cell + "'");
      }
      ++field;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (field != v.size()) throw ParseError("csv line " + std::to_string(line_no) + ": expected 8 fields");
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  return rows;
}

}  // namespace infoscale
