#include "infoscale/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "infoscale/errors.hpp"

namespace infoscale {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_document(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size() + 1);
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < pos; ++i) line += text[i] == '\n' ? 1 : 0;
    throw ParseError(source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& what) {
  throw ParseError(source + ": field '" + field + "': " + what);
}

const json& require(const json& doc, const std::string& key, const std::string& source) {
  if (!doc.is_object()) throw ParseError(source + ": top level must be a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) field_error(source, key, "missing");
  return *it;
}

double number(const json& v, const std::string& field, const std::string& source) {
  if (!v.is_number()) field_error(source, field, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& field, const std::string& source) {
  if (!v.is_number_integer()) field_error(source, field, "expected an integer");
  return v.get<int>();
}

std::vector<double> numbers(const json& v, const std::string& field, const std::string& source) {
  if (!v.is_array()) field_error(source, field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], field + "[" + std::to_string(i) + "]", source));
  return out;
}

double optional_number(const json& doc, const std::string& key, double fallback, const std::string& source) {
  const auto it = doc.find(key);
  return it == doc.end() ? fallback : number(*it, key, source);
}

// Library errors raised while building an object are reported against the source.
template <class F>
auto wrap(const std::string& source, F&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Branch parse_branch(const json& doc, const std::string& source) {
  const auto it = doc.find("branch");
  if (it == doc.end()) return Branch::positive;
  if (!it->is_string()) field_error(source, "branch", "expected a string");
  const std::string b = it->get<std::string>();
  if (b == "upper" || b == "plus") return Branch::positive;
  if (b == "lower" || b == "minus") return Branch::negative;
  field_error(source, "branch", "expected upper, lower, plus or minus, got '" + b + "'");
}

}  // namespace

DiscreteDistribution parse_distribution(const std::string& text, const std::string& source, Normalize normalize) {
  const json doc = parse_document(text, source);
  const auto w = numbers(require(doc, "weights", source), "weights", source);
  return wrap(source, [&] { return DiscreteDistribution(w, normalize); });
}

Observable parse_observable(const std::string& text, const std::string& source) {
  const json doc = parse_document(text, source);
  const auto v = numbers(require(doc, "values", source), "values", source);
  return wrap(source, [&] { return Observable(v); });
}

TransitionMatrix parse_chain(const std::string& text, const std::string& source) {
  const json doc = parse_document(text, source);
  const json& rows = require(doc, "rows", source);
  if (!rows.is_array()) field_error(source, "rows", "expected an array of rows");
  std::vector<std::vector<double>> m;
  for (std::size_t i = 0; i < rows.size(); ++i) m.push_back(numbers(rows[i], "rows[" + std::to_string(i) + "]", source));
  std::vector<std::string> labels;
  if (const auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array()) field_error(source, "labels", "expected an array of strings");
    for (const auto& l : *it) {
      if (!l.is_string()) field_error(source, "labels", "expected an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return wrap(source, [&] { return TransitionMatrix(m, labels); });
}

Interaction parse_interaction(const std::string& text, const std::string& source) {
  const json doc = parse_document(text, source);
  const int d = integer(require(doc, "d", source), "d", source);
  std::vector<double> spins{-1.0, 1.0};
  if (const auto it = doc.find("spins"); it != doc.end()) spins = numbers(*it, "spins", source);
  const json& clusters = require(doc, "clusters", source);
  if (!clusters.is_array()) field_error(source, "clusters", "expected an array");
  return wrap(source, [&] {
    Interaction phi(d, spins);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      const std::string where = "clusters[" + std::to_string(i) + "]";
      const json& cl = clusters[i];
      if (!cl.is_object()) field_error(source, where, "expected an object");
      const auto type_it = cl.find("type");
      if (type_it == cl.end() || !type_it->is_string()) field_error(source, where + ".type", "missing or not a string");
      const std::string type = type_it->get<std::string>();
      if (type == "field") {
        const auto c = cl.find("coeff");
        if (c == cl.end()) field_error(source, where + ".coeff", "missing");
        phi.add_field(number(*c, where + ".coeff", source));
        continue;
      }
      const auto off_it = cl.find("offsets");
      if (off_it == cl.end() || !off_it->is_array()) field_error(source, where + ".offsets", "missing or not an array");
      std::vector<Offset> offsets;
      for (std::size_t j = 0; j < off_it->size(); ++j) {
        const std::string ow = where + ".offsets[" + std::to_string(j) + "]";
        const json& o = (*off_it)[j];
        if (!o.is_array()) field_error(source, ow, "expected an array of integers");
        Offset off;
        for (const auto& x : o) off.push_back(integer(x, ow, source));
        offsets.push_back(std::move(off));
      }
      if (type == "pair_product" || type == "product") {
        const auto c = cl.find("coeff");
        if (c == cl.end()) field_error(source, where + ".coeff", "missing");
        phi.add_product(std::move(offsets), number(*c, where + ".coeff", source));
      } else if (type == "table") {
        const auto t = cl.find("table");
        if (t == cl.end()) field_error(source, where + ".table", "missing");
        phi.add_cluster(std::move(offsets), numbers(*t, where + ".table", source));
      } else {
        field_error(source, where + ".type", "unknown cluster type '" + type + "'");
      }
    }
    return phi;
  });
}

ModelSpec parse_model(const std::string& text, const std::string& source) {
  const json doc = parse_document(text, source);
  const json& kind_v = require(doc, "kind", source);
  if (!kind_v.is_string()) field_error(source, "kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();
  const double beta = optional_number(doc, "beta", 1.0, source);
  const double J = optional_number(doc, "J", 1.0, source);
  const double h = optional_number(doc, "h", 0.0, source);
  if (kind == "ising1d") return Ising1DParams{beta, J, h};
  if (kind == "ising2d") {
    if (h != 0.0) field_error(source, "h", "the square-lattice model is only available at zero field");
    return Ising2DParams{beta, J, parse_branch(doc, source)};
  }
  if (kind == "meanfield") {
    int d = 1;
    if (const auto it = doc.find("d"); it != doc.end()) d = integer(*it, "d", source);
    return MeanFieldParams{beta, J, h, d, parse_branch(doc, source)};
  }
  field_error(source, "kind", "expected ising1d, ising2d or meanfield, got '" + kind + "'");
}

DiscreteDistribution load_distribution(const std::string& path, Normalize normalize) {
  return parse_distribution(read_file(path), path, normalize);
}
Observable load_observable(const std::string& path) { return parse_observable(read_file(path), path); }
TransitionMatrix load_chain(const std::string& path) { return parse_chain(read_file(path), path); }
Interaction load_interaction(const std::string& path) { return parse_interaction(read_file(path), path); }
ModelSpec load_model(const std::string& path) { return parse_model(read_file(path), path); }

}  // namespace infoscale
