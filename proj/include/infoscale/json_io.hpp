#pragma once

#include <string>

#include "infoscale/divergences.hpp"
#include "infoscale/exact_models.hpp"
#include "infoscale/gibbs.hpp"
#include "infoscale/markov.hpp"

namespace infoscale {

// Readers for the JSON input formats. Every failure raises ParseError naming
// the file, and the line or field at fault.

/// {"weights": [...]}
DiscreteDistribution load_distribution(const std::string& path, Normalize normalize = Normalize::no);
/// {"values": [...]}
Observable load_observable(const std::string& path);
/// {"rows": [[...], ...], "labels": [...]}
TransitionMatrix load_chain(const std::string& path);
/// {"d": 1, "spins": [-1, 1], "clusters": [{"offsets": [[0], [1]], "type": "pair_product", "coeff": -0.5}, ...]}
/// Cluster types: "pair_product" or "product" (coeff times the spin product),
/// "field" (coeff times the spin) and "table" (explicit energies).
Interaction load_interaction(const std::string& path);
/// {"kind": "ising1d" | "ising2d" | "meanfield", "beta", "J", "h", "d", "branch"}
ModelSpec load_model(const std::string& path);

/// The same parsers applied to in-memory text; `source` names it in messages.
DiscreteDistribution parse_distribution(const std::string& text, const std::string& source,
                                        Normalize normalize = Normalize::no);
Observable parse_observable(const std::string& text, const std::string& source);
TransitionMatrix parse_chain(const std::string& text, const std::string& source);
Interaction parse_interaction(const std::string& text, const std::string& source);
ModelSpec parse_model(const std::string& text, const std::string& source);

}  // namespace infoscale
