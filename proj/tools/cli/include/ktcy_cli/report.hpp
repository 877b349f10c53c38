#pragma once

// JSON fragments for solver output. Key names follow the diagnostics
// fields of the core library.

#include <filesystem>

#include <json.hpp>

#include "ktcy/continuity_solver.hpp"

namespace ktcy::cli {

using OrderedJson = nlohmann::ordered_json;

/// residual_sup, residual_l2, min_nu, min_A, sup_u, lemma22_margin,
/// key_identity_sup, alpha, beta.
OrderedJson diagnostics_json(const Diagnostics& d);

/// Per-t record of a continuity path.
OrderedJson state_json(const ContinuityState& s);

/// The "final" block: diagnostics plus t, c_t and phi_sup.
OrderedJson final_json(const ContinuityState& s);

/// True if every number in j is finite.
bool all_finite(const OrderedJson& j);

/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const OrderedJson& j);

}  // namespace ktcy::cli
