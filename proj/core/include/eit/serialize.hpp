#pragma once

#include <string>
#include <string_view>

#include "eit/scenario.hpp"

namespace eit {

struct DtnMatrix;
struct CauchyDataset;

/// Canonical JSON text of a scenario (sorted keys, shortest round-trip doubles).
std::string canonical_json(const Scenario& scenario);

/// 64-bit FNV-1a of the canonical JSON, as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);
std::string fnv1a_hex(std::string_view bytes);

std::string to_json(const DtnMatrix& m);
std::string to_json(const CauchyDataset& d);

/// Throws Error(Io) on malformed input.
DtnMatrix dtn_matrix_from_json(std::string_view text);
CauchyDataset cauchy_dataset_from_json(std::string_view text);

/// The document's `kind` field: "dtn_matrix" or "cauchy_dataset".
std::string json_kind(std::string_view text);

}  // namespace eit
