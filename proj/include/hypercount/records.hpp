#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hypercount/bigint.hpp"

namespace hypercount {

/// One point count.  `count` is exact; for the stratified methods the two
/// strata tallies are kept so the count can be re-derived.
struct CountRecord {
  std::string graph;
  std::uint32_t q = 0, p = 0, k = 0;
  std::string method;  // brute | stratified | stratified-accelerated
  BigInt count;
  std::optional<BigInt> n_y, n_z;
  double elapsed_seconds = 0.0;
};

/// JSON object with fixed key order: graph, q, p, k, method, count (decimal
/// string), n_y, n_z, elapsed_seconds.
std::string record_to_json(const CountRecord& r, int indent = -1);

std::string record_csv_header();
std::string record_to_csv(const CountRecord& r);

}  // namespace hypercount
