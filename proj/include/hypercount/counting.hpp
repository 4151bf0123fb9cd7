#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hypercount/graph.hpp"
#include "hypercount/records.hpp"

namespace hypercount {

/// Point budget for brute-force enumeration (q^variables) unless overridden.
inline constexpr std::uint64_t kBruteBudget = 100'000'000;

enum class StratifiedMode { kBaseline, kAccelerated };
std::string_view method_name(StratifiedMode mode);      // CountRecord tag
std::string_view checkpoint_mode(StratifiedMode mode);  // checkpoint tag

/// Zeros of the graph polynomial in affine |E|-space, by enumeration.
/// `use_tree_sum` switches the evaluator to the spanning-tree sum
/// (cross-check path); the default evaluates the loop-matrix determinant.
CountRecord brute_force_count(const Graph& g, const std::string& graph_id,
                              std::uint32_t q, bool override_budget = false,
                              bool use_tree_sum = false);

/// Zeros of det of the explicit XStrip matrix in affine 14-space.
CountRecord brute_force_count_xstrip(std::uint32_t q, bool override_budget = false);

/// Zeros of det of the wheel matrix in affine 2m-space.
CountRecord brute_force_count_ws(int m, std::uint32_t q, bool override_budget = false);

/// XStrip count by the stratification
///   count = q^13 - q^2 * N_Y + q^3 * N_Z,
/// N_Y = #{I_5 = G_5 = G~_6^1 = 0} and N_Z = #{... = G~_6^2 = 0} in the 11
/// coordinates A_1..A_6, B_2..B_6.  Baseline enumerates all q^11 tuples;
/// accelerated resolves B_2 from I_5 = B_2 I_4 - G_4 and root-counts A_2.
/// Both modes return identical records.
CountRecord stratified_count_xstrip(std::uint32_t q, StratifiedMode mode);

/// Affine-to-projective count of a cone: (affine - 1) / (q - 1).
/// Throws NotACone when the divisibility fails.
BigInt projective_count(const BigInt& affine_count, std::uint32_t q);

struct ShardStats {
  std::size_t executed = 0;  // shards computed this run
  std::size_t resumed = 0;   // shards taken from the checkpoint
};

/// Stratified XStrip count split into q^2 shards (fixing A_1, A_3) and run
/// on a worker pool, with a resumable checkpoint.  The result is identical
/// to the single-threaded count regardless of scheduling.
CountRecord run_sharded(std::uint32_t q, StratifiedMode mode, int workers,
                        const std::string& checkpoint_path,
                        ShardStats* stats = nullptr);

struct ShardTallies {
  std::uint64_t n_y = 0, n_z = 0;
};

/// Tallies of one shard (shard = idx(A_1) * q + idx(A_3)); exposed so the
/// checkpoint plumbing can be exercised directly.
ShardTallies xstrip_shard_tallies(const Fq& f, StratifiedMode mode,
                                  std::uint32_t shard);

/// The coarser two-stratum form
///   q^13 - q^2 * #V(I_5, G_5)^(11) + q^2 * #V(I_5, I_6, G~_6)^(12),
/// counted by direct enumeration; cross-checks the refined formula.
BigInt xstrip_midform_count(std::uint32_t q);

}  // namespace hypercount
