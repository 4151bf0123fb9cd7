#include "hypercount/counting.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "hypercount/errors.hpp"
#include "hypercount/matteval.hpp"

namespace hypercount {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BigInt pow_big(std::uint32_t base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_budget(std::uint32_t q, int vars, bool override_budget) {
  if (override_budget) return;
  if (pow_big(q, vars) > kBruteBudget)
    throw BudgetExceeded("q^" + std::to_string(vars) +
                         " exceeds the enumeration budget; pass the override to run anyway");
}

// Odometer over n base-q digits; returns false after the last tuple.
bool advance(std::vector<Fe>& t, std::uint32_t q) {
  for (auto& d : t) {
    if (++d < q) return true;
    d = 0;
  }
  return false;
}

CountRecord finish_record(std::string graph, const Fq& f, std::string method,
                          BigInt count, int vars, Clock::time_point start) {
  if (count < 0 || count >= pow_big(f.q(), vars))
    throw InvariantViolation("count outside [0, q^vars) for " + graph);
  CountRecord r;
  r.graph = std::move(graph);
  r.q = f.q();
  r.p = f.p();
  r.k = f.k();
  r.method = std::move(method);
  r.count = std::move(count);
  r.elapsed_seconds = seconds_since(start);
  return r;
}

void check_q2_divisibility(const CountRecord& r) {
  if (r.count % (BigInt(r.q) * r.q) != 0)
    throw InvariantViolation("xstrip count not divisible by q^2 at q = " +
                             std::to_string(r.q));
}

}  // namespace

std::string_view method_name(StratifiedMode mode) {
  return mode == StratifiedMode::kBaseline ? "stratified" : "stratified-accelerated";
}

std::string_view checkpoint_mode(StratifiedMode mode) {
  return mode == StratifiedMode::kBaseline ? "baseline" : "accelerated";
}

CountRecord brute_force_count(const Graph& g, const std::string& graph_id,
                              std::uint32_t q, bool override_budget,
                              bool use_tree_sum) {
  const auto start = Clock::now();
  const int vars = g.edge_count();
  check_budget(q, vars, override_budget);
  const Fq f(q);
  BigInt zeros = 0;
  if (g.h1() == 0) {
    // Psi of a tree is the empty product 1; no zeros.
    return finish_record(graph_id, f, "brute", 0, vars, start);
  }
  std::vector<Fe> t(vars, 0);
  if (use_tree_sum) {
    do {
      if (psi_eval_trees(g, f, t) == 0) ++zeros;
    } while (advance(t, q));
  } else {
    const CycleMatrix cm = cycle_matrix(g);
    const int n = cm.loops();
    std::vector<Fe> scratch(static_cast<std::size_t>(n) * n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Fe acc = 0;
          for (int e = 0; e < vars; ++e) {
            int s = cm.entry(i, e) * cm.entry(j, e);
            if (s == 0) continue;
            acc = s > 0 ? f.add(acc, t[e]) : f.sub(acc, t[e]);
          }
          scratch[i * n + j] = acc;
          scratch[j * n + i] = acc;
        }
      if (det_in_place(f, scratch.data(), n) == 0) ++zeros;
    } while (advance(t, q));
  }
  return finish_record(graph_id, f, "brute", std::move(zeros), vars, start);
}

CountRecord brute_force_count_xstrip(std::uint32_t q, bool override_budget) {
  const auto start = Clock::now();
  check_budget(q, 14, override_budget);
  const Fq f(q);
  std::vector<Fe> t(14, 0);
  BigInt zeros = 0;
  do {
    if (xstrip_det(f, t.data(), t.data() + 7) == 0) ++zeros;
  } while (advance(t, q));
  CountRecord r = finish_record("xstrip", f, "brute", std::move(zeros), 14, start);
  check_q2_divisibility(r);
  return r;
}

CountRecord brute_force_count_ws(int m, std::uint32_t q, bool override_budget) {
  const auto start = Clock::now();
  if (m < 3) throw Error("ws matrix needs m >= 3");
  check_budget(q, 2 * m, override_budget);
  const Fq f(q);
  std::vector<Fe> t(2 * m, 0);
  std::vector<Fe> scratch(static_cast<std::size_t>(m) * m);
  BigInt zeros = 0;
  do {
    const Fe* a = t.data();
    const Fe* b = t.data() + m;
    std::fill(scratch.begin(), scratch.end(), 0);
    for (int i = 0; i < m; ++i) scratch[i * m + i] = b[i];
    for (int i = 0; i + 1 < m; ++i) {
      scratch[i * m + i + 1] = a[i];
      scratch[(i + 1) * m + i] = a[i];
    }
    scratch[m - 1] = a[m - 1];
    scratch[static_cast<std::size_t>(m - 1) * m] = a[m - 1];
    if (det_in_place(f, scratch.data(), m) == 0) ++zeros;
  } while (advance(t, q));
  return finish_record("ws:" + std::to_string(m), f, "brute", std::move(zeros),
                       2 * m, start);
}

namespace {

// Coefficients of the degree <= 2 polynomial with values y0, y1, y2 at the
// sample points 0, 1, e2.
void quad_from_samples(const Fq& f, Fe y0, Fe y1, Fe y2, Fe e2, Fe& c2, Fe& c1,
                       Fe& c0) {
  c0 = y0;
  Fe d1 = f.sub(y1, y0);
  Fe d2 = f.sub(y2, y0);
  Fe denom = f.sub(f.mul(e2, e2), e2);  // e2 not in {0, 1}
  c2 = f.mul(f.sub(d2, f.mul(e2, d1)), f.inv(denom));
  c1 = f.sub(d1, c2);
}

struct StrataPoint {
  Fe a[7];
  Fe b[7];
};

// Direct membership tests at a fully specified 11-tuple.
inline bool in_y_stratum(const Fq& f, const StrataPoint& s) {
  return xstrip_trailing_minor(f, 5, s.a, s.b) == 0 &&
         xstrip_g5(f, s.a, s.b) == 0 && xstrip_g6tilde_lin(f, s.a, s.b) == 0;
}

// Baseline: all q^11 tuples, pure minor evaluation.
void baseline_shard(const Fq& f, Fe a1, Fe a3, ShardTallies& out) {
  const std::uint32_t q = f.q();
  StrataPoint s{};
  s.a[1] = a1;
  s.a[3] = a3;
  std::vector<Fe> t(7, 0);  // a4 a5 a6 b3 b4 b5 b6
  do {
    s.a[4] = t[0];
    s.a[5] = t[1];
    s.a[6] = t[2];
    s.b[3] = t[3];
    s.b[4] = t[4];
    s.b[5] = t[5];
    s.b[6] = t[6];
    for (Fe b2 = 0; b2 < q; ++b2) {
      s.b[2] = b2;
      for (Fe a2 = 0; a2 < q; ++a2) {
        s.a[2] = a2;
        if (xstrip_trailing_minor(f, 5, s.a, s.b) != 0) continue;
        if (xstrip_g5(f, s.a, s.b) != 0) continue;
        if (xstrip_g6tilde_lin(f, s.a, s.b) != 0) continue;
        ++out.n_y;
        if (xstrip_g6tilde_const(f, s.a, s.b) == 0) ++out.n_z;
      }
    }
  } while (advance(t, q));
}

// Accelerated: resolve B_2 from I_5 = B_2 I_4 - G_4; inside the I_4 != 0
// branch the remaining constraints are degree <= 2 in A_2, so A_2 is
// root-counted from three samples instead of looped (q >= 3).
void accelerated_shard(const Fq& f, Fe a1, Fe a3, ShardTallies& out) {
  const std::uint32_t q = f.q();
  const Fe e2 = 2;  // third sample point, distinct from 0 and 1 when q >= 3
  StrataPoint s{};
  s.a[1] = a1;
  s.a[3] = a3;
  std::vector<Fe> t(7, 0);
  std::array<Fe, 2> roots{}, lroots{};
  do {
    s.a[4] = t[0];
    s.a[5] = t[1];
    s.a[6] = t[2];
    s.b[3] = t[3];
    s.b[4] = t[4];
    s.b[5] = t[5];
    s.b[6] = t[6];
    s.a[2] = 0;
    s.b[2] = 0;
    const Fe i4 = xstrip_trailing_minor(f, 4, s.a, s.b);
    const Fe g4 = xstrip_g4(f, s.a, s.b);
    if (i4 != 0) {
      s.b[2] = f.mul(g4, f.inv(i4));  // the unique B_2 with I_5 = 0
      if (q == 2) {
        for (Fe a2 = 0; a2 < 2; ++a2) {
          s.a[2] = a2;
          if (xstrip_g5(f, s.a, s.b) != 0) continue;
          if (xstrip_g6tilde_lin(f, s.a, s.b) != 0) continue;
          ++out.n_y;
          if (xstrip_g6tilde_const(f, s.a, s.b) == 0) ++out.n_z;
        }
        continue;
      }
      auto sample3 = [&](Fe (*kernel)(const Fq&, const Fe*, const Fe*), Fe& c2,
                        Fe& c1, Fe& c0) {
        s.a[2] = 0;
        Fe y0 = kernel(f, s.a, s.b);
        s.a[2] = 1;
        Fe y1 = kernel(f, s.a, s.b);
        s.a[2] = e2;
        Fe y2 = kernel(f, s.a, s.b);
        quad_from_samples(f, y0, y1, y2, e2, c2, c1, c0);
      };
      Fe c2, c1, c0;
      sample3(&xstrip_g5, c2, c1, c0);
      int ng5 = f.quadratic_roots(c2, c1, c0, roots);
      if (ng5 == 0) continue;
      if (ng5 > 0) {
        for (int i = 0; i < ng5; ++i) {
          s.a[2] = roots[i];
          if (xstrip_g6tilde_lin(f, s.a, s.b) != 0) continue;
          ++out.n_y;
          if (xstrip_g6tilde_const(f, s.a, s.b) == 0) ++out.n_z;
        }
        continue;
      }
      // G_5 vanishes for every A_2; repeat with the next constraint.
      sample3(&xstrip_g6tilde_lin, c2, c1, c0);
      int nlin = f.quadratic_roots(c2, c1, c0, lroots);
      if (nlin == 0) continue;
      if (nlin > 0) {
        for (int i = 0; i < nlin; ++i) {
          s.a[2] = lroots[i];
          ++out.n_y;
          if (xstrip_g6tilde_const(f, s.a, s.b) == 0) ++out.n_z;
        }
        continue;
      }
      out.n_y += q;
      sample3(&xstrip_g6tilde_const, c2, c1, c0);
      int ncst = f.quadratic_roots(c2, c1, c0, roots);
      out.n_z += ncst < 0 ? q : static_cast<std::uint64_t>(ncst);
    } else if (g4 == 0) {
      // I_5 vanishes for every B_2.
      for (Fe b2 = 0; b2 < q; ++b2) {
        s.b[2] = b2;
        for (Fe a2 = 0; a2 < q; ++a2) {
          s.a[2] = a2;
          if (xstrip_g5(f, s.a, s.b) != 0) continue;
          if (xstrip_g6tilde_lin(f, s.a, s.b) != 0) continue;
          ++out.n_y;
          if (xstrip_g6tilde_const(f, s.a, s.b) == 0) ++out.n_z;
        }
      }
    }
  } while (advance(t, q));
}

CountRecord stratified_record(const Fq& f, StratifiedMode mode, BigInt ny,
                              BigInt nz, Clock::time_point start) {
  BigInt q2 = BigInt(f.q()) * f.q();
  BigInt count = pow_big(f.q(), 13) - q2 * ny + q2 * f.q() * nz;
  if (count < 0) throw InvariantViolation("stratified count went negative");
  CountRecord r = finish_record("xstrip", f, std::string(method_name(mode)),
                                std::move(count), 14, start);
  r.n_y = std::move(ny);
  r.n_z = std::move(nz);
  check_q2_divisibility(r);
  return r;
}

}  // namespace

ShardTallies xstrip_shard_tallies(const Fq& f, StratifiedMode mode,
                                  std::uint32_t shard) {
  const std::uint32_t q = f.q();
  if (shard >= q * q) throw Error("shard index out of range");
  ShardTallies tallies;
  const Fe a1 = shard / q, a3 = shard % q;
  if (mode == StratifiedMode::kBaseline)
    baseline_shard(f, a1, a3, tallies);
  else
    accelerated_shard(f, a1, a3, tallies);
  return tallies;
}

CountRecord stratified_count_xstrip(std::uint32_t q, StratifiedMode mode) {
  const auto start = Clock::now();
  const Fq f(q);
  BigInt ny = 0, nz = 0;
  for (std::uint32_t shard = 0; shard < q * q; ++shard) {
    ShardTallies t = xstrip_shard_tallies(f, mode, shard);
    ny += t.n_y;
    nz += t.n_z;
  }
  return stratified_record(f, mode, std::move(ny), std::move(nz), start);
}

BigInt projective_count(const BigInt& affine_count, std::uint32_t q) {
  if (affine_count < 1)
    throw NotACone("affine count of a cone is at least 1 (the origin)");
  BigInt num = affine_count - 1;
  if (num % (q - 1) != 0)
    throw NotACone("affine count - 1 not divisible by q - 1");
  return num / (q - 1);
}

BigInt xstrip_midform_count(std::uint32_t q) {
  const Fq f(q);
  StrataPoint s{};
  BigInt v_i5_g5 = 0;
  std::vector<Fe> t(11, 0);  // a1..a6 b2..b6
  do {
    for (int i = 0; i < 6; ++i) s.a[i + 1] = t[i];
    for (int i = 0; i < 5; ++i) s.b[i + 2] = t[6 + i];
    if (xstrip_trailing_minor(f, 5, s.a, s.b) == 0 && xstrip_g5(f, s.a, s.b) == 0)
      ++v_i5_g5;
  } while (advance(t, q));
  BigInt v_i5_i6_gt6 = 0;
  std::vector<Fe> u(12, 0);  // a1..a6 b1..b6
  StrataPoint s2{};
  do {
    for (int i = 0; i < 6; ++i) s2.a[i + 1] = u[i];
    for (int i = 0; i < 6; ++i) s2.b[i + 1] = u[6 + i];
    if (xstrip_trailing_minor(f, 5, s2.a, s2.b) == 0 &&
        xstrip_trailing_minor(f, 6, s2.a, s2.b) == 0 &&
        xstrip_g6tilde(f, s2.a, s2.b) == 0)
      ++v_i5_i6_gt6;
  } while (advance(u, q));
  BigInt q2 = BigInt(q) * q;
  return pow_big(q, 13) - q2 * v_i5_g5 + q2 * v_i5_i6_gt6;
}

// ---------------------------------------------------------------------------
// Sharded execution with a line-based checkpoint.

namespace {

struct CheckpointState {
  std::vector<std::optional<ShardTallies>> shards;
  std::optional<BigInt> total;
};

CheckpointState load_checkpoint(const std::string& path, std::uint32_t q,
                                StratifiedMode mode, std::uint32_t shard_count) {
  CheckpointState state;
  state.shards.resize(shard_count);
  std::ifstream in(path);
  if (!in) return state;  // fresh run
  std::string line;
  auto need_line = [&](const std::string& expect) {
    if (!std::getline(in, line))
      throw CorruptCheckpoint("checkpoint truncated before '" + expect + "'");
    return line;
  };
  if (!std::getline(in, line)) return state;  // empty file: treat as fresh
  if (line != "hypercount-ckpt v1")
    throw CorruptCheckpoint("bad checkpoint magic: " + line);
  if (need_line("graph") != "graph xstrip")
    throw SchemeMismatch("checkpoint is for a different graph: " + line);
  if (need_line("q") != "q " + std::to_string(q))
    throw SchemeMismatch("checkpoint is for a different q: " + line);
  if (need_line("mode") != "mode " + std::string(checkpoint_mode(mode)))
    throw SchemeMismatch("checkpoint is for a different mode: " + line);
  bool saw_total = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (saw_total) throw CorruptCheckpoint("data after the total line");
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "shard") {
      std::uint64_t idx;
      std::uint64_t ny, nz;
      if (!(ls >> idx >> ny >> nz) || idx >= shard_count)
        throw CorruptCheckpoint("bad shard line: " + line);
      if (state.shards[idx])
        throw CorruptCheckpoint("duplicate shard " + std::to_string(idx));
      state.shards[idx] = ShardTallies{ny, nz};
    } else if (tag == "total") {
      std::string value;
      if (!(ls >> value)) throw CorruptCheckpoint("bad total line: " + line);
      try {
        state.total = BigInt(value);
      } catch (const std::exception&) {
        throw CorruptCheckpoint("bad total value: " + value);
      }
      saw_total = true;
    } else {
      throw CorruptCheckpoint("unknown checkpoint line: " + line);
    }
  }
  if (state.total) {
    for (std::uint32_t i = 0; i < shard_count; ++i)
      if (!state.shards[i])
        throw CorruptCheckpoint("total present but shard " + std::to_string(i) +
                                " missing");
  }
  return state;
}

void write_header(std::ofstream& out, std::uint32_t q, StratifiedMode mode) {
  out << "hypercount-ckpt v1\n"
      << "graph xstrip\n"
      << "q " << q << "\n"
      << "mode " << checkpoint_mode(mode) << "\n";
  out.flush();
}

}  // namespace

CountRecord run_sharded(std::uint32_t q, StratifiedMode mode, int workers,
                        const std::string& checkpoint_path, ShardStats* stats) {
  const auto start = Clock::now();
  if (workers < 1) throw Error("worker count must be at least 1");
  const Fq f(q);
  const std::uint32_t shard_count = q * q;
  CheckpointState state = load_checkpoint(checkpoint_path, q, mode, shard_count);

  std::size_t done = 0;
  for (const auto& s : state.shards)
    if (s) ++done;
  if (stats) {
    stats->resumed = done;
    stats->executed = shard_count - done;
  }

  const bool fresh = done == 0 && !state.total;
  std::ofstream out;
  if (!state.total) {
    out.open(checkpoint_path, fresh ? std::ios::trunc : std::ios::app);
    if (!out) throw Error("cannot open checkpoint file: " + checkpoint_path);
    if (fresh) write_header(out, q, mode);
  }

  if (done < shard_count) {
    std::mutex ledger_mutex;
    std::atomic<std::uint32_t> next{0};
    auto work = [&] {
      for (;;) {
        std::uint32_t shard = next.fetch_add(1);
        if (shard >= shard_count) return;
        if (state.shards[shard]) continue;
        ShardTallies t = xstrip_shard_tallies(f, mode, shard);
        std::lock_guard<std::mutex> lock(ledger_mutex);
        state.shards[shard] = t;
        out << "shard " << shard << " " << t.n_y << " " << t.n_z << "\n";
        out.flush();
      }
    };
    const int pool = std::min<int>(workers, static_cast<int>(shard_count));
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (int i = 0; i < pool; ++i) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }

  BigInt ny = 0, nz = 0;
  for (const auto& s : state.shards) {
    ny += s->n_y;
    nz += s->n_z;
  }
  CountRecord r = stratified_record(f, mode, std::move(ny), std::move(nz), start);
  if (state.total) {
    if (*state.total != r.count)
      throw CorruptCheckpoint("checkpoint total disagrees with shard tallies");
  } else {
    out << "total " << r.count.str() << "\n";
    out.flush();
  }
  return r;
}

}  // namespace hypercount
