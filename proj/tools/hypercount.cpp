#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercount/counting.hpp"
#include "hypercount/errors.hpp"
#include "hypercount/graph.hpp"
#include "hypercount/motive.hpp"
#include "hypercount/rationalfit.hpp"
#include "hypercount/records.hpp"

namespace hc = hypercount;
using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;
constexpr int kExitCheckpoint = 5;

std::vector<std::uint32_t> parse_q_list(const std::string& s) {
  std::vector<std::uint32_t> qs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      unsigned long v = std::stoul(item);
      if (v < 2) throw hc::UsageError("q must be at least 2");
      qs.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw hc::UsageError("bad q value: " + item);
    }
  }
  if (qs.empty()) throw hc::UsageError("q list is empty");
  return qs;
}

std::string resolve_checkpoint(const std::string& path) {
  const char* dir = std::getenv("HYPERCOUNT_CHECKPOINT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return (std::filesystem::path(dir) /
          std::filesystem::path(path).filename())
      .string();
}

struct GraphSelector {
  enum Kind { kXStrip, kWs, kFile } kind = kXStrip;
  int ws_n = 0;
  std::string path;
  std::string id;
};

GraphSelector parse_graph_selector(const std::string& s) {
  GraphSelector sel;
  sel.id = s;
  if (s == "xstrip") {
    sel.kind = GraphSelector::kXStrip;
  } else if (s.rfind("ws:", 0) == 0) {
    sel.kind = GraphSelector::kWs;
    try {
      sel.ws_n = std::stoi(s.substr(3));
    } catch (const std::logic_error&) {
      throw hc::UsageError("bad wheel size in selector: " + s);
    }
    if (sel.ws_n < 3) throw hc::UsageError("wheel selector needs n >= 3");
  } else if (s.rfind("file:", 0) == 0) {
    sel.kind = GraphSelector::kFile;
    sel.path = s.substr(5);
  } else {
    throw hc::UsageError("graph selector must be xstrip, ws:<n> or file:<path>");
  }
  return sel;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw hc::Error("cannot open output file: " + output_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

struct CountOptions {
  std::string graph = "xstrip";
  std::string q_list;
  std::string method = "brute";
  int workers = 1;
  std::string checkpoint;
  std::string format = "text";
  std::string output;
  bool override_budget = false;
};

hc::CountRecord count_one(const GraphSelector& sel, const CountOptions& opt,
                          std::uint32_t q) {
  if (opt.method == "brute") {
    switch (sel.kind) {
      case GraphSelector::kXStrip:
        return hc::brute_force_count_xstrip(q, opt.override_budget);
      case GraphSelector::kWs:
        return hc::brute_force_count_ws(sel.ws_n, q, opt.override_budget);
      case GraphSelector::kFile: {
        std::ifstream in(sel.path);
        if (!in) throw hc::UsageError("cannot open graph file: " + sel.path);
        hc::Graph g = hc::read_graph(in);
        return hc::brute_force_count(g, sel.id, q, opt.override_budget);
      }
    }
    throw hc::Error("unreachable");
  }
  if (sel.kind != GraphSelector::kXStrip)
    throw hc::UsageError("stratified methods are specific to the xstrip graph");
  hc::StratifiedMode mode = opt.method == "stratified"
                                ? hc::StratifiedMode::kBaseline
                                : hc::StratifiedMode::kAccelerated;
  if (opt.workers == 1 && opt.checkpoint.empty())
    return hc::stratified_count_xstrip(q, mode);
  std::string ckpt = opt.checkpoint;
  if (ckpt.empty())
    ckpt = "hypercount-xstrip-q" + std::to_string(q) + "-" +
           std::string(hc::checkpoint_mode(mode)) + ".ckpt";
  return hc::run_sharded(q, mode, opt.workers, resolve_checkpoint(ckpt));
}

std::string format_records(const std::vector<hc::CountRecord>& records,
                           const std::string& format) {
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : records)
      arr.push_back(ordered_json::parse(hc::record_to_json(r)));
    return arr.dump(2);
  }
  std::ostringstream out;
  if (format == "csv") {
    out << hc::record_csv_header() << '\n';
    for (const auto& r : records) out << hc::record_to_csv(r) << '\n';
    return out.str();
  }
  for (const auto& r : records) {
    out << r.graph << " q=" << r.q << " method=" << r.method
        << " count=" << r.count.str();
    if (r.n_y) out << " n_y=" << r.n_y->str();
    if (r.n_z) out << " n_z=" << r.n_z->str();
    out << " elapsed=" << r.elapsed_seconds << "s\n";
  }
  return out.str();
}

int cmd_count(const CountOptions& opt) {
  if (opt.method != "brute" && opt.method != "stratified" &&
      opt.method != "stratified-accelerated")
    throw hc::UsageError("method must be brute, stratified or stratified-accelerated");
  if (opt.workers < 1) throw hc::UsageError("worker count must be >= 1");
  GraphSelector sel = parse_graph_selector(opt.graph);
  std::vector<hc::CountRecord> records;
  for (std::uint32_t q : parse_q_list(opt.q_list))
    records.push_back(count_one(sel, opt, q));
  emit(format_records(records, opt.format), opt.output);
  return 0;
}

struct WsClassOptions {
  std::string n_list;
  bool tables = false;
  std::string format = "text";
  std::string output;
};

ordered_json poly_json(const hc::LPolynomial& p) {
  ordered_json j;
  j["text"] = p.to_string();
  ordered_json coeffs = ordered_json::array();
  for (const auto& c : p.coefficients())
    coeffs.push_back(static_cast<std::int64_t>(c));
  j["coefficients"] = coeffs;
  return j;
}

int cmd_ws_class(const WsClassOptions& opt) {
  std::vector<int> ns;
  for (std::uint32_t q : parse_q_list(opt.n_list)) ns.push_back(static_cast<int>(q));
  for (int n : ns)
    if (n < 3) throw hc::UsageError("wheel size must be >= 3");
  if (opt.format == "json") {
    ordered_json arr = ordered_json::array();
    for (int n : ns) {
      ordered_json j;
      j["n"] = n;
      j["class"] = poly_json(hc::ws_class(n));
      if (opt.tables) {
        j["T"] = poly_json(hc::ws_T(n - 1));
        ordered_json ys = ordered_json::array();
        for (int i = 1; i <= n - 1; ++i) {
          hc::WsPair pair = hc::ws_y(i);
          ys.push_back({{"i", i},
                        {"y", poly_json(pair.y)},
                        {"y_prime", poly_json(pair.y_prime)}});
        }
        j["y"] = ys;
      }
      arr.push_back(std::move(j));
    }
    emit(arr.dump(2), opt.output);
    return 0;
  }
  std::ostringstream out;
  for (int n : ns) {
    if (opt.tables) {
      for (int i = 1; i <= n - 1; ++i) {
        hc::WsPair pair = hc::ws_y(i);
        out << "y_" << i << " = " << pair.y.to_string() << '\n';
        out << "y'_" << i << " = " << pair.y_prime.to_string() << '\n';
      }
      out << "[T^" << (n - 1) << "] = " << hc::ws_T(n - 1).to_string() << '\n';
    }
    out << "[X_" << n << "] = " << hc::ws_class(n).to_string() << '\n';
  }
  emit(out.str(), opt.output);
  return 0;
}

struct VerifyOptions {
  std::string q_list;
  std::string source = "predicted";
  std::string method = "stratified-accelerated";
  int workers = 1;
  std::string format = "text";
  std::string output;
  bool override_budget = false;
};

int cmd_verify(const VerifyOptions& opt) {
  if (opt.source != "predicted" && opt.source != "computed")
    throw hc::UsageError("source must be predicted or computed");
  std::vector<std::uint32_t> qs = parse_q_list(opt.q_list);
  std::vector<hc::CountRecord> records;
  bool all_match = true;
  ordered_json matches = ordered_json::array();
  if (opt.source == "predicted") {
    if (qs.size() < 12)
      throw hc::TooFewPoints("the witness needs at least 12 prime powers, got " +
                             std::to_string(qs.size()));
    for (std::uint32_t q : qs) {
      hc::CountRecord r;
      r.graph = "xstrip";
      r.q = q;
      hc::Fq f(q);
      r.p = f.p();
      r.k = f.k();
      r.method = "predicted";
      r.count = hc::predicted_count(q);
      records.push_back(std::move(r));
    }
  } else {
    CountOptions copt;
    copt.method = opt.method;
    copt.workers = opt.workers;
    copt.override_budget = opt.override_budget;
    GraphSelector sel;  // xstrip
    sel.id = "xstrip";
    for (std::uint32_t q : qs) {
      hc::CountRecord r = count_one(sel, copt, q);
      hc::BigInt expect = hc::predicted_count(q);
      bool match = r.count == expect;
      all_match = all_match && match;
      matches.push_back({{"q", q},
                         {"computed", r.count.str()},
                         {"predicted", expect.str()},
                         {"match", match}});
      records.push_back(std::move(r));
    }
  }

  auto audit = hc::divisibility_audit(records);
  bool audit_pass = true;
  for (const auto& a : audit) audit_pass = audit_pass && a.pass;

  std::optional<hc::FitReport> fit;
  if (records.size() >= 12) fit = hc::reduced_fit(records);

  ordered_json j;
  j["source"] = opt.source;
  j["records"] = ordered_json::array();
  for (const auto& r : records)
    j["records"].push_back(ordered_json::parse(hc::record_to_json(r)));
  j["divisibility"] = ordered_json::array();
  for (const auto& a : audit)
    j["divisibility"].push_back(
        {{"q", a.q}, {"count", a.count.str()}, {"pass", a.pass}});
  if (opt.source == "computed") j["matches"] = matches;
  if (fit) j["fit"] = ordered_json::parse(hc::fit_report_to_json(*fit));

  bool ok;
  if (opt.source == "predicted") {
    ok = fit->non_polynomial_witness && audit_pass;
    j["verdict"] = fit->verdict();
  } else {
    ok = all_match && audit_pass;
    j["verdict"] = ok ? "computed-values-match" : "computed-values-differ";
  }

  if (opt.format == "json") {
    emit(j.dump(2), opt.output);
  } else {
    std::ostringstream out;
    for (const auto& r : records)
      out << "q=" << r.q << " " << r.method << " count=" << r.count.str() << '\n';
    for (const auto& a : audit)
      out << "q=" << a.q << " q^2-divisibility: " << (a.pass ? "pass" : "FAIL")
          << '\n';
    if (opt.source == "computed")
      for (const auto& m : matches)
        out << "q=" << m["q"] << " computed=" << m["computed"].get<std::string>()
            << " predicted=" << m["predicted"].get<std::string>()
            << (m["match"].get<bool>() ? " match" : " MISMATCH") << '\n';
    if (fit) {
      for (const auto& h : fit->held_out)
        out << "held-out q=" << h.q << ": " << (h.match ? "on the fitted curve"
                                                        : "off the fitted curve")
            << '\n';
      out << "verdict: " << fit->verdict() << '\n';
    }
    out << (ok ? "OK" : "FAILED") << '\n';
    emit(out.str(), opt.output);
  }
  if (!ok) throw hc::InvariantViolation(
      opt.source == "predicted" ? "expected a non-polynomiality witness"
                                : "computed counts do not match the predicted rule");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact F_q point counts of graph hypersurfaces: the XStrip "
               "counterexample and the wheel-with-spokes classes"};
  app.require_subcommand(1);

  CountOptions copt;
  CLI::App* count = app.add_subcommand("count", "count points of a graph hypersurface");
  count->add_option("--graph", copt.graph, "xstrip | ws:<n> | file:<path>")->required();
  count->add_option("--q", copt.q_list, "comma-separated prime powers")->required();
  count->add_option("--method", copt.method,
                    "brute | stratified | stratified-accelerated");
  count->add_option("--workers", copt.workers, "worker threads (stratified modes)");
  count->add_option("--checkpoint", copt.checkpoint, "checkpoint file for resume");
  count->add_option("--format", copt.format, "text | json | csv");
  count->add_option("--output", copt.output, "write to file instead of stdout");
  count->add_flag("--override-budget", copt.override_budget,
                  "allow enumerations beyond the point budget");

  WsClassOptions wopt;
  CLI::App* wsc = app.add_subcommand("ws-class",
                                     "Grothendieck-ring class of wheel hypersurfaces");
  wsc->add_option("--n", wopt.n_list, "comma-separated wheel sizes (>= 3)")->required();
  wsc->add_flag("--tables", wopt.tables, "also print the y/y' and T tables");
  wsc->add_option("--format", wopt.format, "text | json");
  wsc->add_option("--output", wopt.output, "write to file instead of stdout");

  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand(
      "verify-counterexample", "reduced-form interpolation check on xstrip counts");
  verify->add_option("--q", vopt.q_list, "comma-separated prime powers")->required();
  verify->add_option("--source", vopt.source, "predicted | computed");
  verify->add_option("--method", vopt.method, "count method when source=computed");
  verify->add_option("--workers", vopt.workers, "worker threads");
  verify->add_option("--format", vopt.format, "text | json");
  verify->add_option("--output", vopt.output, "write to file instead of stdout");
  verify->add_flag("--override-budget", vopt.override_budget,
                   "allow enumerations beyond the point budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (count->parsed()) return cmd_count(copt);
    if (wsc->parsed()) return cmd_ws_class(wopt);
    if (verify->parsed()) return cmd_verify(vopt);
    return kExitUsage;
  } catch (const hc::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const hc::CorruptCheckpoint& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckpoint;
  } catch (const hc::SchemeMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckpoint;
  } catch (const hc::InvariantViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const hc::DivisibilityViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const hc::Error& e) {
    // Remaining library errors indicate unusable input.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
