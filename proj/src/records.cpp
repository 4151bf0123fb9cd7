#include "hypercount/records.hpp"

#include <sstream>

#include <json.hpp>

namespace hypercount {

namespace {

nlohmann::ordered_json record_json(const CountRecord& r) {
  nlohmann::ordered_json j;
  j["graph"] = r.graph;
  j["q"] = r.q;
  j["p"] = r.p;
  j["k"] = r.k;
  j["method"] = r.method;
  j["count"] = r.count.str();
  j["n_y"] = r.n_y ? nlohmann::ordered_json(r.n_y->str()) : nlohmann::ordered_json(nullptr);
  j["n_z"] = r.n_z ? nlohmann::ordered_json(r.n_z->str()) : nlohmann::ordered_json(nullptr);
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

}  // namespace

std::string record_to_json(const CountRecord& r, int indent) {
  return record_json(r).dump(indent);
}

std::string record_csv_header() {
  return "graph,q,p,k,method,count,n_y,n_z,elapsed_seconds";
}

std::string record_to_csv(const CountRecord& r) {
  std::ostringstream out;
  out << r.graph << ',' << r.q << ',' << r.p << ',' << r.k << ',' << r.method
      << ',' << r.count.str() << ',' << (r.n_y ? r.n_y->str() : "") << ','
      << (r.n_z ? r.n_z->str() : "") << ',' << r.elapsed_seconds;
  return out.str();
}

}  // namespace hypercount
