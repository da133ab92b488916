#pragma once

// JSON calibration files. Times are ns, errors are probabilities.
// The schema is described in docs/calibration-schema.md.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mera/device.hpp"
#include "mera/errors.hpp"

namespace mera {

inline constexpr int calibration_schema_version = 1;

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key,
                                     const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

inline double number(const nlohmann::json& obj, const std::string& key,
                     const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_number()) throw SchemaError(path + "." + key, "expected a number");
  return v.get<double>();
}

inline std::int64_t integer(const nlohmann::json& obj, const std::string& key,
                            const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_number_integer()) throw SchemaError(path + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::size_t index(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw SchemaError(path, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace detail

inline nlohmann::json device_to_json(const DeviceModel& d) {
  nlohmann::json j;
  j["schema_version"] = calibration_schema_version;
  j["name"] = d.name();
  j["profile_timestamp"] = d.profile_timestamp();
  j["units"] = {{"time", "ns"}, {"error", "probability"}};
  j["num_qubits"] = d.num_qubits();
  auto& qs = j["qubits"] = nlohmann::json::array();
  for (const auto& q : d.qubits()) {
    qs.push_back({{"mcm_error", q.mcm_error},
                  {"e1q", q.e1q},
                  {"readout_error", q.readout_error},
                  {"t1", q.t1},
                  {"t2", q.t2}});
  }
  auto& es = j["edges"] = nlohmann::json::array();
  for (const auto& e : d.edges()) {
    es.push_back({{"qubits", {e.a, e.b}}, {"e2q", e.e2q}});
  }
  const auto& du = d.durations();
  j["durations"] = {{"one_qubit", du.one_qubit},
                    {"two_qubit", du.two_qubit},
                    {"measure", du.measure},
                    {"reset", du.reset}};
  return j;
}

inline DeviceModel device_from_json(const nlohmann::json& j) {
  using detail::require;
  if (!j.is_object()) throw SchemaError("$", "expected an object");
  if (auto it = j.find("schema_version"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int>() != calibration_schema_version) {
      throw SchemaError("$.schema_version", "unsupported version");
    }
  }
  if (auto it = j.find("units"); it != j.end()) {
    if (!it->is_object() || it->value("time", "ns") != "ns" ||
        it->value("error", "probability") != "probability") {
      throw SchemaError("$.units", "only ns and probability are supported");
    }
  }
  const auto& name = require(j, "name", "$");
  if (!name.is_string()) throw SchemaError("$.name", "expected a string");
  const std::size_t n = detail::index(require(j, "num_qubits", "$"), "$.num_qubits");

  const auto& qs = require(j, "qubits", "$");
  if (!qs.is_array()) throw SchemaError("$.qubits", "expected an array");
  if (qs.size() != n) throw SchemaError("$.qubits", "length differs from num_qubits");

  const auto& es = require(j, "edges", "$");
  if (!es.is_array()) throw SchemaError("$.edges", "expected an array");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> e2q;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string path = "$.edges[" + std::to_string(i) + "]";
    const auto& pr = require(es[i], "qubits", path);
    if (!pr.is_array() || pr.size() != 2) {
      throw SchemaError(path + ".qubits", "expected two qubit indices");
    }
    pairs.emplace_back(detail::index(pr[0], path + ".qubits[0]"),
                       detail::index(pr[1], path + ".qubits[1]"));
    e2q.push_back(detail::number(es[i], "e2q", path));
  }

  DeviceModel d(name.get<std::string>(), n, pairs);
  // The constructor normalizes edge orientation but keeps order.
  for (std::size_t i = 0; i < e2q.size(); ++i) d.set_edge_error(i, e2q[i]);
  for (std::size_t p = 0; p < n; ++p) {
    const std::string path = "$.qubits[" + std::to_string(p) + "]";
    auto& q = d.qubit(p);
    q.mcm_error = detail::number(qs[p], "mcm_error", path);
    q.e1q = detail::number(qs[p], "e1q", path);
    q.readout_error = detail::number(qs[p], "readout_error", path);
    q.t1 = detail::number(qs[p], "t1", path);
    q.t2 = detail::number(qs[p], "t2", path);
  }
  if (auto it = j.find("profile_timestamp"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("$.profile_timestamp", "expected a string");
    d.set_profile_timestamp(it->get<std::string>());
  }
  if (auto it = j.find("durations"); it != j.end()) {
    auto& du = d.durations();
    du.one_qubit = detail::integer(*it, "one_qubit", "$.durations");
    du.two_qubit = detail::integer(*it, "two_qubit", "$.durations");
    du.measure = detail::integer(*it, "measure", "$.durations");
    du.reset = detail::integer(*it, "reset", "$.durations");
  }
  d.validate();
  return d;
}

inline DeviceModel load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open calibration file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  return device_from_json(j);
}

inline void save_device(const DeviceModel& device, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write calibration file " + path);
  out << device_to_json(device).dump(2) << '\n';
}

}  // namespace mera
