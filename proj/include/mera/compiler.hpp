#pragma once

// End-to-end compilation: layout, routing, ALAP scheduling and optional
// dynamic decoupling, for MERA and the baseline compilers.

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mera/analysis.hpp"
#include "mera/cadd.hpp"
#include "mera/circuit.hpp"
#include "mera/device.hpp"
#include "mera/errors.hpp"
#include "mera/layout.hpp"
#include "mera/routing.hpp"
#include "mera/schedule.hpp"
#include "mera/worst_mapping.hpp"

namespace mera {

enum class CompilerKind { Mera, MeraNoCadd, DistanceOnly, Worst };

inline const char* compiler_name(CompilerKind k) {
  switch (k) {
    case CompilerKind::Mera: return "mera";
    case CompilerKind::MeraNoCadd: return "mera-no-cadd";
    case CompilerKind::DistanceOnly: return "distance-only";
    case CompilerKind::Worst: return "worst";
  }
  return "?";
}

inline CompilerKind parse_compiler(const std::string& s) {
  for (auto k : {CompilerKind::Mera, CompilerKind::MeraNoCadd, CompilerKind::DistanceOnly,
                 CompilerKind::Worst}) {
    if (s == compiler_name(k)) return k;
  }
  throw InvalidSpec("unknown compiler: " + s);
}

inline std::vector<CompilerKind> all_compilers() {
  return {CompilerKind::Mera, CompilerKind::MeraNoCadd, CompilerKind::DistanceOnly,
          CompilerKind::Worst};
}

struct CompileOptions {
  LayoutWeights layout;
  RoutingConfig routing;
  CaddConfig cadd;
};

struct CompileResult {
  CompilerKind kind = CompilerKind::Mera;
  Circuit physical;  // routed, with DD pulses when the compiler inserts them
  Schedule schedule;
  Layout initial;
  Layout final;
  std::size_t swaps = 0;
  std::size_t path = 0;  // critical path of the routed circuit, before DD
  std::size_t dd_pulses = 0;
  double compile_ms = 0.0;
};

inline CompileResult compile(const Circuit& circuit, const DeviceModel& device, CompilerKind kind,
                             const CompileOptions& options = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  Layout initial;
  RoutingConfig rc = options.routing;
  switch (kind) {
    case CompilerKind::Mera:
    case CompilerKind::MeraNoCadd:
      initial = select_layout(circuit, device, options.layout);
      break;
    case CompilerKind::DistanceOnly:
      initial = select_layout(circuit, device, options.layout.mcm_blind());
      rc = RoutingConfig::distance_only();
      rc.look_ahead = options.routing.look_ahead;
      break;
    case CompilerKind::Worst:
      initial = worst_mapping(circuit, device);
      rc = RoutingConfig::distance_only();
      rc.look_ahead = options.routing.look_ahead;
      break;
  }
  auto routed = route(circuit, initial, device, rc);
  if (!respects_coupling(routed.circuit, device)) {
    throw InvariantViolation("routed circuit has a 2Q gate on an uncoupled pair");
  }
  CompileResult out;
  out.kind = kind;
  out.initial = std::move(routed.initial);
  out.final = std::move(routed.final);
  out.swaps = routed.swaps;
  out.path = critical_path_length(routed.circuit);
  Schedule s = alap_schedule(routed.circuit, device);
  if (kind == CompilerKind::Mera) {
    auto dd = cadd_insert(routed.circuit, s, device, options.cadd);
    out.physical = std::move(dd.circuit);
    out.schedule = std::move(dd.schedule);
    out.dd_pulses = dd.pulses;
  } else {
    out.physical = std::move(routed.circuit);
    out.schedule = std::move(s);
  }
  validate_schedule(out.physical, out.schedule, device);
  out.compile_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace mera
