#pragma once

// Coupling-map presets: eagle127 heavy-hex, a 7-qubit heavy-hex fragment,
// lines and grids.

#include <cstddef>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "mera/device.hpp"
#include "mera/errors.hpp"

namespace mera {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// IBM Eagle heavy-hex: seven rows (14, 15, 15, 15, 15, 15, 14 qubits) joined
/// by four bridge qubits between each pair of rows. Bridges attach at columns
/// 0,4,8,12 below even rows and 2,6,10,14 below odd rows.
inline DeviceModel make_eagle127() {
  constexpr std::size_t rows = 7;
  std::vector<std::size_t> row_start(rows);
  std::vector<std::size_t> first_col(rows);
  std::vector<std::size_t> row_len(rows);
  EdgeList edges;
  std::size_t next = 0;
  auto at = [&](std::size_t r, std::size_t col) { return row_start[r] + col - first_col[r]; };
  for (std::size_t r = 0; r < rows; ++r) {
    first_col[r] = r == rows - 1 ? 1 : 0;
    row_len[r] = (r == 0 || r == rows - 1) ? 14 : 15;
    row_start[r] = next;
    for (std::size_t i = 0; i + 1 < row_len[r]; ++i) {
      edges.emplace_back(next + i, next + i + 1);
    }
    next += row_len[r];
    if (r + 1 == rows) break;
    const std::size_t offset = r % 2 == 0 ? 0 : 2;
    // Bridge qubits take the next four indices; the lower row comes after.
    const std::size_t bridge0 = next;
    next += 4;
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t col = offset + 4 * k;
      edges.emplace_back(at(r, col), bridge0 + k);
    }
    // Lower-row endpoints are added once that row's start is known.
    row_start[r + 1] = next;
    first_col[r + 1] = r + 1 == rows - 1 ? 1 : 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t col = offset + 4 * k;
      edges.emplace_back(bridge0 + k, at(r + 1, col));
    }
  }
  return DeviceModel("eagle127", next, edges);
}

/// Seven-qubit heavy-hex fragment (the "H" layout):
/// 0-1-2, 1-3, 3-5, 4-5-6.
inline DeviceModel make_small_hex() {
  return DeviceModel("small-hex", 7, {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}});
}

inline DeviceModel make_line(std::size_t n) {
  EdgeList edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return DeviceModel("line(" + std::to_string(n) + ")", n, edges);
}

inline DeviceModel make_grid(std::size_t rows, std::size_t cols) {
  EdgeList edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t p = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(p, p + 1);
      if (r + 1 < rows) edges.emplace_back(p, p + cols);
    }
  }
  return DeviceModel("grid(" + std::to_string(rows) + "," + std::to_string(cols) + ")",
                     rows * cols, edges);
}

/// Accepts "eagle127", "small-hex", "line(n)" / "line:n",
/// "grid(r,c)" / "grid:rxc".
inline DeviceModel make_topology(const std::string& preset) {
  if (preset == "eagle127") return make_eagle127();
  if (preset == "small-hex") return make_small_hex();
  std::smatch m;
  static const std::regex line(R"(line(?:\((\d+)\)|:(\d+)))");
  static const std::regex grid(R"(grid(?:\((\d+),(\d+)\)|:(\d+)x(\d+)))");
  auto num = [](const std::ssub_match& a, const std::ssub_match& b) {
    return static_cast<std::size_t>(std::stoul(a.matched ? a.str() : b.str()));
  };
  if (std::regex_match(preset, m, line)) {
    const std::size_t n = num(m[1], m[2]);
    if (n == 0) throw UnknownPreset("line needs at least one qubit");
    return make_line(n);
  }
  if (std::regex_match(preset, m, grid)) {
    const std::size_t r = num(m[1], m[3]);
    const std::size_t c = num(m[2], m[4]);
    if (r == 0 || c == 0) throw UnknownPreset("grid needs positive dimensions");
    return make_grid(r, c);
  }
  throw UnknownPreset("unknown device preset '" + preset + "'");
}

}  // namespace mera
