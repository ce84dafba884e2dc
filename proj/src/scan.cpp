#include "fpgt/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "fpgt/numfmt.hpp"
#include "json.hpp"

namespace fpgt {

namespace {

int worker_count(std::size_t jobs) {
  const unsigned hw = std::thread::hardware_concurrency();
  int workers = hw ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("PARALLELISM")) {
    const int cap = std::atoi(env);
    if (cap >= 1) workers = std::min(workers, cap);
  }
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), jobs));
}

// Runs fn(0..n-1), each index exactly once, on a small worker pool. Every
// index writes only its own output slot, so results cannot depend on the
// schedule. The first exception is rethrown on the caller's thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  if (n == 0) return;
  const int workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

nlohmann::json options_json(const OptimizerOptions& opt) {
  return {{"grid_points", opt.grid_points},
          {"refine_tolerance_p", opt.refine_tolerance_p},
          {"near_optimal_band", opt.near_optimal_band},
          {"small_p_augmentation", opt.small_p_augmentation}};
}

std::vector<std::string> csv_lines(const std::string& csv,
                                   const std::string& expected_header) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty() || lines.front() != expected_header)
    throw SpecParseError("bad CSV header, expected '" + expected_header + "'");
  lines.erase(lines.begin());
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, std::size_t count) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (fields.size() != count)
    throw SpecParseError("bad CSV row '" + std::string(line) + "'");
  return fields;
}

// from_chars refuses "nan"/"inf"; the sweep p_star column may carry them.
double parse_field_double(std::string_view s) {
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return num::parse_double(s);
}

}  // namespace

double GridScan::cell(int l, int u) const {
  if (l < 0 || l >= u || u > c)
    throw BadThreshold("grid cell needs 0 <= l < u <= c");
  // Cells are stored l-major: block l holds u = l+1..c.
  const std::size_t offset =
      static_cast<std::size_t>(l) * c - static_cast<std::size_t>(l) * (l - 1) / 2;
  return cells[offset + (u - l - 1)].scaled_capacity;
}

GridScan threshold_grid(int c, GapKind gap, Decoder d,
                        const OptimizerOptions& options) {
  if (c < 2) throw BadThreshold("threshold grid needs c >= 2");
  GridScan grid;
  grid.c = c;
  grid.decoder = d;
  grid.gap = gap;
  grid.options = options;
  for (int l = 0; l < c; ++l)
    for (int u = l + 1; u <= c; ++u) grid.cells.push_back({l, u, 0.0});
  parallel_for(grid.cells.size(), [&](std::size_t i) {
    GridCell& cell = grid.cells[i];
    const CollusionChannel ch = make_threshold_gap(c, cell.l, cell.u, gap);
    cell.scaled_capacity = c * maximize_payoff(ch, d, options).capacity;
  });
  return grid;
}

namespace {

double apply_scaling(double capacity, int c, Scaling s) {
  switch (s) {
    case Scaling::c: return capacity * c;
    case Scaling::c2: return capacity * c * c;
    case Scaling::c32: return capacity * std::pow(c, 1.5);
  }
  throw std::invalid_argument("unknown scaling");
}

}  // namespace

std::vector<SweepRow> sweep_c(const ModelId& model, Decoder d,
                              const std::vector<int>& c_values, Scaling scaling,
                              const OptimizerOptions& options) {
  std::vector<SweepRow> rows(c_values.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const int c = c_values[i];
    const CapacityResult res = maximize_payoff(model.channel(c), d, options);
    rows[i] = {c,          model.to_string(),
               d,          res.capacity,
               res.p_star, apply_scaling(res.capacity, c, scaling)};
  });
  return rows;
}

std::vector<SweepRow> universal_sweep(const std::vector<ModelId>& models,
                                      Decoder d,
                                      const std::vector<int>& c_values,
                                      int node_count) {
  std::vector<SweepRow> rows(models.size() * c_values.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const ModelId& model = models[i / c_values.size()];
    const int c = c_values[i % c_values.size()];
    const double value = universal_capacity(model.channel(c), d, node_count);
    const Scaling scaling =
        model.model == Model::interleaving ? Scaling::c2 : Scaling::c32;
    rows[i] = {c,
               model.to_string(),
               d,
               value,
               std::numeric_limits<double>::quiet_NaN(),
               apply_scaling(value, c, scaling)};
  });
  return rows;
}

std::string to_csv(const GridScan& grid) {
  std::string out = "l,u,scaled_capacity\n";
  for (const GridCell& cell : grid.cells) {
    out += std::to_string(cell.l);
    out += ',';
    out += std::to_string(cell.u);
    out += ',';
    out += num::roundtrip(cell.scaled_capacity);
    out += '\n';
  }
  return out;
}

std::vector<GridCell> grid_cells_from_csv(const std::string& csv) {
  std::vector<GridCell> cells;
  for (const std::string& line : csv_lines(csv, "l,u,scaled_capacity")) {
    const auto f = split_fields(line, 3);
    cells.push_back({num::parse_int(f[0]), num::parse_int(f[1]),
                     parse_field_double(f[2])});
  }
  return cells;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "c,model,decoder,capacity,p_star,scaled_capacity\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.c);
    out += ',';
    out += r.model;
    out += ',';
    out += to_string(r.decoder);
    out += ',';
    out += num::roundtrip(r.capacity);
    out += ',';
    out += num::roundtrip(r.p_star);
    out += ',';
    out += num::roundtrip(r.scaled_capacity);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> sweep_from_csv(const std::string& csv) {
  std::vector<SweepRow> rows;
  for (const std::string& line :
       csv_lines(csv, "c,model,decoder,capacity,p_star,scaled_capacity")) {
    const auto f = split_fields(line, 6);
    rows.push_back({num::parse_int(f[0]), std::string(f[1]),
                    decoder_from_string(f[2]), parse_field_double(f[3]),
                    parse_field_double(f[4]), parse_field_double(f[5])});
  }
  return rows;
}

std::string to_json(const GridScan& grid) {
  nlohmann::json cells = nlohmann::json::array();
  for (const GridCell& cell : grid.cells)
    cells.push_back({{"l", cell.l},
                     {"u", cell.u},
                     {"scaled_capacity", cell.scaled_capacity}});
  const nlohmann::json j = {{"c", grid.c},
                            {"decoder", to_string(grid.decoder)},
                            {"gap", to_string(grid.gap)},
                            {"cells", cells},
                            {"metadata", options_json(grid.options)}};
  return j.dump(2);
}

std::string to_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows)
    arr.push_back({{"c", r.c},
                   {"model", r.model},
                   {"decoder", to_string(r.decoder)},
                   {"capacity", r.capacity},
                   {"p_star", r.p_star},
                   {"scaled_capacity", r.scaled_capacity}});
  return arr.dump(2);
}

}  // namespace fpgt
