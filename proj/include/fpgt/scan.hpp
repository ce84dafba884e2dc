#pragma once

#include <string>
#include <vector>

#include "fpgt/asymptotics.hpp"

namespace fpgt {

struct GridCell {
  int l;
  int u;
  double scaled_capacity;  // c * C, dimensionless
};

// Capacities of every threshold-gap model 0 <= l < u <= c at one coalition
// size, c(c+1)/2 cells.
struct GridScan {
  int c = 0;
  Decoder decoder = Decoder::simple;
  GapKind gap = GapKind::coin;
  std::vector<GridCell> cells;  // l ascending, then u ascending
  OptimizerOptions options;

  double cell(int l, int u) const;
};

// Cells are computed independently and in parallel (worker count capped by
// the PARALLELISM environment variable); the result does not depend on the
// scheduling.
GridScan threshold_grid(int c, GapKind gap, Decoder d,
                        const OptimizerOptions& options = {});

struct SweepRow {
  int c;
  std::string model;
  Decoder decoder;
  double capacity;  // bits
  double p_star;    // NaN for universal-encoding rows
  double scaled_capacity;
};

enum class Scaling { c, c2, c32 };

std::vector<SweepRow> sweep_c(const ModelId& model, Decoder d,
                              const std::vector<int>& c_values, Scaling scaling,
                              const OptimizerOptions& options = {});

// Arcsine-averaged capacities; rows carry c^(3/2) * value, except the
// interleaving model which scales as c^2.
std::vector<SweepRow> universal_sweep(const std::vector<ModelId>& models,
                                      Decoder d,
                                      const std::vector<int>& c_values,
                                      int node_count = 1024);

// CSV schemas: grid "l,u,scaled_capacity";
// sweep "c,model,decoder,capacity,p_star,scaled_capacity".
// Doubles use shortest round-trip formatting, so parsing reproduces every
// cell bit-exactly.
std::string to_csv(const GridScan& grid);
std::vector<GridCell> grid_cells_from_csv(const std::string& csv);
std::string to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const std::string& csv);

// JSON mirrors the CSV fields verbatim.
std::string to_json(const GridScan& grid);
std::string to_json(const std::vector<SweepRow>& rows);

}  // namespace fpgt
