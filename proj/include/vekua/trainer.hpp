#pragma once

// Full-batch Adam training for all four methods, producing a checkpoint and
// per-iteration metrics. Row i of the metrics holds the training MSE of the
// parameters after i optimizer steps, so row 0 is the initialization and the
// final row matches the checkpoint. The wall_ms column is written as 0:
// outputs are byte-reproducible given the config, and live timing goes to
// stdout instead (see README).

#include <vector>

#include "vekua/checkpoint.hpp"
#include "vekua/config.hpp"
#include "vekua/fields.hpp"

namespace vekua {

struct MetricsRow {
    std::size_t iter = 0;
    double train_mse = 0.0;
    double wall_ms = 0.0;
};

// Runs cfg.iters optimizer steps on the sample set. metrics_out is appended
// row by row, so a SolveFailed abort still leaves the partial record for the
// caller to flush.
Checkpoint train(const TrainConfig& cfg, const SampleSet& data,
                 std::vector<MetricsRow>& metrics_out, bool verbose = false);

std::string metrics_to_csv(const std::vector<MetricsRow>& rows);

} // namespace vekua
