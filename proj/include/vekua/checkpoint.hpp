#pragma once

// Full trained-model state as a single deterministic text document: a
// format-version line, the resolved config echo, the coordinate
// normalization, and the method's parameters (plus the frozen solved
// weights for cascade methods). Floats are written with %.17g and a fixed
// key order, so read-then-write round-trips byte-identically.

#include <string>
#include <vector>

#include "vekua/baselines.hpp"
#include "vekua/config.hpp"
#include "vekua/model.hpp"

namespace vekua {

// Per-axis affine map onto [-1, 1], fitted to the training coordinates.
struct AffineNorm {
    std::vector<double> center;
    std::vector<double> halfwidth; // 1 where the data had zero extent

    DenseMatrix apply(const DenseMatrix& x) const;
};

AffineNorm fit_normalization(const DenseMatrix& x);

struct Checkpoint {
    int format_version = 1;
    TrainConfig config; // resolved values
    AffineNorm norm;

    // Exactly one of these is populated, per config.method.
    ModelParams model;      // deepvekua / cascade
    SolvedWeights solved;   // weights frozen at the final training solve
    SirenParams siren;
    GridMlpParams gridmlp;
};

std::string checkpoint_to_text(const Checkpoint& c);
Checkpoint checkpoint_from_text(const std::string& text);
void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

// Normalizes raw coordinates and evaluates the stored model.
std::vector<double> checkpoint_predict(const Checkpoint& c,
                                       const DenseMatrix& x_raw);

} // namespace vekua
