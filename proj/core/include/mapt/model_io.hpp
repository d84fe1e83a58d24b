#ifndef MAPT_MODEL_IO_HPP
#define MAPT_MODEL_IO_HPP

#include <istream>
#include <ostream>
#include <string>

#include "mapt/density.hpp"
#include "mapt/prior_config.hpp"

namespace mapt {

inline constexpr int kModelFormatVersion = 1;

/// Config document keys: domain [lo, hi], depth, I, beta, L, U, H,
/// base {"kind": "uniform"} or {"kind": "piecewise", "breakpoints": [...],
/// "masses": [...]}, seed. Missing keys keep their defaults; unknown keys
/// are rejected. Throws std::invalid_argument on malformed input.
ModelConfig config_from_json(const std::string& text);
ModelConfig load_config(const std::string& path);
std::string config_to_json(const ModelConfig& config);

/// "k,m" node label used by the model file.
std::string node_label(NodeId id);
NodeId parse_node_label(const std::string& label);

struct FittedModel {
  ModelConfig config;
  bool tuned = false;
  DensityEstimate estimate;
};

/// Writes the versioned model document: config, sorted data, sparse counts
/// ("k,m:n"), and the log xi table of every materialized node.
void save_model(std::ostream& out, const ModelConfig& config, const DensityEstimate& est,
                bool tuned);
/// Rebuilds the tree from the stored data, checks it against the stored
/// counts, and reuses the stored log xi table verbatim.
FittedModel load_model(std::istream& in);
FittedModel load_model_file(const std::string& path);

}  // namespace mapt

#endif  // MAPT_MODEL_IO_HPP
