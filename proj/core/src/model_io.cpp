#include "mapt/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mapt {

using nlohmann::json;

namespace {

json config_json(const ModelConfig& c) {
  json base;
  if (c.base_breakpoints.empty()) {
    base = {{"kind", "uniform"}};
  } else {
    base = {{"kind", "piecewise"}, {"breakpoints", c.base_breakpoints}, {"masses", c.base_masses}};
  }
  return {{"domain", {c.domain.lo, c.domain.hi}},
          {"depth", c.depth},
          {"I", c.states},
          {"beta", c.beta},
          {"L", c.L},
          {"U", c.U},
          {"H", c.H},
          {"base", base},
          {"seed", c.seed}};
}

ModelConfig config_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ModelConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "domain") {
      if (!value.is_array() || value.size() != 2)
        throw std::invalid_argument("config 'domain' must be [lo, hi]");
      c.domain = Domain(value[0].get<double>(), value[1].get<double>());
    } else if (key == "depth") {
      c.depth = value.get<int>();
    } else if (key == "I") {
      c.states = value.get<int>();
    } else if (key == "beta") {
      c.beta = value.get<double>();
    } else if (key == "L") {
      c.L = value.get<double>();
    } else if (key == "U") {
      c.U = value.get<double>();
    } else if (key == "H") {
      c.H = value.get<int>();
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "base") {
      const std::string kind = value.at("kind").get<std::string>();
      if (kind == "uniform") {
        c.base_breakpoints.clear();
        c.base_masses.clear();
      } else if (kind == "piecewise") {
        c.base_breakpoints = value.at("breakpoints").get<std::vector<double>>();
        c.base_masses = value.at("masses").get<std::vector<double>>();
      } else {
        throw std::invalid_argument("config 'base.kind' must be uniform or piecewise");
      }
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return c;
}

}  // namespace

ModelConfig config_from_json(const std::string& text) {
  try {
    return config_from(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_to_json(const ModelConfig& config) { return config_json(config).dump(2); }

std::string node_label(NodeId id) {
  return std::to_string(id.level) + "," + std::to_string(id.index);
}

NodeId parse_node_label(const std::string& label) {
  const auto comma = label.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("bad node label '" + label + "'");
  NodeId id{std::stoi(label.substr(0, comma)),
            static_cast<std::uint32_t>(std::stoul(label.substr(comma + 1)))};
  if (!valid(id)) throw std::invalid_argument("bad node label '" + label + "'");
  return id;
}

void save_model(std::ostream& out, const ModelConfig& config, const DensityEstimate& est,
                bool tuned) {
  const CountedTree& tree = est.tree();
  const ForwardTable& fwd = est.forward_table();
  json counts = json::array();
  json log_xi = json::object();
  for (std::size_t a = 0; a < tree.nodes().size(); ++a) {
    const auto& node = tree.node(a);
    if (node.count() == 0) continue;
    counts.push_back(node_label(node.id) + ":" + std::to_string(node.count()));
    const auto row = fwd.row(a);
    log_xi[node_label(node.id)] = std::vector<double>(row.begin(), row.end());
  }
  const auto data = tree.sorted_data();
  json doc = {{"format", "mapt-model"},
              {"version", kModelFormatVersion},
              {"config", config_json(config)},
              {"tuned", tuned},
              {"n", tree.n_total()},
              {"log_marginal", est.log_marginal()},
              {"data", std::vector<double>(data.begin(), data.end())},
              {"counts", counts},
              {"log_xi", log_xi}};
  out << doc.dump() << '\n';
}

FittedModel load_model(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed model file: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "mapt-model")
      throw std::invalid_argument("not a mapt model file");
    if (doc.at("version").get<int>() != kModelFormatVersion)
      throw std::invalid_argument("unsupported model format version");
    ModelConfig config = config_from(doc.at("config"));
    HyperParams hp = make_hyperparams(config);
    const auto data = doc.at("data").get<std::vector<double>>();
    CountedTree tree = build_tree(data, config.domain, config.depth);

    const auto& counts = doc.at("counts");
    std::size_t nonzero = 0;
    for (const auto& node : tree.nodes()) nonzero += node.count() > 0 ? 1 : 0;
    if (counts.size() != nonzero) throw std::invalid_argument("stored counts do not match data");
    for (const auto& entry : counts) {
      const auto text = entry.get<std::string>();
      const auto colon = text.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("bad count entry '" + text + "'");
      const NodeId id = parse_node_label(text.substr(0, colon));
      if (tree.count(id) != std::stoul(text.substr(colon + 1)))
        throw std::invalid_argument("stored count for node " + text + " does not match data");
    }

    const auto I = static_cast<std::size_t>(hp.states());
    std::vector<double> log_xi(tree.nodes().size() * I, 0.0);
    for (const auto& [label, row] : doc.at("log_xi").items()) {
      const auto idx = tree.find(parse_node_label(label));
      const auto values = row.get<std::vector<double>>();
      if (idx < 0 || values.size() != I)
        throw std::invalid_argument("log_xi entry '" + label + "' does not match the model");
      std::copy(values.begin(), values.end(), log_xi.begin() + idx * static_cast<std::ptrdiff_t>(I));
    }
    LocalTerms local = compute_local_terms(tree, hp);
    ForwardTable fwd(hp.states(), std::move(log_xi), std::move(local.log_m));
    const bool tuned = doc.value("tuned", false);
    return FittedModel{config, tuned, DensityEstimate(std::move(tree), std::move(hp), std::move(fwd))};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed model file: ") + e.what());
  }
}

FittedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  return load_model(in);
}

}  // namespace mapt
