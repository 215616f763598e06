#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gnsent::cli {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::Validation, field + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object()) invalid(field, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) invalid(field + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) invalid(field, "expected a number");
  return j.get<double>();
}

int positive_int(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) invalid(field, "expected a positive integer");
  return j.get<int>();
}

Complex complex_value(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
  invalid(field, "expected a number or an [re, im] pair");
}

Eigen::MatrixXcd square_matrix(const json& j, int n, const std::string& field) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n)) {
    invalid(field, "expected " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      invalid(row_field, "expected " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      m(r, c) = complex_value(row[static_cast<std::size_t>(c)], row_field + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

std::vector<Eigen::MatrixXcd> element_blocks(const json& j, const BlockSpec& spec, const std::string& field) {
  if (!j.is_array() || j.size() != spec.num_blocks()) {
    invalid(field, "expected " + std::to_string(spec.num_blocks()) + " blocks");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    blocks.push_back(square_matrix(j[k], spec.block_size(k), field + "[" + std::to_string(k) + "]"));
  }
  return blocks;
}

BlockSpec parse_algebra(const json& j, const std::string& field) {
  const json& blocks = member(j, "blocks", field);
  if (!blocks.is_array() || blocks.empty()) invalid(field + ".blocks", "expected a non-empty list of block sizes");
  std::vector<int> sizes;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    sizes.push_back(positive_int(blocks[k], field + ".blocks[" + std::to_string(k) + "]"));
  }
  return BlockSpec(std::move(sizes));
}

State parse_state(const json& j, const BlockSpec& spec) {
  if (!j.is_object()) invalid("state", "expected an object");
  const auto wrap = [](const std::string& field, auto&& make) -> State {
    try {
      return make();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Validation) throw;
      invalid(field, e.what());
    }
  };
  if (j.size() != 1) invalid("state", "expected exactly one of weights, vector, psi_lambda");
  if (j.contains("weights")) {
    return wrap("state.weights", [&] { return State(spec, element_blocks(j["weights"], spec, "state.weights")); });
  }
  if (j.contains("vector")) {
    const json& v = j["vector"];
    if (!v.is_array()) invalid("state.vector", "expected a list of amplitudes");
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      amps(static_cast<Eigen::Index>(i)) = complex_value(v[i], "state.vector[" + std::to_string(i) + "]");
    }
    return wrap("state.vector", [&] { return vector_state(amps, spec); });
  }
  if (j.contains("psi_lambda")) {
    const double lambda = number(j["psi_lambda"], "state.psi_lambda");
    if (!(spec == BlockSpec({4}))) invalid("state.psi_lambda", "needs algebra blocks [4], got " + spec.to_string());
    return wrap("state.psi_lambda", [&] { return vector_state(psi_lambda(lambda)); });
  }
  invalid("state", "expected exactly one of weights, vector, psi_lambda");
}

struct ParsedEmbedding {
  Embedding embedding;
  std::optional<std::pair<int, int>> factor_dims;
};

ParsedEmbedding left_factor(int na, int nb, const BlockSpec& target) {
  if (!(target == BlockSpec({na * nb}))) {
    invalid("embedding.left_factor", "M_" + std::to_string(na) + " (x) M_" + std::to_string(nb) +
                                         " does not match algebra " + target.to_string());
  }
  return {embed_left_factor(BlockSpec({na}), BlockSpec({nb})), std::make_pair(na, nb)};
}

ParsedEmbedding parse_embedding(const json& j, const BlockSpec& target) {
  if (j.is_string()) {
    if (j.get<std::string>() != "left_factor") invalid("embedding", "unknown shortcut \"" + j.get<std::string>() + "\"");
    if (!target.is_simple()) invalid("embedding", "left_factor needs a single-block algebra");
    const int n = target.block_size(0);
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (root * root != n) {
      invalid("embedding", "cannot infer factor sizes for " + target.to_string() + "; use {\"left_factor\": [nA, nB]}");
    }
    return left_factor(root, root, target);
  }
  if (!j.is_object()) invalid("embedding", "expected \"left_factor\" or an object");
  if (j.contains("left_factor")) {
    const json& dims = j["left_factor"];
    if (!dims.is_array() || dims.size() != 2) invalid("embedding.left_factor", "expected [nA, nB]");
    return left_factor(positive_int(dims[0], "embedding.left_factor[0]"),
                       positive_int(dims[1], "embedding.left_factor[1]"), target);
  }
  const BlockSpec source = parse_algebra(member(j, "source", "embedding"), "embedding.source");
  const BlockSpec declared = parse_algebra(member(j, "target", "embedding"), "embedding.target");
  if (!(declared == target)) {
    invalid("embedding.target", declared.to_string() + " does not match algebra " + target.to_string());
  }
  const json& images = member(j, "images", "embedding");
  if (!images.is_array() || images.size() != static_cast<std::size_t>(source.linear_dim())) {
    invalid("embedding.images", "expected " + std::to_string(source.linear_dim()) + " images");
  }
  std::vector<AlgebraElement> elems;
  for (std::size_t u = 0; u < images.size(); ++u) {
    const std::string field = "embedding.images[" + std::to_string(u) + "]";
    elems.emplace_back(target, element_blocks(images[u], target, field));
  }
  Embedding e(source, target, std::move(elems));
  const auto violations = check_embedding(e);
  if (!violations.empty()) invalid("embedding", "not a unital *-embedding: " + violations.front().detail);
  return {std::move(e), std::nullopt};
}

ScenarioOptions parse_options(const json& j) {
  ScenarioOptions o;
  if (!j.is_object()) invalid("options", "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string field = "options." + key;
    if (key == "seed") {
      if (!value.is_number_unsigned()) invalid(field, "expected a non-negative integer");
      o.seed = value.get<std::uint64_t>();
    } else if (key == "null_cutoff") {
      o.null_cutoff = number(value, field);
      if (!(o.null_cutoff > 0.0)) invalid(field, "must be positive");
    } else if (key == "tolerance") {
      o.tolerance = number(value, field);
      if (!(o.tolerance > 0.0)) invalid(field, "must be positive");
    } else if (key == "samples") {
      if (!value.is_number_unsigned()) invalid(field, "expected a non-negative integer");
      o.samples = value.get<std::size_t>();
    } else {
      invalid(field, "unknown option");
    }
  }
  return o;
}

}  // namespace

State Scenario::analysed_state() const { return embedding ? restrict(state, *embedding) : state; }

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    if (const auto pos = msg.find("] "); msg.rfind("[json.exception", 0) == 0 && pos != std::string::npos) {
      msg = msg.substr(pos + 2);
    }
    throw Error(ErrorCode::Parse, msg);
  }
  if (!doc.is_object()) invalid("scenario", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "algebra" && key != "state" && key != "embedding" && key != "options") invalid(key, "unknown field");
  }

  BlockSpec algebra = [&] {
    try {
      return parse_algebra(member(doc, "algebra", "scenario"), "algebra");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Validation) throw;
      invalid("algebra", e.what());
    }
  }();
  State state = parse_state(member(doc, "state", "scenario"), algebra);
  std::optional<ParsedEmbedding> emb;
  if (doc.contains("embedding")) emb = parse_embedding(doc["embedding"], algebra);
  const ScenarioOptions options = doc.contains("options") ? parse_options(doc["options"]) : ScenarioOptions{};

  std::optional<Embedding> embedding;
  std::optional<std::pair<int, int>> dims;
  if (emb) {
    embedding = std::move(emb->embedding);
    dims = emb->factor_dims;
  }
  return Scenario{std::move(algebra), std::move(state), std::move(embedding), dims, options};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace gnsent::cli
