#pragma once

// Decomposable LP relaxation built from labeled extraction orders: one flow
// sub-LP per (request edge, label mapping) plus bag variables tying the
// copies together.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vnep/extraction.hpp"
#include "vnep/mcf_formulation.hpp"

namespace vnep {

/// All functions from `labels` to substrate nodes, each label restricted to
/// the allowed nodes of that request node. Mixed radix, first label is the
/// most significant digit.
class MappingSpace {
 public:
  MappingSpace() = default;
  MappingSpace(const Request& request, std::vector<int> labels);

  const std::vector<int>& labels() const { return labels_; }
  std::int64_t size() const { return size_; }
  // Substrate node per label, aligned with labels().
  std::vector<int> decode(std::int64_t index) const;
  // Index of the mapping given a full request node map (-1 entries are not
  // allowed for labels). Returns -1 when a label maps outside its domain.
  std::int64_t encode(const std::vector<int>& node_map) const;
  // Substrate node of `label` in mapping `index`.
  int value(std::int64_t index, int label) const;

 private:
  std::vector<int> labels_;
  std::vector<std::vector<int>> domains_;
  std::vector<std::int64_t> stride_;
  std::int64_t size_ = 1;
};

/// Flow sub-LP for one request edge and one label mapping. Node vectors use
/// the edge's original orientation.
struct NovelCopy {
  int x = -1;
  std::vector<int> y_tail;  // [substrate node]
  std::vector<int> y_head;  // [substrate node]
  std::vector<int> z;       // [substrate edge]
};

struct NovelEdgeBlock {
  MappingSpace space;  // over the edge's labels
  std::vector<NovelCopy> copies;
};

struct NovelBagBlock {
  MappingSpace space;                  // over the bag's labels
  std::vector<std::vector<int>> gamma;  // [substrate node][bag mapping]
};

struct NovelRequestIndex {
  int x = -1;
  std::vector<std::vector<int>> y;              // [request node][substrate node]
  std::vector<int> a;                           // [resource]
  std::vector<NovelEdgeBlock> edges;            // [request edge]
  std::vector<std::vector<NovelBagBlock>> bags;  // [request node][bag]
  std::int64_t num_variables = 0;
};

struct NovelModel {
  LpModel model;
  std::vector<NovelRequestIndex> requests;
};

class VariableBudgetError : public std::runtime_error {
 public:
  VariableBudgetError(std::int64_t required, std::int64_t budget);
  std::int64_t required() const { return required_; }

 private:
  std::int64_t required_;
};

/// Variable count the formulation would need for one request.
std::int64_t novel_variable_count(const Substrate& substrate, const Request& request,
                                  const LabeledExtractionOrder& order);

/// orders[r] must belong to instance.requests[r]. Throws VariableBudgetError
/// when the total variable count exceeds `variable_budget`.
NovelModel build_novel(const Instance& instance, const std::vector<LabeledExtractionOrder>& orders,
                       Objective objective,
                       std::optional<std::int64_t> variable_budget = std::nullopt);

RequestLpSlice slice_of(const NovelRequestIndex& index, const std::vector<double>& values);

}  // namespace vnep
