#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entangraph {

using LabelSet = std::set<std::string>;

inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Current cap on the total register dimension. Reads ENTANGRAPH_DIM_CAP
/// when set to a positive integer, otherwise kDefaultDimensionCap.
std::size_t dimension_cap();

/// Ordered list of labeled parties with their local dimensions.
///
/// The leftmost party is the most significant digit of a flat
/// computational index, so |z a b c> maps to z*8 + a*4 + b*2 + c for qubits.
class Register {
 public:
  Register() = default;
  Register(std::vector<std::size_t> dims, std::vector<std::string> labels);

  static Register qubits(std::vector<std::string> labels);

  std::span<const std::size_t> dims() const { return dims_; }
  std::span<const std::string> labels() const { return labels_; }
  std::size_t parties() const { return dims_.size(); }
  std::size_t dimension() const { return dimension_; }

  bool contains(std::string_view label) const { return find(label).has_value(); }
  std::optional<std::size_t> find(std::string_view label) const;
  /// Position of `label`; throws LabelError when absent.
  std::size_t position(std::string_view label) const;
  /// Positions of every label in `labels`, ascending.
  std::vector<std::size_t> positions(const LabelSet& labels) const;
  LabelSet label_set() const { return {labels_.begin(), labels_.end()}; }

  /// Parties at `positions` (ascending), in register order.
  Register select(std::span<const std::size_t> positions) const;
  /// Concatenation; labels must stay distinct.
  Register concat(const Register& other) const;

  /// Mixed-radix digits of a flat index.
  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t index(std::span<const std::size_t> digits) const;

  friend bool operator==(const Register&, const Register&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::size_t dimension_ = 1;
};

/// Labels a, b, c, ... for an n-party register.
std::vector<std::string> alphabetic_labels(std::size_t n, char first = 'a');

}  // namespace entangraph
