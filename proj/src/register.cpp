#include "entangraph/register.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "entangraph/errors.hpp"

namespace entangraph {

std::size_t dimension_cap() {
  const char* raw = std::getenv("ENTANGRAPH_DIM_CAP");
  if (raw == nullptr) return kDefaultDimensionCap;
  std::string_view text{raw};
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    return kDefaultDimensionCap;
  }
  return value;
}

Register::Register(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw ArgumentError("register: " + std::to_string(dims_.size()) + " dims but " +
                        std::to_string(labels_.size()) + " labels");
  }
  const std::size_t cap = dimension_cap();
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 2) throw ArgumentError("register: party '" + labels_[i] + "' has dimension < 2");
    if (labels_[i].empty()) throw LabelError("register: empty label");
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[j] == labels_[i]) throw LabelError("register: duplicate label '" + labels_[i] + "'");
    }
    if (dimension_ > cap / dims_[i]) {
      throw CapacityError("register: total dimension exceeds cap " + std::to_string(cap));
    }
    dimension_ *= dims_[i];
  }
}

Register Register::qubits(std::vector<std::string> labels) {
  std::vector<std::size_t> dims(labels.size(), 2);
  return Register(std::move(dims), std::move(labels));
}

std::optional<std::size_t> Register::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Register::position(std::string_view label) const {
  if (auto p = find(label)) return *p;
  throw LabelError("unknown label '" + std::string(label) + "'");
}

std::vector<std::size_t> Register::positions(const LabelSet& labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(position(l));
  std::sort(out.begin(), out.end());
  return out;
}

Register Register::select(std::span<const std::size_t> positions) const {
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (auto p : positions) {
    dims.push_back(dims_.at(p));
    labels.push_back(labels_.at(p));
  }
  return Register(std::move(dims), std::move(labels));
}

Register Register::concat(const Register& other) const {
  std::vector<std::size_t> dims = dims_;
  std::vector<std::string> labels = labels_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  return Register(std::move(dims), std::move(labels));
}

std::vector<std::size_t> Register::digits(std::size_t index) const {
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    out[k] = index % dims_[k];
    index /= dims_[k];
  }
  return out;
}

std::size_t Register::index(std::span<const std::size_t> digits) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) idx = idx * dims_[k] + digits[k];
  return idx;
}

std::vector<std::string> alphabetic_labels(std::size_t n, char first) {
  if (n > 26) throw ArgumentError("at most 26 alphabetic labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>(first + i));
  return out;
}

}  // namespace entangraph
