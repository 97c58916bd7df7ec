#include "entangraph/state_spec.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "entangraph/errors.hpp"
#include "entangraph/states.hpp"

namespace entangraph {

double parse_real(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ArgumentError("not a number: '" + std::string(text) + "'");
  return v;
}

namespace {

PureState from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read state file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(buf.str());
    auto dims = j.at("dims").get<std::vector<std::size_t>>();
    auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto& amps = j.at("amplitudes");
    Register reg(std::move(dims), std::move(labels));
    if (amps.size() != reg.dimension())
      throw ArgumentError("state file '" + path + "': expected " + std::to_string(reg.dimension()) +
                          " amplitudes, found " + std::to_string(amps.size()));
    CVector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const auto& a = amps[i];
      if (!a.is_array() || a.size() != 2) throw ArgumentError("state file '" + path + "': amplitude is not [re, im]");
      v(static_cast<Eigen::Index>(i)) = Complex(a[0].get<double>(), a[1].get<double>());
    }
    return {std::move(reg), std::move(v)};
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("state file '" + path + "': " + e.what());
  }
}

}  // namespace

PureState parse_state_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (head == "psi34" && colon == std::string_view::npos) return psi34();
  if (head == "ghz" && colon != std::string_view::npos) {
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size())
      throw ArgumentError("bad party count in '" + std::string(spec) + "'");
    // The register check would catch this too, but only after allocating.
    if (n >= 63 || (std::size_t{1} << n) > dimension_cap())
      throw CapacityError("ghz:" + std::to_string(n) + " exceeds the dimension cap " + std::to_string(dimension_cap()));
    return ghz(n);
  }
  if (head == "qubit" && colon != std::string_view::npos) {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw ArgumentError("expected qubit:THETA,PHI");
    return input_qubit(InputQubitParams(parse_real(rest.substr(0, comma)), parse_real(rest.substr(comma + 1))), "a");
  }
  if (head == "file" && !rest.empty()) return from_file(std::string(rest));
  throw ArgumentError("unrecognized state spec '" + std::string(spec) + "'");
}

}  // namespace entangraph
