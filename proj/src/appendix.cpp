#include "entangraph/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "appendix_data.hpp"
#include "json.hpp"

#include "entangraph/errors.hpp"
#include "entangraph/states.hpp"

namespace entangraph {

namespace {

using nlohmann::json;

struct Expected {
  double value;
  bool approx;
};

struct Tolerances {
  double approx;
  double exact;
  double tol(const Expected& e) const { return e.approx ? approx : exact; }
};

// "0x5", "-1", "~-1.306", "~1.295x2".
std::vector<Expected> parse_multiset(const json& items) {
  std::vector<Expected> out;
  for (const auto& item : items) {
    std::string s = item.get<std::string>();
    const bool approx = !s.empty() && s.front() == '~';
    if (approx) s.erase(0, 1);
    std::size_t count = 1;
    if (auto x = s.find('x'); x != std::string::npos) {
      count = std::stoul(s.substr(x + 1));
      s.resize(x);
    }
    const double v = std::stod(s);
    for (std::size_t i = 0; i < count; ++i) out.push_back({v, approx});
  }
  std::sort(out.begin(), out.end(), [](const Expected& a, const Expected& b) { return a.value < b.value; });
  return out;
}

LabelSet letters(const std::string& s) {
  LabelSet out;
  for (char c : s) out.insert(std::string(1, c));
  return out;
}

std::string fmt(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string list(const Eigen::VectorXd& v) {
  std::string out = "{";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v(i));
  return out + "}";
}

AppendixCheck compare_spectrum(std::string id, const Eigen::VectorXd& computed, const std::vector<Expected>& expected,
                               const Tolerances& tols) {
  AppendixCheck c{std::move(id), true, false, ""};
  if (static_cast<std::size_t>(computed.size()) != expected.size()) {
    c.detail = "expected " + std::to_string(expected.size()) + " eigenvalues, computed " +
               std::to_string(computed.size()) + " " + list(computed);
    return c;
  }
  double worst = 0.0;
  c.passed = true;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = std::abs(computed(static_cast<Eigen::Index>(i)) - expected[i].value);
    worst = std::max(worst, d);
    if (d > tols.tol(expected[i])) c.passed = false;
  }
  c.detail = list(computed) + ", max deviation " + fmt(worst);
  return c;
}

std::vector<int> schmidt_profile(const PureState& v) {
  std::vector<int> out;
  for (const auto& l : v.reg().labels()) out.push_back(schmidt_rank(v, {l}));
  return out;
}

std::string profile_text(const std::vector<int>& p) {
  std::string s;
  for (int r : p) s += std::to_string(r);
  return s;
}

}  // namespace

bool AppendixReport::passed() const { return failures() == 0; }

std::size_t AppendixReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const AppendixCheck& c) { return c.gating && !c.passed; }));
}

std::string AppendixReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.gating ? (c.passed ? "PASS " : "FAIL ") : (c.passed ? "INFO agrees " : "INFO differs ")) << c.id
       << ": " << c.detail << "\n";
  }
  return os.str();
}

std::string AppendixReport::to_json() const {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"detail", c.detail}, {"gating", c.gating}, {"id", c.id}, {"passed", c.passed}});
  return json{{"checks", arr}, {"failures", failures()}, {"passed", passed()}}.dump(1) + "\n";
}

std::string_view embedded_appendix_tables() { return detail::kAppendixTables; }

DenseMatrix appendix_matrix(const LabelSet& parties) {
  const DenseMatrix rho = outer(psi34()).normalized().scaled(12.0);
  return partial_trace(rho, parties);
}

AppendixReport verify_appendix(std::string_view tables_json) {
  json tables;
  try {
    tables = json::parse(tables_json);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("appendix tables: ") + e.what());
  }
  AppendixReport report;
  try {
    const Tolerances tols{tables.at("approx_tolerance").get<double>(), tables.at("exact_tolerance").get<double>()};

    for (const auto& m : tables.at("matrices")) {
      const std::string parties = m.at("parties").get<std::string>();
      const DenseMatrix got = appendix_matrix(letters(parties));
      const auto& rows = m.at("entries");
      CMatrix want(got.dimension(), got.dimension());
      if (static_cast<Eigen::Index>(rows.size()) != got.dimension())
        throw ArgumentError("appendix tables: matrix " + parties + " has the wrong size");
      for (Eigen::Index i = 0; i < want.rows(); ++i)
        for (Eigen::Index j = 0; j < want.cols(); ++j) want(i, j) = rows.at(i).at(j).get<double>();

      if (m.at("compare").get<std::string>() == "spectrum") {
        const auto ew = hermitian_eigen(DenseMatrix(got.reg(), want)).values;
        std::vector<Expected> expected;
        for (double v : ew) expected.push_back({v, false});
        auto c = compare_spectrum("matrix " + parties + " (spectrum)", hermitian_eigen(got).values, expected, tols);
        report.checks.push_back(std::move(c));
      } else {
        const double d = (got.entries() - want).cwiseAbs().maxCoeff();
        report.checks.push_back(
            {"matrix " + parties, true, d <= tols.exact, "max entry deviation " + fmt(d)});
      }
    }

    for (const auto& p : tables.at("partial_transposes")) {
      const std::string parties = p.at("matrix").get<std::string>();
      const auto expected = parse_multiset(p.at("eigenvalues"));
      const DenseMatrix rho = appendix_matrix(letters(parties));
      for (const auto& t : p.at("transpose")) {
        const std::string sub = t.get<std::string>();
        const auto values = hermitian_eigen(partial_transpose(rho, letters(sub))).values;
        report.checks.push_back(compare_spectrum("pt " + parties + "^T_" + sub, values, expected, tols));
      }
    }

    for (const auto& e : tables.at("eigensystems")) {
      const std::string parties = e.at("matrix").get<std::string>();
      const DenseMatrix rho = appendix_matrix(letters(parties));
      const auto eig = hermitian_eigen(rho);
      report.checks.push_back(
          compare_spectrum("eigenvalues " + parties, eig.values, parse_multiset(e.at("eigenvalues")), tols));

      int k = 0;
      for (const auto& v : e.at("vectors")) {
        ++k;
        const std::string id = "eigvec " + parties + " #" + std::to_string(k);
        const Expected lambda = parse_multiset(json::array({v.at("eigenvalue")})).front();
        CVector printed = CVector::Zero(rho.dimension());
        std::string unit_key;
        for (const auto& [key, coef] : v.at("terms").items()) {
          if (key.size() != parties.size()) throw ArgumentError("appendix tables: bad basis key " + key);
          const auto idx = static_cast<Eigen::Index>(std::stoul(key, nullptr, 2));
          printed(idx) = coef.get<double>();
          if (unit_key.empty() && coef.get<double>() == 1.0) unit_key = key;
        }
        const PureState printed_state(rho.reg(), printed);

        // Position of the computed eigenvalue and whether it is isolated.
        Eigen::Index at = 0;
        (eig.values.array() - lambda.value).abs().minCoeff(&at);
        const double dl = std::abs(eig.values(at) - lambda.value);
        bool isolated = true;
        for (Eigen::Index i = 0; i < eig.values.size(); ++i)
          if (i != at && std::abs(eig.values(i) - eig.values(at)) < 1e-7) isolated = false;

        if (!lambda.approx) {
          const double res = ((rho.entries() - lambda.value * CMatrix::Identity(rho.dimension(), rho.dimension())) *
                              printed).norm() / printed.norm();
          report.checks.push_back({id + " eigenspace", true, res <= tols.exact,
                                   "||(M - " + fmt(lambda.value) + ") v|| / ||v|| = " + fmt(res)});
        }
        if (!isolated) continue;

        const PureState computed(rho.reg(), eig.vectors.col(at));
        const auto want = schmidt_profile(printed_state);
        const auto got = schmidt_profile(computed);
        report.checks.push_back({id + " schmidt", true, dl <= tols.tol(lambda) && want == got,
                                 "lambda " + fmt(eig.values(at)) + ", single-party Schmidt ranks printed " +
                                     profile_text(want) + " computed " + profile_text(got)});

        if (lambda.approx && !unit_key.empty()) {
          const auto ref = static_cast<Eigen::Index>(std::stoul(unit_key, nullptr, 2));
          const CVector scaled = eig.vectors.col(at) / eig.vectors(ref, at);
          double worst = 0.0;
          Eigen::Index worst_at = 0;
          for (Eigen::Index i = 0; i < scaled.size(); ++i) {
            const double d = std::abs(scaled(i) - printed(i));
            if (d > worst) {
              worst = d;
              worst_at = i;
            }
          }
          std::string detail = "max coefficient deviation " + fmt(worst);
          if (worst > tols.approx) {
            std::string key;
            for (auto digit : rho.reg().digits(static_cast<std::size_t>(worst_at))) key += std::to_string(digit);
            detail += " at |" + key + ">: printed " + fmt(printed(worst_at).real()) + ", computed " +
                      fmt(scaled(worst_at).real());
          }
          report.checks.push_back({id + " coefficients", false, worst <= tols.approx, detail});
        }
      }
    }
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("appendix tables: ") + e.what());
  }
  return report;
}

}  // namespace entangraph
