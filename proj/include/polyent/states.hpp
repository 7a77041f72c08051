#pragma once

// State families with closed-form reference values, the `family:params` recipe
// syntax, and the JSON state file {"dims":[...],"amps":[[re,im],...]}.

#include <polyent/linalg.hpp>

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace polyent {

enum class StateFamily { gsd3, w3, w4_weighted, ghz, haar, product, file };

struct StateRecipe {
  StateFamily family = StateFamily::w3;
  std::vector<double> params;  // gsd3: l0..l4[,phi]  w4: a,b,c,d  ghz: n[,d]  haar/product: dims
  std::optional<std::uint64_t> seed;
  std::string path;            // file family
};

/// Reads a real number token: decimal, p/q fraction, or rN meaning 1/sqrt(N).
inline double parse_real(std::string_view tok) {
  auto plain = [](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("bad number '" + std::string(s) + "'");
    }
    return v;
  };
  if (tok.empty()) throw std::invalid_argument("empty number");
  if (tok.front() == 'r') return 1.0 / std::sqrt(plain(tok.substr(1)));
  if (const auto slash = tok.find('/'); slash != std::string_view::npos) {
    return plain(tok.substr(0, slash)) / plain(tok.substr(slash + 1));
  }
  return plain(tok);
}

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline Dims dims_from_params(const std::vector<double>& p) {
  Dims dims;
  for (double v : p) {
    if (v < 1 || v != std::floor(v)) throw std::invalid_argument("dimensions must be positive integers");
    dims.push_back(static_cast<int>(v));
  }
  validate_dims(dims);
  return dims;
}

}  // namespace detail

/// Recipe mini-syntax:
///   gsd3:l0,l1,l2,l3,l4[,phi]   w3   w4:a,b,c,d   ghz[:n[,d]]
///   haar:d1,d2,...[@seed]       product:d1,d2,...   file:path (or any *.json)
inline StateRecipe parse_recipe(const std::string& text) {
  StateRecipe r;
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (family == "file" || (colon == std::string::npos && text.size() > 5 && text.ends_with(".json"))) {
    r.family = StateFamily::file;
    r.path = family == "file" ? args : text;
    return r;
  }
  if (const auto at = args.find('@'); at != std::string::npos) {
    r.seed = std::stoull(args.substr(at + 1));
    args = args.substr(0, at);
  }
  if (!args.empty()) {
    for (const auto& tok : detail::split(args, ',')) r.params.push_back(parse_real(tok));
  }
  if (family == "gsd3") r.family = StateFamily::gsd3;
  else if (family == "w3") r.family = StateFamily::w3;
  else if (family == "w4" || family == "w4_weighted") r.family = StateFamily::w4_weighted;
  else if (family == "ghz") r.family = StateFamily::ghz;
  else if (family == "haar") r.family = StateFamily::haar;
  else if (family == "product") r.family = StateFamily::product;
  else throw std::invalid_argument("unknown state family '" + family + "'");
  return r;
}

inline PureState state_from_json(const nlohmann::json& j, const NumericPolicy& pol = default_policy()) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("amps")) {
    throw std::invalid_argument("state JSON needs \"dims\" and \"amps\"");
  }
  const Dims dims = j.at("dims").get<Dims>();
  validate_dims(dims);
  const auto& amps = j.at("amps");
  if (!amps.is_array() || static_cast<int>(amps.size()) != total_dim(dims)) {
    throw std::invalid_argument("amps length does not match dims");
  }
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& a = amps[i];
    if (!a.is_array() || a.size() != 2) throw std::invalid_argument("each amplitude must be [re, im]");
    v(static_cast<Eigen::Index>(i)) = cplx(a[0].get<double>(), a[1].get<double>());
  }
  if (std::abs(v.norm() - 1.0) > pol.file_norm_tol) {
    throw std::invalid_argument("state norm " + std::to_string(v.norm()) + " is too far from 1");
  }
  return PureState::normalized(std::move(v), dims);
}

inline nlohmann::json state_to_json(const PureState& psi) {
  nlohmann::json amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < psi.amps().size(); ++i) {
    amps.push_back({psi.amps()(i).real(), psi.amps()(i).imag()});
  }
  return {{"dims", psi.dims()}, {"amps", amps}};
}

inline PureState load_state_file(const std::string& path, const NumericPolicy& pol = default_policy()) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return state_from_json(j, pol);
}

inline PureState build(const StateRecipe& recipe) {
  const auto& p = recipe.params;
  switch (recipe.family) {
    case StateFamily::gsd3: {
      if (p.size() != 5 && p.size() != 6) throw std::invalid_argument("gsd3 takes l0,l1,l2,l3,l4[,phi]");
      double norm2 = 0.0;
      for (int i = 0; i < 5; ++i) {
        if (p[i] < 0) throw std::invalid_argument("gsd3 coefficients must be nonnegative");
        norm2 += p[i] * p[i];
      }
      if (std::abs(norm2 - 1.0) > 1e-10) throw std::invalid_argument("gsd3 coefficients must satisfy sum l_i^2 = 1");
      const double phi = p.size() == 6 ? p[5] : 0.0;
      Vector v = Vector::Zero(8);
      v(0) = p[0];
      v(4) = std::polar(p[1], phi);
      v(5) = p[2];
      v(6) = p[3];
      v(7) = p[4];
      return PureState::normalized(std::move(v), {2, 2, 2});
    }
    case StateFamily::w3: {
      Vector v = Vector::Zero(8);
      v(4) = v(2) = v(1) = 1.0 / std::sqrt(3.0);
      return PureState::normalized(std::move(v), {2, 2, 2});
    }
    case StateFamily::w4_weighted: {
      if (p.size() != 4) throw std::invalid_argument("w4 takes a,b,c,d");
      if (std::abs(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3] - 1.0) > 1e-10) {
        throw std::invalid_argument("w4 coefficients must satisfy a^2+b^2+c^2+d^2 = 1");
      }
      Vector v = Vector::Zero(16);
      v(8) = p[0];
      v(4) = p[1];
      v(2) = p[2];
      v(1) = p[3];
      return PureState::normalized(std::move(v), {2, 2, 2, 2});
    }
    case StateFamily::ghz: {
      const int n = p.empty() ? 3 : static_cast<int>(p[0]);
      const int d = p.size() > 1 ? static_cast<int>(p[1]) : 2;
      if (n < 2 || d < 2) throw std::invalid_argument("ghz needs n >= 2 and d >= 2");
      const Dims dims(n, d);
      Vector v = Vector::Zero(total_dim(dims));
      int stride = 0;
      for (int k = 0, s = 1; k < n; ++k, s *= d) stride += s;
      for (int level = 0; level < d; ++level) v(level * stride) = 1.0;
      return PureState::normalized(std::move(v), dims);
    }
    case StateFamily::haar: return haar_random_pure(detail::dims_from_params(p), recipe.seed.value_or(0));
    case StateFamily::product: return product_zero(detail::dims_from_params(p));
    case StateFamily::file: return load_state_file(recipe.path);
  }
  throw std::invalid_argument("unknown state family");
}

inline PureState build(const std::string& recipe_text) { return build(parse_recipe(recipe_text)); }

// ---------------------------------------------------------------------------
// Cuts "A|BC": the focus letter left of '|', partner letters right of it.

inline PartitionSpec parse_cut(const std::string& cut, int num_subsystems) {
  const auto bar = cut.find('|');
  if (bar == std::string::npos || bar != 1) throw std::invalid_argument("cut must look like \"A|BC\"");
  PartitionSpec p{cut[0] - 'A', {}};
  for (std::size_t i = bar + 1; i < cut.size(); ++i) p.partners.push_back(cut[i] - 'A');
  p.validate(num_subsystems);
  return p;
}

inline std::string format_cut(const PartitionSpec& p) {
  std::string s(1, static_cast<char>('A' + p.focus));
  s += '|';
  for (int b : p.partners) s += static_cast<char>('A' + b);
  return s;
}

/// Closed-form reference values keyed "measure:cut", e.g. "ca:A|B".
/// Families without closed forms give an empty map.
inline std::map<std::string, double> expected_values(const StateRecipe& recipe) {
  std::map<std::string, double> out;
  const auto& p = recipe.params;
  switch (recipe.family) {
    case StateFamily::gsd3: {
      // Subsystem order |ABC>: l3|110> carries the B excitation, l2|101> the C one.
      out["concurrence:A|BC"] = 2 * p[0] * std::sqrt(p[2] * p[2] + p[3] * p[3] + p[4] * p[4]);
      out["tau_a_block_sum:A|BC"] = 2 * p[0] * (p[2] + p[3] + p[4]);
      out["ca:A|B"] = 2 * p[0] * std::sqrt(p[3] * p[3] + p[4] * p[4]);
      out["ca:A|C"] = 2 * p[0] * std::sqrt(p[2] * p[2] + p[4] * p[4]);
      break;
    }
    case StateFamily::w3: {
      out["entropy:A|BC"] = std::log2(3.0) - 2.0 / 3.0;
      out["ea:A|BC"] = std::log2(3.0) - 2.0 / 3.0;
      out["ea:A|B"] = 2.0 / 3.0;
      out["ea:A|C"] = 2.0 / 3.0;
      out["concurrence:A|BC"] = 2.0 * std::sqrt(2.0) / 3.0;
      out["ca:A|B"] = 2.0 / 3.0;
      out["ca:A|C"] = 2.0 / 3.0;
      break;
    }
    case StateFamily::w4_weighted: {
      const double a = p[0];
      out["concurrence:A|BCD"] = 2 * a * std::sqrt(1 - a * a);
      out["ca:A|B"] = 2 * a * p[1];
      out["ca:A|C"] = 2 * a * p[2];
      out["ca:A|D"] = 2 * a * p[3];
      break;
    }
    case StateFamily::ghz: {
      const int n = p.empty() ? 3 : static_cast<int>(p[0]);
      const int d = p.size() > 1 ? static_cast<int>(p[1]) : 2;
      const PartitionSpec all = PartitionSpec::all_against(n);
      out["concurrence:" + format_cut(all)] = std::sqrt(2.0 * (1.0 - 1.0 / d));
      out["entropy:" + format_cut(all)] = std::log2(static_cast<double>(d));
      // Pairwise marginals are classically correlated: zero Wootters
      // concurrence, yet assistance 1 (split into the two Bell states |00>+-|11>).
      if (n >= 3 && d == 2) {
        for (int b : all.partners) {
          const std::string cut = "A|" + std::string(1, static_cast<char>('A' + b));
          out["wootters:" + cut] = 0.0;
          out["ca:" + cut] = 1.0;
        }
      }
      break;
    }
    default: break;
  }
  return out;
}

}  // namespace polyent
