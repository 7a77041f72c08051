#pragma once

// Randomized regression campaigns: Haar states, a grid of exponents, a set of
// inequalities. Per-state seeds are derive_seed(master, index); results are
// reduced in index order so output is independent of scheduling.

#include <polyent/parallel.hpp>
#include <polyent/polygamy.hpp>
#include <polyent/report_io.hpp>

#include <limits>
#include <ostream>

namespace polyent {

struct CampaignConfig {
  Dims dims{2, 2, 2};
  int count = 100;
  std::uint64_t seed = 1;
  std::vector<double> exponents{0.5, 1.0, 1.5, 2.0};
  std::vector<Inequality> inequalities{Inequality::theorem1};
  CheckOptions check{};
  int threads = 0;

  void validate() const {
    validate_dims(dims);
    if (dims.size() < 2) throw std::invalid_argument("campaign needs at least two subsystems");
    if (count < 1) throw std::invalid_argument("campaign count must be >= 1");
    if (inequalities.empty()) throw std::invalid_argument("campaign needs at least one inequality");
    for (auto id : inequalities) {
      if (!uses_exponent(id)) continue;
      if (exponents.empty()) throw std::invalid_argument("campaign needs exponents for " + to_string(id));
      for (double e : exponents) {
        if (!(e >= 0.0 && e <= max_exponent(id))) {
          throw std::invalid_argument("exponent " + format_number(e) + " is outside the range of " + to_string(id));
        }
      }
    }
  }
};

struct CampaignStats {
  Inequality id = Inequality::theorem1;
  std::optional<double> exponent;
  int checked = 0;
  int held = 0;
  int tentative_violations = 0;
  int confirmed_violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double mean_slack = 0.0;
};

struct CampaignSummary {
  std::vector<CampaignStats> entries;
  std::uint64_t seed = 0;
  int count = 0;
  Dims dims;
  std::string lhs_mode;
  NumericPolicy policy{};

  int total_confirmed() const {
    int n = 0;
    for (const auto& e : entries) n += e.confirmed_violations;
    return n;
  }
  int total_tentative() const {
    int n = 0;
    for (const auto& e : entries) n += e.tentative_violations;
    return n;
  }
  const CampaignStats* find(Inequality id, std::optional<double> exponent = std::nullopt) const {
    for (const auto& e : entries) {
      if (e.id == id && e.exponent == exponent) return &e;
    }
    return nullptr;
  }
};

struct CampaignResult {
  CampaignSummary summary;
  std::vector<nlohmann::json> log;  // one record per state, index order
};

inline CampaignResult run_campaign(const CampaignConfig& cfg, const NumericPolicy& pol = default_policy()) {
  cfg.validate();
  struct Slot {
    Inequality id;
    std::optional<double> exponent;
  };
  std::vector<Slot> slots;
  for (auto id : cfg.inequalities) {
    if (uses_exponent(id)) {
      for (double e : cfg.exponents) slots.push_back({id, e});
    } else {
      slots.push_back({id, std::nullopt});
    }
  }

  const auto n_states = static_cast<std::size_t>(cfg.count);
  std::vector<std::vector<PolygamyReport>> reports(n_states);
  std::vector<std::uint64_t> seeds(n_states);
  // States run in parallel; the optimizer inside each check stays serial.
  CheckOptions opt = cfg.check;
  opt.assistance.optimizer.threads = 1;
  parallel_for(cfg.count, cfg.threads, [&](int i) {
    seeds[i] = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const PureState psi = haar_random_pure(cfg.dims, seeds[i]);
    const PartitionSpec part = PartitionSpec::all_against(psi.num_subsystems());
    for (const auto& s : slots) reports[i].push_back(check_inequality(psi, part, s.id, s.exponent.value_or(2.0), opt, pol));
  });

  CampaignResult out;
  out.summary.seed = cfg.seed;
  out.summary.count = cfg.count;
  out.summary.dims = cfg.dims;
  out.summary.lhs_mode = to_string(cfg.check.lhs_mode);
  out.summary.policy = pol;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    CampaignStats st{slots[k].id, slots[k].exponent};
    double sum = 0.0;
    for (std::size_t i = 0; i < n_states; ++i) {
      const PolygamyReport& r = reports[i][k];
      ++st.checked;
      if (r.holds) ++st.held;
      else if (r.tentative) ++st.tentative_violations;
      else ++st.confirmed_violations;
      st.min_slack = std::min(st.min_slack, r.slack);
      sum += r.slack;
    }
    st.mean_slack = sum / static_cast<double>(st.checked);
    out.summary.entries.push_back(st);
  }
  for (std::size_t i = 0; i < n_states; ++i) {
    nlohmann::json rec{{"index", i}, {"seed", seeds[i]}, {"reports", nlohmann::json::array()}};
    for (const auto& r : reports[i]) rec["reports"].push_back(report_to_json(r));
    out.log.push_back(std::move(rec));
  }
  return out;
}

inline nlohmann::json summary_to_json(const CampaignSummary& s) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"inequality", to_string(e.id)},
                       {"exponent", e.exponent ? nlohmann::json(*e.exponent) : nlohmann::json(nullptr)},
                       {"checked", e.checked},
                       {"held", e.held},
                       {"tentative_violations", e.tentative_violations},
                       {"confirmed_violations", e.confirmed_violations},
                       {"min_slack", e.min_slack},
                       {"mean_slack", e.mean_slack}});
  }
  return {{"tool", tool_json()},
          {"seed", s.seed},
          {"count", s.count},
          {"dims", s.dims},
          {"lhs_mode", s.lhs_mode},
          {"tolerances", policy_to_json(s.policy)},
          {"entries", entries}};
}

inline void write_campaign_log(std::ostream& os, const CampaignResult& res) {
  for (const auto& rec : res.log) os << rec.dump() << '\n';
}

}  // namespace polyent
