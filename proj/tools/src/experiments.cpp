#include "ergolab/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "ergolab/bounds.hpp"
#include "ergolab/cli/corpus.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/fourier.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/seminorms.hpp"

namespace ergolab::cli {

std::string to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Pass: return "pass";
    case RowStatus::Fail: return "fail";
    case RowStatus::Informational: return "informational";
  }
  return "fail";
}

bool ResultTable::ok() const {
  return std::none_of(status.begin(), status.end(), [](RowStatus s) { return s == RowStatus::Fail; });
}

CsvTable ResultTable::csv() const { return {header, rows}; }

namespace {

using Cells = std::vector<std::pair<std::string, std::string>>;

const std::vector<std::string> kValueColumns{"lhs", "rhs", "ratio", "estimate", "reference", "tolerance"};

class TableBuilder {
 public:
  TableBuilder(std::string experiment, const std::vector<std::string>& params) {
    table_.experiment = std::move(experiment);
    table_.header.push_back("experiment");
    table_.header.insert(table_.header.end(), params.begin(), params.end());
    table_.header.insert(table_.header.end(), kValueColumns.begin(), kValueColumns.end());
    table_.header.push_back("status");
  }

  void add(const Cells& cells, RowStatus status) {
    std::vector<std::string> row(table_.header.size());
    row.front() = table_.experiment;
    for (const auto& [key, value] : cells) {
      const auto it = std::find(table_.header.begin(), table_.header.end(), key);
      if (it == table_.header.end()) throw std::logic_error("experiment column '" + key + "' not in header");
      row[static_cast<std::size_t>(it - table_.header.begin())] = value;
    }
    row.back() = to_string(status);
    table_.rows.push_back(std::move(row));
    table_.status.push_back(status);
  }

  ResultTable done() { return std::move(table_); }

 private:
  ResultTable table_;
};

std::string num(double x) { return format_real(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

RowStatus status_of(bool pass) { return pass ? RowStatus::Pass : RowStatus::Fail; }

std::string cosine_literal(std::size_t dim) {
  std::string zeros;
  for (std::size_t i = 1; i < dim; ++i) zeros += ",0";
  return "0.5*e(1" + zeros + ")+0.5*e(-1" + zeros + ")";
}

DynamicalSystem f_system_or(const ExperimentConfig& c, const SystemSpec& fallback) {
  return make_system(c.system ? parse_system(*c.system, c.alpha) : fallback);
}

Observable obs_on(const std::optional<std::string>& literal, const DynamicalSystem& system,
                  const std::string& fallback) {
  return parse_observable(literal ? *literal : fallback, system.dimension());
}

/// Start of the f entry, on a stream disjoint from the g samples.
Point f_start(const DynamicalSystem& system, std::uint64_t seed) {
  return random_point(system, splitmix64(seed ^ 0xF00DF00DULL), 0);
}

FrequencyGrid grid_for(const ExperimentConfig& c, std::size_t N) {
  return c.grid ? FrequencyGrid(*c.grid) : FrequencyGrid::for_length(N);
}

std::vector<std::size_t> n_list_or(const ExperimentConfig& c, std::vector<std::size_t> fallback) {
  if (!c.N_list.empty()) return c.N_list;
  if (c.N) return {*c.N};
  return fallback;
}

std::vector<std::size_t> powers_of_two(int lo, int hi) {
  std::vector<std::size_t> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
  return out;
}

bool weakly_mixing(const DynamicalSystem& system) {
  const auto blocks = system.blocks();
  return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.kind == SystemKind::Doubling; });
}

/// Zero-mean with vanishing Kronecker projection; false when no projection
/// rule applies.
bool kronecker_null(const DynamicalSystem& system, const Observable& f) {
  if (!projection_available(system, FactorTag::Kronecker)) return false;
  return conditional_expectation(system, f, FactorTag::Kronecker).empty();
}

Cells report_cells(const BoundReport& r, double tolerance) {
  return {{"lhs", num(r.lhs)},
          {"rhs", num(r.rhs)},
          {"ratio", num(r.ratio)},
          {"tolerance", num(r.near_zero_rhs ? r.floor : tolerance)}};
}

void append(Cells& a, const Cells& b) { a.insert(a.end(), b.begin(), b.end()); }

// --- experiments -------------------------------------------------------

ResultTable seminorm_rotation_l4(const ExperimentConfig& c) {
  const DynamicalSystem rot = f_system_or(c, SystemSpec::rotation(c.alpha));
  if (rot.kind() != SystemKind::Rotation)
    throw InvalidArgument("seminorm-rotation-l4: the closed form needs a rotation, got " + rot.describe());
  const Observable f = obs_on(c.obs, rot, "e(1)");
  const std::size_t N = c.N.value_or(65536), H = c.H.value_or(512);
  const double reference = hk_seminorm_fourier(f.terms()).l4;
  const Point start = f_start(rot, c.seed);
  constexpr double tol = 0.05;

  TableBuilder t("seminorm-rotation-l4", {"system", "observable", "N", "H", "k", "path"});
  for (PathPolicy policy : {PathPolicy::ExactOnly, PathPolicy::QuadratureOnly}) {
    const SeminormEstimate e = hk_seminorm(rot, f, 2, H, N, start, policy);
    const double err = std::abs(e.value - reference);
    t.add({{"system", rot.describe()},
           {"observable", format_observable(f)},
           {"N", num(N)},
           {"H", num(H)},
           {"k", "2"},
           {"path", to_string(e.path)},
           {"lhs", num(err)},
           {"ratio", reference > 0 ? num(e.value / reference) : ""},
           {"estimate", num(e.value)},
           {"reference", num(reference)},
           {"tolerance", num(tol)}},
          status_of(err <= tol));
  }
  return t.done();
}

ResultTable seminorm_weakmixing_zero(const ExperimentConfig& c) {
  const DynamicalSystem sys = f_system_or(c, SystemSpec::doubling());
  if (!weakly_mixing(sys))
    throw InvalidArgument("seminorm-weakmixing-zero: needs a weakly mixing system, got " + sys.describe());
  const Observable f = obs_on(c.obs, sys, cosine_literal(sys.dimension()));
  const std::size_t N = c.N.value_or(std::size_t{1} << 18), H = c.H.value_or(256);
  // Weak mixing makes every structured factor trivial, so both seminorms
  // converge to |int f|.
  const double reference = std::abs(integrate(sys, f));
  const Point start = f_start(sys, c.seed);
  constexpr double tol = 0.05;

  TableBuilder t("seminorm-weakmixing-zero", {"system", "observable", "N", "H", "quantity", "k", "path"});
  const auto add = [&](const std::string& quantity, const SeminormEstimate& e) {
    const double err = std::abs(e.value - reference);
    t.add({{"system", sys.describe()},
           {"observable", format_observable(f)},
           {"N", num(N)},
           {"H", num(H)},
           {"quantity", quantity},
           {"k", num(e.k)},
           {"path", to_string(e.path)},
           {"lhs", num(err)},
           {"estimate", num(e.value)},
           {"reference", num(reference)},
           {"tolerance", num(tol)}},
          status_of(err <= tol));
  };
  add("hk_seminorm", hk_seminorm(sys, f, c.k.value_or(2), H, N, start));
  add("n_seminorm", n_seminorm(sys, f, 1, H, N, start));
  return t.done();
}

ResultTable vdc_property(const ExperimentConfig& c) {
  const std::size_t trials = c.trials.value_or(1000), N = c.N.value_or(4096);
  const std::vector<std::size_t> Hs = c.H ? std::vector<std::size_t>{*c.H} : std::vector<std::size_t>{16, 64, 256};
  const FrequencyGrid grid = grid_for(c, N);
  const CounterRng rng(c.seed);

  struct Job {
    std::size_t H, trial;
  };
  std::vector<Job> jobs;
  for (std::size_t H : Hs)
    for (std::size_t i = 0; i < trials; ++i) jobs.push_back({H, i});
  const std::vector<BoundReport> reports = parallel_map(jobs.size(), [&](std::size_t j) {
    std::vector<Complex> a(N);
    for (std::size_t n = 0; n < N; ++n) a[n] = rng.sign(jobs[j].trial, n);
    return vdc_bound(a, N, jobs[j].H, grid);
  });

  TableBuilder t("vdc-property", {"trial", "N", "H", "M", "seed"});
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const BoundReport& r = reports[j];
    Cells cells{{"trial", num(jobs[j].trial)},
                {"N", num(N)},
                {"H", num(jobs[j].H)},
                {"M", num(grid.resolution())},
                {"seed", num(c.seed)}};
    append(cells, report_cells(r, 0.0));
    t.add(cells, r.informational ? RowStatus::Informational : status_of(r.lhs <= r.rhs));
  }
  return t.done();
}

struct Pair {
  DynamicalSystem f_system;
  Observable f;
  DynamicalSystem g_system;
  Observable g;
};

Pair pair_from_config(const ExperimentConfig& c) {
  DynamicalSystem fs = f_system_or(c, SystemSpec::doubling());
  Observable f = obs_on(c.obs, fs, cosine_literal(fs.dimension()));
  DynamicalSystem gs = make_system(SystemSpec::rotation(c.beta));
  Observable g = obs_on(c.obs2, gs, "e(1)");
  return {std::move(fs), std::move(f), std::move(gs), std::move(g)};
}

ResultTable upbound0(const ExperimentConfig& c) {
  const Pair p = pair_from_config(c);
  const std::size_t N = c.N.value_or(65536), samples = c.samples.value_or(100);
  constexpr double slack = 0.02;
  const BoundReport r =
      check_upbound0({p.f_system, p.f, f_start(p.f_system, c.seed)}, {p.g_system, p.g}, N, samples, c.seed);

  TableBuilder t("upbound0", {"system", "observable", "g_system", "g_observable", "N", "samples", "seed",
                              "lhs_quarter", "lhs_half"});
  Cells cells{{"system", p.f_system.describe()},
              {"observable", format_observable(p.f)},
              {"g_system", p.g_system.describe()},
              {"g_observable", format_observable(p.g)},
              {"N", num(N)},
              {"samples", num(samples)},
              {"seed", num(c.seed)},
              {"lhs_quarter", num(r.params.at("lhs_quarter"))},
              {"lhs_half", num(r.params.at("lhs_half"))}};
  append(cells, report_cells(r, slack));
  t.add(cells, status_of(r.holds(slack)));
  return t.done();
}

ResultTable upbound_k(const ExperimentConfig& c) {
  struct Case {
    std::string name;
    Pair pair;
  };
  std::vector<Case> cases;
  if (c.system || c.obs || c.obs2) {
    cases.push_back({"config", pair_from_config(c)});
  } else {
    for (const auto& cp : corpus_pairs(c.alpha, c.beta)) {
      DynamicalSystem fs = make_system(cp.f_system), gs = make_system(cp.g_system);
      Observable f = parse_observable(cp.f_observable, fs.dimension());
      Observable g = parse_observable(cp.g_observable, gs.dimension());
      cases.push_back({cp.name, {std::move(fs), std::move(f), std::move(gs), std::move(g)}});
    }
  }
  std::vector<int> ks{1, 2};
  if (c.k) {
    if (*c.k != 1 && *c.k != 2) throw InvalidArgument("upbound-k: k must be 1 or 2");
    ks = {*c.k};
  }
  const std::size_t N = c.N.value_or(65536), H = c.H.value_or(256);
  const FrequencyGrid grid = grid_for(c, N);
  constexpr double slack = 0.02;

  TableBuilder t("upbound-k", {"pair", "system", "observable", "g_system", "g_observable", "k", "N", "H", "M",
                               "n_seminorm", "lhs_quarter", "lhs_half"});
  for (const auto& cs : cases) {
    const Pair& p = cs.pair;
    const std::vector<StackEntry> stack{{p.f_system, p.f, f_start(p.f_system, c.seed)},
                                        {p.g_system, p.g, random_point(p.g_system, c.seed, 0)}};
    for (int k : ks) {
      const BoundReport r = check_upbound_k(stack, k, H, N, grid);
      Cells cells{{"pair", cs.name},
                  {"system", p.f_system.describe()},
                  {"observable", format_observable(p.f)},
                  {"g_system", p.g_system.describe()},
                  {"g_observable", format_observable(p.g)},
                  {"k", num(k)},
                  {"N", num(N)},
                  {"H", num(H)},
                  {"M", num(grid.resolution())},
                  {"n_seminorm", num(r.params.at("n_seminorm"))},
                  {"lhs_quarter", num(r.params.at("lhs_quarter"))},
                  {"lhs_half", num(r.params.at("lhs_half"))}};
      append(cells, report_cells(r, slack));
      t.add(cells, status_of(r.holds(slack)));
    }
  }
  return t.done();
}

ResultTable ww_rt_bound(const ExperimentConfig& c) {
  const Pair p = pair_from_config(c);
  const std::vector<std::size_t> Ns = n_list_or(c, powers_of_two(12, 16));
  const std::size_t samples = c.samples.value_or(100), H = c.H.value_or(32);
  const bool decay_expected = kronecker_null(p.f_system, p.f) && weakly_mixing(p.f_system);
  const Point start = f_start(p.f_system, c.seed);
  constexpr double slack = 0.02;

  TableBuilder t("ww-rt-bound", {"system", "observable", "g_system", "g_observable", "N", "H", "M", "samples",
                                 "seed", "hk3", "lhs_quarter", "lhs_half"});
  double previous = 0.0;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    const std::size_t N = Ns[i];
    const FrequencyGrid grid = grid_for(c, N);
    const BoundReport r = check_ww_rt_bound({p.f_system, p.f, start}, {p.g_system, p.g}, N, grid, samples, c.seed, H);
    bool pass = r.holds(slack);
    if (decay_expected && i > 0) pass = pass && r.lhs <= previous + slack;
    previous = r.lhs;
    Cells cells{{"system", p.f_system.describe()},
                {"observable", format_observable(p.f)},
                {"g_system", p.g_system.describe()},
                {"g_observable", format_observable(p.g)},
                {"N", num(N)},
                {"H", num(H)},
                {"M", num(grid.resolution())},
                {"samples", num(samples)},
                {"seed", num(c.seed)},
                {"hk3", num(r.params.at("hk3"))},
                {"lhs_quarter", num(r.params.at("lhs_quarter"))},
                {"lhs_half", num(r.params.at("lhs_half"))}};
    append(cells, report_cells(r, slack));
    t.add(cells, status_of(pass));
  }
  return t.done();
}

ResultTable ww_transfer(const ExperimentConfig& c) {
  const Pair p = pair_from_config(c);
  const std::vector<std::size_t> Ns = n_list_or(c, powers_of_two(12, 16));
  const std::size_t samples = c.samples.value_or(100);
  const std::size_t Nmax = *std::max_element(Ns.begin(), Ns.end());
  const FrequencyGrid grid = grid_for(c, Nmax);
  const bool decay_expected = kronecker_null(p.f_system, p.f) && weakly_mixing(p.f_system);
  constexpr double slack = 0.02;
  const auto rows =
      ww_transfer_diagnostic({p.f_system, p.f, f_start(p.f_system, c.seed)}, {p.g_system, p.g}, Ns, grid, samples,
                             c.seed);

  TableBuilder t("ww-transfer", {"system", "observable", "g_system", "g_observable", "N", "M", "samples", "seed",
                                 "ww_sup", "l2_estimate"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RowStatus status = RowStatus::Informational;
    if (decay_expected && i > 0)
      status = status_of(rows[i].ww_sup <= rows[i - 1].ww_sup + slack &&
                         rows[i].l2_estimate <= rows[i - 1].l2_estimate + slack);
    t.add({{"system", p.f_system.describe()},
           {"observable", format_observable(p.f)},
           {"g_system", p.g_system.describe()},
           {"g_observable", format_observable(p.g)},
           {"N", num(rows[i].N)},
           {"M", num(grid.resolution())},
           {"samples", num(samples)},
           {"seed", num(c.seed)},
           {"ww_sup", num(rows[i].ww_sup)},
           {"l2_estimate", num(rows[i].l2_estimate)},
           {"estimate", num(rows[i].l2_estimate)},
           {"tolerance", num(slack)}},
          status);
  }
  return t.done();
}

ResultTable rt_convergence_table(const ExperimentConfig& c) {
  const DynamicalSystem fs = f_system_or(c, SystemSpec::rotation(c.alpha));
  const Observable f = obs_on(c.obs, fs, "e(1)");
  const DynamicalSystem g1s = make_system(SystemSpec::doubling());
  const Observable g1 = obs_on(c.obs2, g1s, cosine_literal(1));
  const DynamicalSystem g2s = make_system(SystemSpec::rotation(c.beta));
  const Observable g2 = Observable::character({1});
  std::vector<std::size_t> Ns = n_list_or(c, powers_of_two(10, 18));
  std::sort(Ns.begin(), Ns.end());
  Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());
  const std::size_t instances = c.samples.value_or(8);
  constexpr double tol = 0.02;

  const auto averages = parallel_map(instances, [&](std::size_t i) {
    const std::vector<StackEntry> stack{{fs, f, random_point(fs, c.seed, 3 * i)},
                                        {g1s, g1, random_point(g1s, c.seed, 3 * i + 1)},
                                        {g2s, g2, random_point(g2s, c.seed, 3 * i + 2)}};
    std::vector<OrbitSeries> series;
    for (const auto& e : stack) series.push_back(e.sample(Ns.back()));
    std::vector<Complex> out;
    for (std::size_t N : Ns) out.push_back(return_times_average(std::span<const OrbitSeries>(series), N));
    return out;
  });

  TableBuilder t("rt-convergence-table", {"instance", "system", "observable", "g1_system", "g1_observable",
                                          "g2_system", "g2_observable", "N", "re", "im", "abs", "diff"});
  for (std::size_t i = 0; i < instances; ++i) {
    for (std::size_t j = 0; j < Ns.size(); ++j) {
      const Complex a = averages[i][j];
      Cells cells{{"instance", num(i)},
                  {"system", fs.describe()},
                  {"observable", format_observable(f)},
                  {"g1_system", g1s.describe()},
                  {"g1_observable", format_observable(g1)},
                  {"g2_system", g2s.describe()},
                  {"g2_observable", format_observable(g2)},
                  {"N", num(Ns[j])},
                  {"re", num(a.real())},
                  {"im", num(a.imag())},
                  {"abs", num(std::abs(a))},
                  {"estimate", num(std::abs(a))}};
      RowStatus status = RowStatus::Informational;
      if (j > 0) {
        const double diff = std::abs(a - averages[i][j - 1]);
        cells.push_back({"diff", num(diff)});
        cells.push_back({"lhs", num(diff)});
        if (j + 1 == Ns.size()) {
          cells.push_back({"tolerance", num(tol)});
          status = status_of(diff <= tol);
        }
      }
      t.add(cells, status);
    }
  }
  return t.done();
}

ResultTable l4l2_gap(const ExperimentConfig& c) {
  const std::vector<std::size_t> ms = c.m.empty() ? std::vector<std::size_t>{1, 16, 10000} : c.m;
  constexpr double tol = 1e-12;
  TableBuilder t("l4l2-gap", {"m"});
  for (std::size_t m : ms) {
    const BoundReport r = l4_l2_gap_demo(m);
    const double reference = std::pow(static_cast<double>(m), 0.25);
    Cells cells{{"m", num(m)}, {"estimate", num(r.ratio)}, {"reference", num(reference)}};
    append(cells, report_cells(r, tol));
    t.add(cells, status_of(std::abs(r.ratio - reference) <= tol));
  }
  return t.done();
}

ResultTable nk_alias_check(const ExperimentConfig& c) {
  const DynamicalSystem rot = f_system_or(c, SystemSpec::rotation(c.alpha));
  if (!has_exact_composition(rot) || rot.kind() != SystemKind::Rotation)
    throw InvalidArgument("nk-alias-check: needs a rotation, got " + rot.describe());
  const std::size_t trials = c.trials.value_or(20), N = c.N.value_or(65536), H = c.H.value_or(512);
  const Point start = f_start(rot, c.seed);
  constexpr double tol = 1e-12;

  TableBuilder t("nk-alias-check", {"trial", "system", "observable", "N", "H", "seed", "n_seminorm_k1",
                                    "hk_seminorm_k2"});
  for (std::size_t i = 0; i < trials; ++i) {
    const Observable f = random_trig_polynomial(1, c.seed, i);
    const SeminormEstimate n1 = n_seminorm(rot, f, 1, H, N, start, PathPolicy::ExactOnly);
    const SeminormEstimate hk2 = hk_seminorm(rot, f, 2, H, N, start, PathPolicy::ExactOnly);
    const double diff = std::abs(n1.value - hk2.value);
    t.add({{"trial", num(i)},
           {"system", rot.describe()},
           {"observable", format_observable(f)},
           {"N", num(N)},
           {"H", num(H)},
           {"seed", num(c.seed)},
           {"n_seminorm_k1", num(n1.value)},
           {"hk_seminorm_k2", num(hk2.value)},
           {"lhs", num(diff)},
           {"estimate", num(n1.value)},
           {"reference", num(hk2.value)},
           {"tolerance", num(tol)}},
          status_of(diff <= tol));
  }
  return t.done();
}

struct Registered {
  ExperimentInfo info;
  std::function<ResultTable(const ExperimentConfig&)> run;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r{
      {{"seminorm-rotation-l4", "hk_seminorm k=2 on a rotation vs the closed-form l4 norm"}, seminorm_rotation_l4},
      {{"seminorm-weakmixing-zero", "hk k=2 and N_1 on a weakly mixing system vs |int f|"}, seminorm_weakmixing_zero},
      {{"vdc-property", "Van der Corput bound on seeded random +-1 sequences"}, vdc_property},
      {{"upbound0", "two-term average vs ||E(f|K)||_2 ||g||"}, upbound0},
      {{"upbound-k", "|RT average|^2 vs 4 N_{k+1}(f)^2, k in {1,2}"}, upbound_k},
      {{"ww-rt-bound", "mean squared grid sup of f g vs 4 |||f|||_3^2 over an N list"}, ww_rt_bound},
      {{"ww-transfer", "Wiener-Wintner sup and L2 return-times functional over an N list"}, ww_transfer},
      {{"rt-convergence-table", "3-term return-times averages and their successive differences"},
       rt_convergence_table},
      {{"l4l2-gap", "l2/l4 ratio for m unit Fourier coefficients"}, l4l2_gap},
      {{"nk-alias-check", "N_1 vs |||f|||_2 on random trig polynomials, exact path"}, nk_alias_check},
  };
  return r;
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> out;
    for (const auto& r : registry()) out.push_back(r.info);
    return out;
  }();
  return infos;
}

bool is_registered(const std::string& name) {
  const auto& r = registry();
  return std::any_of(r.begin(), r.end(), [&](const Registered& e) { return e.info.name == name; });
}

ResultTable run_experiment(const ExperimentConfig& config) {
  for (const auto& r : registry())
    if (r.info.name == config.experiment) return r.run(config);
  throw InvalidArgument("unknown experiment '" + config.experiment + "'");
}

}  // namespace ergolab::cli
