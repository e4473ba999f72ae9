#pragma once

// Seeded Monte Carlo experiments over the uniform samplers. Every sample i at
// size n draws from its own generator seeded by (master, stream, n, i), and
// results are merged in sample order, so reports do not depend on threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "analysis.hpp"
#include "counting.hpp"
#include "oracle.hpp"
#include "sampler.hpp"
#include "serialize.hpp"
#include "silhouette.hpp"

namespace modgroup {

inline constexpr const char* kVersion = "modgroup 1.0.0";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Experiment { SilhouetteSize, SmallAbCycles, Parabolicity, Malnormality, Connectivity };

inline const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::SilhouetteSize: return "silhouette-size";
    case Experiment::SmallAbCycles: return "small-ab-cycles";
    case Experiment::Parabolicity: return "parabolicity";
    case Experiment::Malnormality: return "malnormality";
    default: return "connectivity";
  }
}

inline Experiment parse_experiment(const std::string& s) {
  for (auto e : {Experiment::SilhouetteSize, Experiment::SmallAbCycles, Experiment::Parabolicity,
                 Experiment::Malnormality, Experiment::Connectivity}) {
    if (s == to_string(e)) return e;
  }
  throw ConfigError("unknown experiment: " + s);
}

// Which random model a row was drawn from. Pair samplers draw raw (possibly
// disconnected) structure pairs and are used by the connectivity experiment.
enum class SamplerKind { Silhouette, Cyclic, Rooted, SilhouettePairs, CyclicPairs };

inline const char* to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::Silhouette: return "silhouette";
    case SamplerKind::Cyclic: return "cyclic";
    case SamplerKind::Rooted: return "rooted";
    case SamplerKind::SilhouettePairs: return "silhouette-pairs";
    default: return "cyclic-pairs";
  }
}

inline SamplerKind parse_sampler(const std::string& s) {
  for (auto k : {SamplerKind::Silhouette, SamplerKind::Cyclic, SamplerKind::Rooted, SamplerKind::SilhouettePairs,
                 SamplerKind::CyclicPairs}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError("unknown sampler: " + s);
}

// Positive rational p/q with q > 0.
struct Ratio {
  long long num = 1;
  long long den = 1;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

inline std::string to_string(const Ratio& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

// Accepts "p/q", an integer, or a decimal literal.
inline Ratio parse_ratio(const std::string& text) {
  auto fail = [&] { return ConfigError("not a rational number: " + text); };
  auto to_ll = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 15) throw fail();
    return std::stoll(s);
  };
  Ratio r;
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    r.num = to_ll(text.substr(0, slash));
    r.den = to_ll(text.substr(slash + 1));
  } else if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    const long long whole = dot == 0 ? 0 : to_ll(text.substr(0, dot));
    r.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) r.den *= 10;
    r.num = whole * r.den + (frac.empty() ? 0 : to_ll(frac));
  } else {
    r.num = to_ll(text);
  }
  if (r.den == 0) throw fail();
  const long long g = std::gcd(r.num, r.den);
  if (g > 1) r.num /= g, r.den /= g;
  return r;
}

struct ExperimentConfig {
  Experiment experiment = Experiment::SilhouetteSize;
  std::vector<int> sizes;
  std::uint64_t samples_per_size = 1000;
  Ratio alpha{1, 7};
  Ratio mu{1, 1};
  std::uint64_t master_seed = 0;
  int threads = 1;
  std::vector<SamplerKind> samplers;  // empty: the experiment's defaults
};

// Throws ConfigError when an invariant fails.
inline void check_config(const ExperimentConfig& c) {
  if (c.sizes.empty()) throw ConfigError("sizes must be non-empty");
  if (!std::is_sorted(c.sizes.begin(), c.sizes.end())) throw ConfigError("sizes must be sorted ascending");
  if (c.sizes.front() < 1) throw ConfigError("sizes must be positive");
  if (c.samples_per_size < 100) throw ConfigError("samples-per-size must be at least 100");
  if (c.alpha.num <= 0 || 6 * c.alpha.num >= c.alpha.den) throw ConfigError("alpha-exponent must lie in (0, 1/6)");
  if (c.mu.num <= 0) throw ConfigError("mu must be positive");
  if (c.threads < 1) throw ConfigError("threads must be at least 1");
}

inline ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  auto ratio = [](const Json& v) {
    if (v.is_string()) return parse_ratio(v.get<std::string>());
    if (v.is_number_integer() || v.is_number_unsigned()) return Ratio{v.get<long long>(), 1};
    if (v.is_number_float()) return parse_ratio(v.dump());
    throw ConfigError("rational fields take \"p/q\" strings or numbers");
  };
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "experiment") c.experiment = parse_experiment(v.get<std::string>());
      else if (key == "sizes") c.sizes = v.get<std::vector<int>>();
      else if (key == "samples-per-size") c.samples_per_size = v.get<std::uint64_t>();
      else if (key == "alpha-exponent") c.alpha = ratio(v);
      else if (key == "mu") c.mu = ratio(v);
      else if (key == "master-seed") c.master_seed = v.get<std::uint64_t>();
      else if (key == "threads") c.threads = v.get<int>();
      else if (key == "samplers") {
        c.samplers.clear();
        for (const auto& s : v) c.samplers.push_back(parse_sampler(s.get<std::string>()));
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
    if (!j.contains("experiment")) throw ConfigError("config needs an experiment");
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  check_config(c);
  return c;
}

inline Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = to_string(c.experiment);
  j["sizes"] = c.sizes;
  j["samples-per-size"] = c.samples_per_size;
  j["alpha-exponent"] = to_string(c.alpha);
  j["mu"] = to_string(c.mu);
  j["master-seed"] = c.master_seed;
  if (!c.samplers.empty()) {
    Json s = Json::array();
    for (auto k : c.samplers) s.push_back(to_string(k));
    j["samplers"] = s;
  }
  return j;
}

// Replaces the master seed by MODGROUP_SEED when that variable holds an integer.
inline bool apply_seed_override(ExperimentConfig& c) {
  const char* s = std::getenv("MODGROUP_SEED");
  if (s == nullptr || *s == '\0') return false;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 0);
  if (*end != '\0') throw ConfigError(std::string("MODGROUP_SEED is not an integer: ") + s);
  c.master_seed = v;
  return true;
}

// floor(n^(p/q)), corrected in exact integer arithmetic.
inline long long floor_power(long long n, const Ratio& r) {
  if (n <= 1) return n;
  auto k = static_cast<long long>(std::floor(std::exp(r.value() * std::log(static_cast<double>(n)))));
  const BigInt target = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(r.num));
  auto le = [&](long long x) { return boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(r.den)) <= target; };
  while (k > 0 && !le(k)) --k;
  while (le(k + 1)) ++k;
  return k;
}

// One report line: a statistic of one sampler at one size. `basis` says
// where its acceptance bound comes from: "asserted" (a proved rate),
// "calibrated" (a harness constant), "exact" (must hold on every sample) or
// "info".
struct ReportRow {
  std::string sampler;
  int n = 0;
  std::uint64_t samples = 0;
  std::string statistic;
  double estimate = 0;
  double stderr_ = 0;
  std::string basis = "info";
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  bool approximate = false;  // some sampler used floating-point thresholds

  const ReportRow* find(const std::string& sampler, int n, const std::string& statistic) const {
    for (const auto& r : rows) {
      if (r.sampler == sampler && r.n == n && r.statistic == statistic) return &r;
    }
    return nullptr;
  }
};

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string to_csv(const ExperimentReport& rep) {
  std::ostringstream os;
  os << "# " << kVersion << "\n";
  os << "# config " << config_to_json(rep.config).dump() << "\n";
  if (rep.approximate) os << "# approximate sampler thresholds above size " << CountTables::kExactLimit << "\n";
  os << "sampler,n,samples,statistic,estimate,stderr,basis\n";
  for (const auto& r : rep.rows) {
    os << r.sampler << ',' << r.n << ',' << r.samples << ',' << r.statistic << ',' << format_number(r.estimate) << ','
       << format_number(r.stderr_) << ',' << r.basis << "\n";
  }
  return os.str();
}

// The headline frequency of each experiment.
inline const char* headline_statistic(Experiment e) {
  switch (e) {
    case Experiment::SilhouetteSize: return "tail_freq";
    case Experiment::SmallAbCycles: return "no_small_ab_cycle_freq";
    case Experiment::Parabolicity: return "non_parabolic_freq";
    case Experiment::Malnormality: return "almost_malnormal_freq";
    default: return "disconnected_freq";
  }
}

// (n, frequency, stderr) triples of the headline statistic, one block per sampler.
inline std::string plot_data(const ExperimentReport& rep) {
  std::ostringstream os;
  os << "sampler,n,frequency,stderr\n";
  const std::string stat = headline_statistic(rep.config.experiment);
  for (const auto& r : rep.rows) {
    if (r.statistic == stat) os << r.sampler << ',' << r.n << ',' << format_number(r.estimate) << ',' << format_number(r.stderr_) << "\n";
  }
  return os.str();
}

namespace detail {

// Calls f(i) for i < count on `threads` workers and returns results in index order.
template <typename T, typename F>
std::vector<T> run_indexed(std::uint64_t count, int threads, F&& f) {
  std::vector<T> out(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

inline Rng sample_rng(const ExperimentConfig& c, SamplerKind k, int n, std::uint64_t i) {
  const std::uint64_t stream = derive_seed(c.master_seed, static_cast<std::uint64_t>(c.experiment),
                                           static_cast<std::uint64_t>(k));
  return make_rng(stream, static_cast<std::uint64_t>(n), i);
}

inline ModularGraph draw(SamplerKind k, int n, Rng& rng) {
  switch (k) {
    case SamplerKind::Silhouette: return sample_silhouette(n, rng);
    case SamplerKind::Cyclic: return sample_cyclically_reduced(n, rng);
    case SamplerKind::Rooted: return sample_reduced_rooted(n, rng);
    case SamplerKind::SilhouettePairs: return draw_silhouette_pair(n, rng);
    default: return draw_cyclic_pair(n, rng, *count_tables(n));
  }
}

inline bool applicable(SamplerKind k, int n) {
  switch (k) {
    case SamplerKind::Silhouette:
    case SamplerKind::SilhouettePairs: return n % 6 == 0;
    case SamplerKind::Rooted: return n >= 2;
    default: return true;
  }
}

inline std::vector<SamplerKind> samplers_for(const ExperimentConfig& c) {
  if (!c.samplers.empty()) return c.samplers;
  switch (c.experiment) {
    case Experiment::SilhouetteSize: return {SamplerKind::Cyclic, SamplerKind::Rooted};
    case Experiment::SmallAbCycles: return {SamplerKind::Silhouette, SamplerKind::Cyclic, SamplerKind::Rooted};
    case Experiment::Parabolicity:
    case Experiment::Malnormality: return {SamplerKind::Rooted, SamplerKind::Cyclic};
    default: return {SamplerKind::SilhouettePairs, SamplerKind::CyclicPairs};
  }
}

// Mean and standard error of the mean.
inline std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double var = xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0;
  return {m, std::sqrt(var / static_cast<double>(xs.size()))};
}

inline std::pair<double, double> frequency(std::uint64_t hits, std::uint64_t total) {
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  return {p, std::sqrt(p * (1 - p) / static_cast<double>(total))};
}

// Nearest-rank quantile of a sorted sample.
inline double quantile(const std::vector<int>& sorted, double q) {
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::min(sorted.size() - 1, rank == 0 ? 0 : rank - 1)];
}

}  // namespace detail

// Per n and sampler: silhouette size, deficit quantiles and the tail
// frequency P(size < n - (2 + mu) n^(2/3)).
inline ExperimentReport run_silhouette_size(const ExperimentConfig& cfg) {
  check_config(cfg);
  ExperimentReport rep{cfg, {}, false};
  for (SamplerKind k : detail::samplers_for(cfg)) {
    for (int n : cfg.sizes) {
      if (!detail::applicable(k, n)) continue;
      rep.approximate |= n > CountTables::kExactLimit && k != SamplerKind::Silhouette;
      const auto sizes = detail::run_indexed<int>(cfg.samples_per_size, cfg.threads, [&](std::uint64_t i) {
        Rng rng = detail::sample_rng(cfg, k, n, i);
        return silhouette(detail::draw(k, n, rng)).n();
      });
      const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
      const double threshold = n - (2 + cfg.mu.value()) * n23;
      std::vector<double> size_d(sizes.begin(), sizes.end());
      std::vector<double> deficit_d;
      std::vector<int> deficits;
      std::uint64_t tail = 0;
      for (int s : sizes) {
        deficits.push_back(n - s);
        deficit_d.push_back(n - s);
        tail += s < threshold ? 1 : 0;
      }
      std::sort(deficits.begin(), deficits.end());
      const auto name = to_string(k);
      const auto N = cfg.samples_per_size;
      const auto [ms, ses] = detail::mean_stderr(size_d);
      const auto [md, sed] = detail::mean_stderr(deficit_d);
      const auto [tf, tse] = detail::frequency(tail, N);
      rep.rows.push_back({name, n, N, "mean_size", ms, ses, "info"});
      rep.rows.push_back({name, n, N, "mean_deficit", md, sed, "info"});
      rep.rows.push_back({name, n, N, "deficit_q50", detail::quantile(deficits, 0.5), 0, "info"});
      rep.rows.push_back({name, n, N, "deficit_q90", detail::quantile(deficits, 0.9), 0, "info"});
      rep.rows.push_back({name, n, N, "deficit_q99", detail::quantile(deficits, 0.99), 0, "info"});
      rep.rows.push_back({name, n, N, "deficit_max", static_cast<double>(deficits.back()), 0, "info"});
      rep.rows.push_back({name, n, N, "deficit_over_2n23", md / (2 * n23), sed / (2 * n23), "calibrated"});
      rep.rows.push_back({name, n, N, "tail_threshold", threshold, 0, "info"});
      rep.rows.push_back({name, n, N, "tail_freq", tf, tse, "asserted"});
    }
  }
  return rep;
}

// Per n and sampler: frequency of graphs with no ab-cycle of size in
// [2, floor(n^alpha)], its simple-cycle variant, and non-parabolicity.
inline ExperimentReport run_small_ab_cycles(const ExperimentConfig& cfg) {
  check_config(cfg);
  ExperimentReport rep{cfg, {}, false};
  struct Sample {
    bool no_small = false;
    bool no_simple_small = false;
    bool non_parabolic = false;
  };
  for (SamplerKind k : detail::samplers_for(cfg)) {
    for (int n : cfg.sizes) {
      if (!detail::applicable(k, n)) continue;
      rep.approximate |= n > CountTables::kExactLimit && k != SamplerKind::Silhouette;
      const long long window = floor_power(n, cfg.alpha);
      auto in_window = [window](const std::vector<int>& spec) {
        return std::any_of(spec.begin(), spec.end(), [window](int m) { return m >= 2 && m <= window; });
      };
      const auto samples = detail::run_indexed<Sample>(cfg.samples_per_size, cfg.threads, [&](std::uint64_t i) {
        Rng rng = detail::sample_rng(cfg, k, n, i);
        const ModularGraph g = detail::draw(k, n, rng);
        Sample s;
        const auto spec = ab_cycle_spectrum(g);
        s.no_small = !in_window(spec);
        s.non_parabolic = spec.empty();
        if (k == SamplerKind::Silhouette) s.no_simple_small = !in_window(simple_ab_cycle_spectrum(g));
        return s;
      });
      std::uint64_t no_small = 0, no_simple = 0, non_parabolic = 0;
      for (const auto& s : samples) {
        no_small += s.no_small;
        no_simple += s.no_simple_small;
        non_parabolic += s.non_parabolic;
      }
      const auto name = to_string(k);
      const auto N = cfg.samples_per_size;
      rep.rows.push_back({name, n, N, "window_max", static_cast<double>(window), 0, "info"});
      const auto [f, se] = detail::frequency(no_small, N);
      rep.rows.push_back({name, n, N, "no_small_ab_cycle_freq", f, se, "asserted"});
      if (k == SamplerKind::Silhouette) {
        const auto [fs, ses] = detail::frequency(no_simple, N);
        rep.rows.push_back({name, n, N, "no_simple_small_ab_cycle_freq", fs, ses, "asserted"});
      }
      const auto [fp, sep] = detail::frequency(non_parabolic, N);
      rep.rows.push_back({name, n, N, "non_parabolic_freq", fp, sep, "info"});
    }
  }
  return rep;
}

// Per n and sampler: non-parabolic or almost-malnormal frequency, with the
// exact cross-checks of the malnormality analyzer.
inline ExperimentReport run_property_frequencies(const ExperimentConfig& cfg) {
  check_config(cfg);
  if (cfg.experiment != Experiment::Parabolicity && cfg.experiment != Experiment::Malnormality) {
    throw ConfigError("run_property_frequencies needs experiment parabolicity or malnormality");
  }
  const bool malnormality = cfg.experiment == Experiment::Malnormality;
  ExperimentReport rep{cfg, {}, false};
  struct Sample {
    bool hit = false;
    bool finite_index = false;
    bool finite_index_malnormal = false;
    bool cycle_conflict = false;  // ab-cycle of size >= 2 yet classified almost malnormal
  };
  for (SamplerKind k : detail::samplers_for(cfg)) {
    for (int n : cfg.sizes) {
      if (!detail::applicable(k, n)) continue;
      rep.approximate |= n > CountTables::kExactLimit && k != SamplerKind::Silhouette;
      const auto samples = detail::run_indexed<Sample>(cfg.samples_per_size, cfg.threads, [&](std::uint64_t i) {
        Rng rng = detail::sample_rng(cfg, k, n, i);
        ModularGraph g = detail::draw(k, n, rng);
        g.clear_root();
        Sample s;
        if (!malnormality) {
          s.hit = !is_parabolic(g);
          return s;
        }
        const bool am = is_almost_malnormal(g);
        s.hit = am;
        s.finite_index = n >= 2 && finite_index(g).has_value();
        s.finite_index_malnormal = s.finite_index && am;
        const auto spec = ab_cycle_spectrum(g);
        s.cycle_conflict = am && std::any_of(spec.begin(), spec.end(), [](int m) { return m >= 2; });
        return s;
      });
      std::uint64_t hits = 0, fi = 0, fi_bad = 0, conflicts = 0;
      for (const auto& s : samples) {
        hits += s.hit;
        fi += s.finite_index;
        fi_bad += s.finite_index_malnormal;
        conflicts += s.cycle_conflict;
      }
      const auto name = to_string(k);
      const auto N = cfg.samples_per_size;
      const auto [f, se] = detail::frequency(hits, N);
      rep.rows.push_back({name, n, N, headline_statistic(cfg.experiment), f, se, "asserted"});
      if (malnormality) {
        rep.rows.push_back({name, n, N, "finite_index_samples", static_cast<double>(fi), 0, "info"});
        rep.rows.push_back({name, n, N, "finite_index_almost_malnormal", static_cast<double>(fi_bad), 0, "exact"});
        rep.rows.push_back({name, n, N, "ab_cycle_malnormal_conflicts", static_cast<double>(conflicts), 0, "exact"});
      }
    }
  }
  return rep;
}

// Per n: fraction of disconnected raw structure pairs. For silhouette pairs
// the reference value is 5/(6n).
inline ExperimentReport run_connectivity(const ExperimentConfig& cfg) {
  check_config(cfg);
  ExperimentReport rep{cfg, {}, false};
  for (SamplerKind k : detail::samplers_for(cfg)) {
    if (k != SamplerKind::SilhouettePairs && k != SamplerKind::CyclicPairs) {
      throw ConfigError("connectivity uses the silhouette-pairs and cyclic-pairs samplers");
    }
    for (int n : cfg.sizes) {
      if (!detail::applicable(k, n)) continue;
      rep.approximate |= n > CountTables::kExactLimit && k == SamplerKind::CyclicPairs;
      const auto connected = detail::run_indexed<char>(cfg.samples_per_size, cfg.threads, [&](std::uint64_t i) {
        Rng rng = detail::sample_rng(cfg, k, n, i);
        return static_cast<char>(pair_connected(detail::draw(k, n, rng)));
      });
      const auto bad = static_cast<std::uint64_t>(std::count(connected.begin(), connected.end(), 0));
      const auto name = to_string(k);
      const auto N = cfg.samples_per_size;
      const auto [f, se] = detail::frequency(bad, N);
      rep.rows.push_back({name, n, N, "disconnected_freq", f, se, "asserted"});
      if (k == SamplerKind::SilhouettePairs) {
        const double expected = 5.0 / (6.0 * n);
        const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(N));
        rep.rows.push_back({name, n, N, "expected_5_over_6n", expected, 0, "asserted"});
        rep.rows.push_back({name, n, N, "z_score", (f - expected) / sigma, 0, "info"});
      }
    }
  }
  return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::SilhouetteSize: return run_silhouette_size(cfg);
    case Experiment::SmallAbCycles: return run_small_ab_cycles(cfg);
    case Experiment::Parabolicity:
    case Experiment::Malnormality: return run_property_frequencies(cfg);
    default: return run_connectivity(cfg);
  }
}

// Chi-square goodness of fit of a sampler against the exhaustive list of
// graphs it should hit uniformly.
struct ChiSquareResult {
  std::uint64_t cells = 0;
  std::uint64_t samples = 0;
  std::uint64_t unknown = 0;  // samples outside the enumerated support
  double statistic = 0;
  double p_value = 0;
};

inline ChiSquareResult sampler_chi_square(EnumMode mode, int n, std::uint64_t samples, std::uint64_t seed,
                                          int threads = 1) {
  if (n > 7) throw OracleError("chi-square check supports n <= 7");
  auto code = [](const ModularGraph& g) {
    const auto r = g.root();
    return small_code(g) << 4 | static_cast<std::uint64_t>(r ? *r + 1 : 0);
  };
  std::unordered_map<std::uint64_t, std::size_t> index;
  enumerate_graphs(n, mode, [&](const ModularGraph& g) { index.emplace(code(g), index.size()); });
  if (index.size() < 2) throw OracleError("chi-square check needs at least two graphs");
  const SamplerKind k = mode == EnumMode::CyclicallyReduced ? SamplerKind::Cyclic
                        : mode == EnumMode::ReducedRooted  ? SamplerKind::Rooted
                                                           : SamplerKind::Silhouette;
  const auto cells = detail::run_indexed<std::int64_t>(samples, threads, [&](std::uint64_t i) -> std::int64_t {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(n), i);
    const auto it = index.find(code(detail::draw(k, n, rng)));
    return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
  });
  std::vector<std::uint64_t> counts(index.size(), 0);
  ChiSquareResult res;
  res.cells = index.size();
  res.samples = samples;
  for (auto c : cells) {
    if (c < 0) ++res.unknown;
    else ++counts[static_cast<std::size_t>(c)];
  }
  const double expected = static_cast<double>(samples) / static_cast<double>(counts.size());
  for (auto c : counts) res.statistic += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  res.p_value = res.unknown != 0 ? 0.0 : boost::math::cdf(boost::math::complement(dist, res.statistic));
  return res;
}

}  // namespace modgroup
