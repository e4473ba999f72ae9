#pragma once

// Command-line front end. dispatch() never calls exit(), so tests can drive
// it with in-memory streams. Exit codes: 0 success, 1 domain error, 2 usage
// error, 3 verification failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modgroup/modgroup.hpp"

namespace modgroup::cli {

enum Exit : int { kOk = 0, kDomain = 1, kUsage = 2, kVerify = 3 };

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

// JSON unless the text starts like a DOT digraph.
inline ModularGraph read_graph(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 7, "digraph") == 0) return from_dot(text);
  return decode(text);
}

inline std::vector<Word> parse_generators(const std::string& list) {
  std::vector<Word> gens;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    gens.push_back(parse_word(b == std::string::npos ? std::string() : item.substr(b, e - b + 1)));
  }
  return gens;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline Json move_json(const MoveRecord& m) {
  Json j;
  j["move"] = to_string(m.kind);
  j["pivots"] = m.pivots;
  j["delta"] = {m.delta.dn, m.delta.dk2, m.delta.dk3, m.delta.dl2, m.delta.dl3};
  return j;
}

inline Mode parse_mode(const std::string& s) {
  if (s == "reduced") return Mode::Reduced;
  if (s == "cyclic") return Mode::CyclicallyReduced;
  return Mode::Silhouette;
}

// oracle --verify counts: brute-force structure counts against the
// recurrences, and graph enumeration against two independent counts.
inline bool oracle_counts(int n_max, int threads, std::ostream& out) {
  check_enumeration_size(n_max, EnumMode::CyclicallyReduced);
  out << "quantity,n,enumerated,expected,match\n";
  bool ok = true;
  const auto a = involution_counts(n_max);
  const auto b = b_structure_counts(n_max);
  const auto c = connected_pair_counts(n_max);
  auto row = [&](const char* q, int n, const BigInt& got, const BigInt& want) {
    const bool m = got == want;
    ok &= m;
    out << q << ',' << n << ',' << got << ',' << want << ',' << (m ? "yes" : "no") << "\n";
  };
  for (int n = 1; n <= n_max; ++n) {
    row("involutions", n, detail::map_entries(n, true, false, false).size(), a[n]);
    row("b_structures", n, detail::map_entries(n, false, false, false).size(), b[n]);
    std::uint64_t total = 0;
    std::vector<std::uint64_t> part(static_cast<std::size_t>(threads), 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        EnumOptions o;
        o.worker = w;
        o.workers = threads;
        part[static_cast<std::size_t>(w)] = count_graphs(n, EnumMode::CyclicallyReduced, o);
      });
    }
    for (auto& t : pool) t.join();
    for (auto p : part) total += p;
    row("cyclic_graphs", n, total, c[n]);
    row("connected_pairs", n, count_connected_pairs(n, threads), c[n]);
  }
  return ok;
}

inline bool oracle_preimages(int n, std::ostream& out) {
  out << "kind,tau,targets,targets_hit,min_pairs,max_pairs,expected_pairs,stage_moves,formula,match\n";
  bool ok = true;
  for (int m = 2; m <= n; ++m) {
    for (const auto& r : verify_preimages(m)) {
      ok &= r.ok;
      out << to_string(r.kind) << ',' << csv_field(to_string(r.tau)) << ',' << r.targets << ',' << r.targets_hit << ','
          << r.min_pairs << ',' << r.max_pairs << ',' << expected_move_pairs(r.kind, r.tau) << ','
          << stage_move_count(r.kind, r.tau) << ',' << to_string(r.formula) << ',' << (r.ok ? "yes" : "no") << "\n";
    }
  }
  return ok;
}

inline bool oracle_uniformity(int n, bool rooted, int threads, std::ostream& out, std::ostream& err) {
  out << "n,variant,group,s,target,fiber,equal\n";
  bool ok = true;
  for (int m = 1; m <= n; ++m) {
    const auto rep = verify_uniformity(m, rooted, threads);
    if (!rep.ok) {
      ok = false;
      err << "n=" << m << ": " << rep.failure << "\n";
    }
    for (const auto& t : rep.tables) {
      for (const auto& [target, fiber] : t.fibers) {
        out << m << ',' << t.variant << ',' << csv_field(t.group) << ',' << t.s << ',' << csv_field(target) << ','
            << fiber << ',' << (t.equal ? "yes" : "no") << "\n";
      }
    }
  }
  return ok;
}

inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stallings graphs of subgroups of PSL2(Z)", "modgroup"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for oracle and experiments")->check(CLI::PositiveNumber);

  std::string gens, format = "json", in_path, out_path, mode_name = "reduced", verify, config_path, to = "json";
  std::string sample_mode;
  bool with_trace = false, rooted_fibers = true;
  int n = 0, count = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string plot_path;

  auto* st = app.add_subcommand("stallings", "Stallings graph of a finitely generated subgroup");
  st->add_option("--gens", gens, "Comma-separated generator words over a, b, B")->required();
  st->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot"}));
  st->add_option("--out", out_path, "Output file");

  auto* si = app.add_subcommand("silhouette", "Silhouette of a reduced graph");
  si->add_option("--in", in_path, "Input graph (JSON or DOT)")->required();
  si->add_flag("--trace", with_trace, "Emit the move sequence as JSON lines first");
  si->add_option("--out", out_path, "Output file");

  auto* ch = app.add_subcommand("check", "Validate a graph");
  ch->add_option("--in", in_path, "Input graph (JSON or DOT)")->required();
  ch->add_option("--mode", mode_name, "Invariant to check")->check(CLI::IsMember({"reduced", "cyclic", "silhouette"}));

  auto* sa = app.add_subcommand("sample", "Uniform random graphs");
  sa->add_option("--mode", sample_mode, "Random model")->required()->check(CLI::IsMember({"cyc", "rooted", "silh"}));
  sa->add_option("--n", n, "Size")->required()->check(CLI::PositiveNumber);
  sa->add_option("--count", count, "Number of graphs")->check(CLI::PositiveNumber);
  sa->add_option("--seed", seed, "Seed")->each([&](const std::string&) { seed_given = true; });
  sa->add_option("--out", out_path, "Directory receiving one JSON file per graph");

  auto* orc = app.add_subcommand("oracle", "Exhaustive verification");
  orc->add_option("--verify", verify, "What to verify")->required()->check(CLI::IsMember({"counts", "preimages", "uniformity"}));
  orc->add_option("--n", n, "Largest size")->required()->check(CLI::PositiveNumber);
  orc->add_flag("!--no-rooted", rooted_fibers, "Skip the rooted uniformity tables");
  orc->add_option("--out", out_path, "CSV output file");

  auto* ex = app.add_subcommand("experiment", "Monte Carlo experiment from a JSON config");
  ex->add_option("--config", config_path, "Config file")->required();
  ex->add_option("--out", out_path, "CSV report file");
  auto* plot = ex->add_option("--emit-plot-data", plot_path, "Write (n, frequency, stderr) triples; stdout without a path")
                   ->expected(0, 1);

  auto* cv = app.add_subcommand("convert", "Translate between JSON and DOT");
  cv->add_option("--in", in_path, "Input graph (JSON or DOT)")->required();
  cv->add_option("--to", to, "Target format")->check(CLI::IsMember({"json", "dot"}));
  cv->add_option("--out", out_path, "Output file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  // Sends `text` to --out when given, else to stdout.
  auto emit = [&](const std::string& text) {
    if (out_path.empty()) out << text;
    else write_file(out_path, text);
  };

  try {
    if (*st) {
      const ModularGraph g = stallings_from_generators(parse_generators(gens));
      emit(format == "dot" ? to_dot(g) : encode(g) + "\n");
      return kOk;
    }
    if (*si) {
      const ModularGraph g = read_graph(in_path);
      std::vector<MoveRecord> trace;
      const ModularGraph s = silhouette(g, with_trace ? &trace : nullptr);
      std::string text;
      for (const auto& m : trace) text += move_json(m).dump() + "\n";
      Json j;
      j["silhouette"] = to_json(s);
      text += j.dump() + "\n";
      emit(text);
      return kOk;
    }
    if (*ch) {
      const ModularGraph g = read_graph(in_path);
      const auto v = validate(g, parse_mode(mode_name));
      Json j;
      j["valid"] = v.ok;
      j["mode"] = mode_name;
      if (!v.ok) {
        j["message"] = v.message;
        if (v.vertex != kNone) j["vertex"] = g.label(v.vertex);
      } else {
        j["type"] = to_string(combinatorial_type(g));
      }
      out << j.dump() << "\n";
      if (!v.ok) err << "invalid graph: " << v.message << "\n";
      return v.ok ? kOk : kDomain;
    }
    if (*sa) {
      if (!seed_given) {
        if (const char* s = std::getenv("MODGROUP_SEED"); s != nullptr && *s != '\0') {
          char* end = nullptr;
          seed = std::strtoull(s, &end, 0);
          if (*end != '\0') throw DomainError(std::string("MODGROUP_SEED is not an integer: ") + s);
        }
      }
      if (sample_mode == "silh" && n % 6 != 0) throw DomainError("silhouette sampling needs n divisible by 6");
      if (sample_mode == "rooted" && n < 2) throw DomainError("rooted sampling needs n >= 2");
      Json all = Json::array();
      if (!out_path.empty()) std::filesystem::create_directories(out_path);
      for (int i = 0; i < count; ++i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
        const ModularGraph g = sample_mode == "cyc"      ? sample_cyclically_reduced(n, rng)
                               : sample_mode == "rooted" ? sample_reduced_rooted(n, rng)
                                                         : sample_silhouette(n, rng);
        if (out_path.empty()) {
          all.push_back(to_json(g));
        } else {
          std::ostringstream name;
          name << "graph_" << std::setw(6) << std::setfill('0') << i << ".json";
          write_file((std::filesystem::path(out_path) / name.str()).string(), encode(g) + "\n");
        }
      }
      if (out_path.empty()) out << all.dump() << "\n";
      return kOk;
    }
    if (*orc) {
      std::ostringstream csv;
      bool ok = false;
      if (verify == "counts") ok = oracle_counts(n, threads, csv);
      else if (verify == "preimages") ok = oracle_preimages(n, csv);
      else ok = oracle_uniformity(n, rooted_fibers, threads, csv, err);
      emit(csv.str());
      if (!ok) err << "verification failed\n";
      return ok ? kOk : kVerify;
    }
    if (*ex) {
      Json j;
      try {
        j = Json::parse(read_file(config_path));
      } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not JSON: ") + e.what());
      }
      ExperimentConfig cfg = config_from_json(j);
      if (app.get_option("--threads")->count() > 0) cfg.threads = threads;
      apply_seed_override(cfg);
      const auto t0 = std::chrono::steady_clock::now();
      const ExperimentReport rep = run_experiment(cfg);
      err << "wall-clock " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
      const bool plot_to_stdout = plot->count() > 0 && plot_path.empty();
      if (plot_to_stdout && out_path.empty()) throw DomainError("--emit-plot-data without a path needs --out for the report");
      emit(to_csv(rep));
      if (plot->count() > 0) {
        if (plot_to_stdout) out << plot_data(rep);
        else write_file(plot_path, plot_data(rep));
      }
      return kOk;
    }
    if (*cv) {
      const ModularGraph g = read_graph(in_path);
      emit(to == "dot" ? to_dot(g) : encode(g) + "\n");
      return kOk;
    }
  } catch (const OracleError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace modgroup::cli
