#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quasireg/assemble2qr.hpp"
#include "quasireg/epsqr.hpp"
#include "quasireg/errors.hpp"
#include "quasireg/io.hpp"
#include "quasireg/lowdisc.hpp"
#include "quasireg/pinwheel.hpp"
#include "quasireg/seqcore.hpp"

using namespace quasireg;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitContract = 3;

using Clock = std::chrono::steady_clock;

struct Common {
  std::string dist_path;
  std::int64_t n = 1000;
  std::string stats_path;
  bool check = false;
};

std::uint64_t effective_seed(std::uint64_t seed) {
  if (const char* env = std::getenv("QUASIREG_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw PreconditionError(std::string("QUASIREG_SEED is not an unsigned integer: ") + env);
    }
  }
  return seed;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Per-symbol report shared by every command that looks at a sequence.
Json sequence_report(const StreamAnalyzer& a, const NamedDist& d) {
  Json qr = Json::object(), dens = Json::object(), err = Json::object();
  const auto density = a.density();
  for (Symbol s = 0; s < d.names.size(); ++s) {
    const auto& g = a.stats().symbols[s];
    qr[d.names[s]] = g.count >= 2 ? qr_of(g).str() : "undefined";
    dens[d.names[s]] = density[s].str();
    err[d.names[s]] = (density[s] - d.dist[s]).abs().to_double();
  }
  Json r;
  r["length"] = a.length();
  r["observed_qr"] = qr;
  r["qr_max"] = a.qr().str();
  r["density"] = dens;
  r["density_error"] = err;
  r["discrepancy_max"] = a.discrepancy().str();
  Json stale = Json::array();
  for (Symbol s : a.stale_symbols()) stale.push_back(d.names[s]);
  r["stale_symbols"] = stale;
  return r;
}

void emit_stats(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::fputs(text.c_str(), stderr);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write stats to '" + path + "'");
  out << text;
}

void check_n(std::int64_t n) {
  if (n < 1) throw PreconditionError("--n must be at least 1");
}

// Streams n symbols to stdout while collecting statistics.
std::unique_ptr<StreamAnalyzer> run_stream(SymbolStream& s, const NamedDist& d, std::int64_t n) {
  auto a = std::make_unique<StreamAnalyzer>(d.names.size(), d.dist);
  SequenceWriter w(stdout, d.names);
  for (std::int64_t i = 0; i < n; ++i) {
    const Symbol x = s.next();
    w.put(x);
    a->push(x);
  }
  w.end();
  a->finish();
  return a;
}

Json base_json(const std::string& command, Json params) {
  Json j;
  j["command"] = command;
  j["params"] = std::move(params);
  return j;
}

int cmd_analyze(const std::string& dist_path, const std::string& seq_path, const std::string& stats_path) {
  const auto t0 = Clock::now();
  const NamedDist d = read_dist_file(dist_path);
  const Sequence seq = read_sequence_file(seq_path, d.names);
  StreamAnalyzer a(d.names.size(), d.dist);
  for (Symbol s : seq) a.push(s);
  a.finish();
  Json j = base_json("analyze", {{"dist", dist_path}, {"seq", seq_path}});
  const Json r = sequence_report(a, d);
  for (const auto& [k, v] : r.items()) j[k] = v;
  j["runtime_ms"] = ms_since(t0);
  const std::string text = j.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!stats_path.empty()) emit_stats(j, stats_path);
  return 0;
}

int finish_gen(Json j, const StreamAnalyzer& a, const NamedDist& d, Clock::time_point t0,
               const Common& c, const std::optional<std::string>& breach) {
  const Json r = sequence_report(a, d);
  for (const auto& [k, v] : r.items()) j[k] = v;
  j["runtime_ms"] = ms_since(t0);
  if (c.check) j["check"] = breach ? *breach : "ok";
  emit_stats(j, c.stats_path);
  if (breach) {
    std::fprintf(stderr, "check failed: %s\n", breach->c_str());
    return kExitContract;
  }
  return 0;
}

int cmd_lowdisc(const Common& c) {
  check_n(c.n);
  const auto t0 = Clock::now();
  const NamedDist d = read_dist_file(c.dist_path);
  LowDiscState s(d.dist);
  auto a = run_stream(s, d, c.n);
  std::optional<std::string> breach;
  if (c.check && a->discrepancy() > Ratio(1)) breach = "prefix discrepancy " + a->discrepancy().str() + " exceeds 1";
  return finish_gen(base_json("gen-lowdisc", {{"dist", c.dist_path}, {"n", c.n}}), *a, d, t0, c, breach);
}

int cmd_2qr(const Common& c) {
  check_n(c.n);
  const auto t0 = Clock::now();
  const NamedDist d = read_dist_file(c.dist_path);
  TwoQrStream s(d.dist);
  auto a = run_stream(s, d, c.n);
  Json j = base_json("gen-2qr", {{"dist", c.dist_path}, {"n", c.n}});
  const auto& info = s.info();
  if (!info.frame.n.empty()) {
    Json frame;
    frame["M"] = info.frame.M;
    Json ns = Json::object();
    for (Symbol x = 0; x < d.names.size(); ++x) ns[d.names[x]] = info.frame.n[x];
    frame["n"] = ns;
    j["frame"] = frame;
    Json terms = Json::array();
    for (const auto& t : info.decomposition.terms) {
      Json term;
      term["alpha"] = t.alpha.str();
      Json probs = Json::array();
      for (const auto& p : t.pba.dist.probs()) probs.push_back(p.str());
      term["pba"] = probs;
      term["irr"] = t.pba.irr == kNoSymbol ? Json(nullptr) : Json(d.names[t.pba.irr]);
      terms.push_back(term);
    }
    j["decomposition"] = terms;
    j["connectors"] = info.connector_count;
    j["longest_connector_windows"] = info.longest_connector;
    j["rounds"] = info.rounds;
  }
  std::optional<std::string> breach;
  if (c.check && a->qr() > Ratio(2)) breach = "observed QR " + a->qr().str() + " exceeds 2";
  return finish_gen(std::move(j), *a, d, t0, c, breach);
}

int cmd_epsqr(const Common& c, const std::string& eps_text, const std::string& profile_text, std::uint64_t seed) {
  check_n(c.n);
  const auto t0 = Clock::now();
  const NamedDist d = read_dist_file(c.dist_path);
  const Ratio eps = Ratio::parse(eps_text);
  const Profile profile = parse_profile(profile_text);
  seed = effective_seed(seed);
  const EpsQrKnobs knobs = profile == Profile::Desk ? desk_knobs(d.dist, eps, seed) : theory_knobs(eps, seed);
  EpsQrStream s(d.dist, knobs);
  auto a = run_stream(s, d, c.n);
  Json j = base_json("gen-epsqr", {{"dist", c.dist_path}, {"n", c.n}, {"eps", eps.str()},
                                   {"profile", profile_text}, {"seed", seed}});
  Json buckets = Json::array();
  for (const auto& b : s.partition().buckets) {
    Json bj;
    bj["index"] = b.index;
    bj["size"] = b.members.size();
    bj["mass"] = b.mass.str();
    bj["big"] = b.big;
    buckets.push_back(bj);
  }
  j["buckets"] = buckets;
  j["small_mass"] = s.partition().mass_small.str();
  Json blocks = Json::array();
  for (const auto& bc : s.block_colorings()) {
    const auto& st = bc->stats();
    Json bj;
    bj["symbols"] = bc->dist().size();
    bj["M"] = bc->params().M;
    bj["grid_terms"] = st.terms;
    bj["phase_attempts"] = st.attempts;
    bj["radius"] = st.radius;
    bj["grid_error"] = st.grid_error;
    bj["delta_match"] = bc->params().delta_match.str();
    bj["delta_used"] = st.delta_used.str();
    bj["delta_enlarged"] = st.enlarged;
    blocks.push_back(bj);
  }
  j["block_colorings"] = blocks;
  std::optional<std::string> breach;
  if (c.check && a->qr() > Ratio(1) + eps) breach = "observed QR " + a->qr().str() + " exceeds 1+eps";
  return finish_gen(std::move(j), *a, d, t0, c, breach);
}

std::vector<std::int64_t> parse_periods(const std::string& text) {
  std::vector<std::int64_t> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw PreconditionError("--v expects comma-separated integers, got '" + text + "'");
    }
  }
  return v;
}

Sequence read_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  Sequence s;
  std::string tok;
  while (in >> tok) {
    try {
      s.push_back(static_cast<Symbol>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw PreconditionError("schedule entries must be task numbers, got '" + tok + "'");
    }
  }
  return s;
}

int cmd_pin_check(const std::string& vtext, const std::string& path, bool periodic) {
  const PinwheelInstance inst(parse_periods(vtext));
  const Sequence s = read_schedule(path);
  if (auto bad = verify_schedule(inst, s, periodic)) {
    std::printf("VIOLATION task %zu window %lld\n", bad->task, static_cast<long long>(bad->window_start));
    return kExitContract;
  }
  std::printf("OK\n");
  return 0;
}

int cmd_pin_solve(const std::string& vtext, std::uint64_t cap) {
  const PinwheelInstance inst(parse_periods(vtext));
  const SolveResult r = solve_exact(inst, cap);
  if (!r.schedulable) {
    std::printf("UNSCHEDULABLE\n");
    return 0;
  }
  std::string line;
  for (std::size_t i = 0; i < r.word.size(); ++i) {
    if (i) line += ' ';
    line += std::to_string(r.word[i]);
  }
  std::printf("%s\n", line.c_str());
  return 0;
}

int cmd_pin_gen(const std::string& vtext, const std::string& eps_text, std::int64_t n, std::uint64_t seed,
                std::int64_t min_period, const std::string& stats_path) {
  check_n(n);
  const auto t0 = Clock::now();
  const PinwheelInstance inst(parse_periods(vtext));
  DenseOptions opt;
  opt.eps = Ratio::parse(eps_text);
  opt.seed = effective_seed(seed);
  opt.min_period = min_period;
  opt.verify_horizon = n;
  auto s = generate_dense(inst, opt);
  std::vector<std::string> names{"0"};
  for (std::size_t k = 1; k <= inst.size(); ++k) names.push_back(std::to_string(k));
  SequenceWriter w(stdout, names);
  for (std::int64_t i = 0; i < n; ++i) w.put(s->next());
  w.end();
  Json j = base_json("pinwheel gen", {{"v", vtext}, {"eps", opt.eps.str()}, {"n", n}, {"seed", opt.seed}});
  j["density"] = inst.density().str();
  j["margin"] = s->eps_prime().str();
  j["warmup_trimmed"] = s->trimmed();
  j["verified_steps"] = n;
  j["runtime_ms"] = ms_since(t0);
  emit_stats(j, stats_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-regular sequence generators and checkers"};
  app.require_subcommand(1);

  Common c;
  std::string seq_path, eps_text = "1/2", profile = "desk", vtext, schedule_path;
  std::uint64_t seed = 0, cap = 10'000'000;
  std::int64_t min_period = 16;
  bool periodic = false;

  auto* analyze = app.add_subcommand("analyze", "Report gaps, QR, density and discrepancy of a sequence");
  analyze->add_option("--dist", c.dist_path, "Distribution file (JSON or CSV)")->required();
  analyze->add_option("--seq", seq_path, "Sequence file")->required();
  analyze->add_option("--stats", c.stats_path, "Also write the report here");

  auto add_gen = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--dist", c.dist_path, "Distribution file (JSON or CSV)")->required();
    sub->add_option("--n", c.n, "Number of symbols to emit");
    sub->add_option("--stats", c.stats_path, "Stats JSON path (default: stderr)");
    sub->add_flag("--check", c.check, "Verify the output contract, exit 3 on a breach");
    return sub;
  };
  auto* lowdisc = add_gen("gen-lowdisc", "Low-discrepancy sequence");
  auto* twoqr = add_gen("gen-2qr", "Sequence with QR at most 2");
  auto* epsqr = add_gen("gen-epsqr", "Sequence with QR close to 1 for small probabilities");
  epsqr->add_option("--eps", eps_text, "Target slack, QR <= 1+eps");
  epsqr->add_option("--profile", profile, "desk or theory")->check(CLI::IsMember({"desk", "theory"}));
  epsqr->add_option("--seed", seed, "Seed (QUASIREG_SEED overrides)");

  auto* pin = app.add_subcommand("pinwheel", "Pinwheel scheduling tools");
  pin->require_subcommand(1);
  auto* pcheck = pin->add_subcommand("check", "Verify a schedule");
  pcheck->add_option("--v", vtext, "Periods, comma separated")->required();
  pcheck->add_option("--schedule", schedule_path, "Whitespace-separated task numbers, 0 for idle")->required();
  pcheck->add_flag("--periodic", periodic, "Treat the file as one period of an infinite word");
  auto* psolve = pin->add_subcommand("solve", "Exact search for a periodic schedule");
  psolve->add_option("--v", vtext, "Periods, comma separated")->required();
  psolve->add_option("--cap", cap, "Largest state space explored");
  auto* pgen = pin->add_subcommand("gen", "Dense schedule from an eps-QR stream");
  pgen->add_option("--v", vtext, "Periods, comma separated")->required();
  pgen->add_option("--eps", eps_text, "Margin, requires d(v)(1+eps) < 1");
  pgen->add_option("--n", c.n, "Steps to emit");
  pgen->add_option("--seed", seed, "Seed (QUASIREG_SEED overrides)");
  pgen->add_option("--min-period", min_period, "Smallest period accepted");
  pgen->add_option("--stats", c.stats_path, "Stats JSON path (default: stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*analyze) return cmd_analyze(c.dist_path, seq_path, c.stats_path);
    if (*lowdisc) return cmd_lowdisc(c);
    if (*twoqr) return cmd_2qr(c);
    if (*epsqr) return cmd_epsqr(c, eps_text, profile, seed);
    if (*pcheck) return cmd_pin_check(vtext, schedule_path, periodic);
    if (*psolve) return cmd_pin_solve(vtext, cap);
    if (*pgen) return cmd_pin_gen(vtext, eps_text, c.n, seed, min_period, c.stats_path);
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPrecondition;
  } catch (const std::overflow_error& e) {
    std::fprintf(stderr, "error: %s (input exceeds the exact 64-bit range)\n", e.what());
    return kExitPrecondition;
  } catch (const SearchExhausted& e) {
    std::fprintf(stderr, "contract failure: %s\n", e.what());
    return kExitContract;
  } catch (const ContractError& e) {
    std::fprintf(stderr, "contract failure: %s\n", e.what());
    return kExitContract;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitContract;
  }
  return kExitParse;
}
