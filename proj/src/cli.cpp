#include "masstransport/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "masstransport/birkhoff.hpp"
#include "masstransport/errors.hpp"
#include "masstransport/process.hpp"
#include "masstransport/report.hpp"
#include "masstransport/spec_json.hpp"
#include "masstransport/transport.hpp"
#include "masstransport/verify.hpp"

namespace mtp::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  std::string text;
  bool pass = true;
};

bool csv(const RunConfig& c) { return c.format == "csv"; }

McOptions mc_options(const RunConfig& c, std::uint64_t default_trials) {
  McOptions o;
  o.seed = c.seed;
  o.trials = c.trials.value_or(default_trials);
  o.z = c.z;
  o.threads = c.threads;
  if (o.trials < 2) throw UsageError("--trials: Monte Carlo needs at least 2 trials");
  return o;
}

ExactOptions exact_options(const RunConfig& c) { return ExactOptions{c.horizon_cap, kDefaultAtomCap}; }

struct Modes {
  bool exact = false;
  bool mc = false;
};

Modes resolve_modes(const RunConfig& c, const Process& p) {
  if (c.mode.empty()) return p.exact_capable() ? Modes{true, false} : Modes{false, true};
  if (c.mode == "exact") return {true, false};
  if (c.mode == "mc") return {false, true};
  return {true, true};
}

void require_exact(const Process& p) {
  if (!p.exact_capable()) {
    throw UnsupportedProcess("--mode: exact mode needs a finite-support spec with exact payoffs");
  }
}

Index positive(std::optional<Index> v, Index fallback, const char* flag) {
  const Index out = v.value_or(fallback);
  if (out < 1) throw UsageError(std::string(flag) + ": must be positive");
  return out;
}

// ---------------------------------------------------------------- sample

Outcome cmd_sample(const RunConfig& c, const Process& p) {
  const Index lo = c.lo.value_or(0);
  const Index hi = c.hi.value_or(10);
  if (lo > 0 || hi < 0 || hi - lo < 1) throw UsageError("--lo/--hi: need lo <= 0 <= hi and hi - lo >= 1");
  const auto trials = c.trials.value_or(1);

  std::ostringstream os;
  json windows = json::array();
  if (csv(c)) os << "trial,component,k,x,s\n";
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto w = sample_window(p, lo, hi, c.seed, t);
    const auto component = sampled_component(p, c.seed, t);
    if (csv(c)) {
      for (Index k = lo; k <= hi; ++k) {
        os << t << ',' << component << ',' << k << ',' << (k > lo ? format_real(w.x(k)) : std::string()) << ','
           << format_real(w.s(k)) << '\n';
      }
    } else {
      windows.push_back({{"trial", t},
                         {"component", component},
                         {"lo", lo},
                         {"hi", hi},
                         {"x", std::vector<double>(w.increments().begin(), w.increments().end())},
                         {"s", std::vector<double>(w.sums().begin(), w.sums().end())}});
    }
  }
  if (!csv(c)) os << json{{"windows", std::move(windows)}}.dump(2) << '\n';
  return {os.str(), true};
}

// ------------------------------------------------------------- transport

Outcome cmd_transport(const RunConfig& c, const Process& p) {
  const Index lo = c.lo.value_or(-4);
  const Index hi = c.hi.value_or(4);
  if (lo > 0 || hi < 0 || hi - lo < 1) throw UsageError("--lo/--hi: need lo <= 0 <= hi and hi - lo >= 1");
  const auto trials = c.trials.value_or(1);

  std::ostringstream os;
  bool pass = true;
  json windows = json::array();
  if (csv(c)) os << "section,trial,sender,index,value\n";
  const auto row = [&](const char* section, std::uint64_t t, const std::string& sender, const std::string& index,
                       const std::string& value) {
    os << section << ',' << t << ',' << sender << ',' << index << ',' << value << '\n';
  };
  const auto verdict = [](bool ok) { return std::string(ok ? "pass" : "fail"); };

  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto w = sample_window(p, lo, hi, c.seed, t);
    json jw{{"trial", t}, {"lo", lo}, {"hi", hi}};
    json sums = json::array();
    for (Index k = lo; k <= hi; ++k) {
      if (csv(c)) row("sum", t, "", std::to_string(k), format_real(w.s(k)));
      sums.push_back(w.s(k));
    }
    jw["s"] = std::move(sums);

    json senders = json::array();
    for (Index n = lo; n < hi; ++n) {
      const auto rec = records_after(w, n);
      const auto mass = mass_row(w, n);
      const double sent = total_sent(w, n);
      const bool ok = std::abs(mass.total() - sent) <= kTolerance;
      pass = pass && ok;
      if (csv(c)) {
        for (Index m : rec.records) row("record", t, std::to_string(n), std::to_string(m), "");
        for (const auto& [m, v] : mass.entries) row("mass", t, std::to_string(n), std::to_string(m), format_real(v));
        row("total_sent", t, std::to_string(n), "", format_real(sent));
        row("check_row_sum", t, std::to_string(n), "", verdict(ok));
      }
      json masses = json::object();
      for (const auto& [m, v] : mass.entries) masses[std::to_string(m)] = v;
      senders.push_back({{"sender", n}, {"records", rec.records}, {"mass", masses}, {"total_sent", sent}, {"pass", ok}});
    }
    jw["senders"] = std::move(senders);

    if (lo <= -1) {
      const auto ladder = ladder_epochs_before_zero(w);
      const auto received = mass_received_at_zero(w);
      bool agree = true;
      for (Index m = lo; m <= -1; ++m) {
        const auto it = received.find(m);
        const double closed = it == received.end() ? 0.0 : it->second;
        agree = agree && std::abs(closed - mass_row(w, m).at(0)) <= kTolerance;
      }
      double received_sum = 0.0;
      for (const auto& [m, v] : received) received_sum += v;
      const double closed_total = total_received_at_zero(w);
      const bool total_ok = std::abs(received_sum - closed_total) <= kTolerance;
      pass = pass && agree && total_ok;
      if (csv(c)) {
        for (Index m : ladder.epochs) row("ladder", t, "", std::to_string(m), "");
        for (const auto& [m, v] : received) row("received", t, std::to_string(m), "0", format_real(v));
        row("received_total", t, "", "0", format_real(closed_total));
        row("check_received", t, "", "0", verdict(agree && total_ok));
      }
      json rec_json = json::object();
      for (const auto& [m, v] : received) rec_json[std::to_string(m)] = v;
      jw["ladder"] = ladder.epochs;
      jw["received"] = std::move(rec_json);
      jw["received_total"] = closed_total;
      jw["received_pass"] = agree && total_ok;
    }
    if (hi >= 1) {
      const auto tau = first_nonpositive(w);
      if (csv(c)) row("first_nonpositive", t, "", tau ? std::to_string(*tau) : std::string(), "");
      jw["first_nonpositive"] = tau ? json(*tau) : json(nullptr);
    }
    windows.push_back(std::move(jw));
  }
  if (!csv(c)) os << json{{"windows", std::move(windows)}, {"all_pass", pass}}.dump(2) << '\n';
  return {os.str(), pass};
}

// ------------------------------------------------------- verify-identity

Outcome cmd_identity(const RunConfig& c, const Process& p) {
  const auto modes = resolve_modes(c, p);
  const Index horizon = positive(c.horizon, 8, "--horizon");
  IdentityReport report;
  if (modes.exact) {
    require_exact(p);
    report = exact_identity_report(p, horizon, exact_options(c));
  }
  if (modes.mc) {
    auto mc = mc_identity(p, horizon, mc_options(c, 100000));
    for (auto& e : mc.entries) report.entries.push_back(std::move(e));
  }
  std::ostringstream os;
  if (csv(c)) {
    write_identity_csv(os, report);
  } else {
    os << identity_json(report).dump(2) << '\n';
  }
  return {os.str(), report.all_pass()};
}

// -------------------------------------------------------- verify-maximal

Outcome cmd_maximal(const RunConfig& c, const Process& p) {
  const auto modes = resolve_modes(c, p);
  std::ostringstream os;
  json rows = json::array();
  bool pass = true;
  if (csv(c)) os << "N,value,std_error,ci_lo,ci_hi,mode,pass\n";
  if (modes.exact) {
    require_exact(p);
    const Index horizon = positive(c.horizon, 8, "--horizon");
    for (Index n = 1; n <= horizon; ++n) {
      const auto v = exact_maximal_ergodic(p, n, exact_options(c));
      const bool ok = v <= 0;
      pass = pass && ok;
      if (csv(c)) os << n << ',' << to_string(v) << ",,,,exact," << (ok ? "true" : "false") << '\n';
      rows.push_back({{"N", n}, {"mode", "exact"}, {"value", to_string(v)}, {"pass", ok}});
    }
  }
  if (modes.mc) {
    const Index horizon = positive(c.horizon, 16, "--horizon");
    const auto opts = mc_options(c, 100000);
    for (Index n = 1; n <= horizon; ++n) {
      const auto e = mc_maximal_ergodic(p, n, opts);
      const bool ok = e.mean <= kSignSigmas * e.std_error;
      pass = pass && ok;
      if (csv(c)) {
        os << n << ',' << format_real(e.mean) << ',' << format_real(e.std_error) << ',' << format_real(e.ci_low)
           << ',' << format_real(e.ci_high) << ",mc," << (ok ? "true" : "false") << '\n';
      }
      rows.push_back({{"N", n}, {"mode", "mc"}, {"value", estimate_json(e)}, {"pass", ok}});
    }
  }
  if (!csv(c)) os << json{{"rows", std::move(rows)}, {"all_pass", pass}}.dump(2) << '\n';
  return {os.str(), pass};
}

// -------------------------------------------------------------- survival

Outcome cmd_survival(const RunConfig& c, const Process& p) {
  const auto modes = resolve_modes(c, p);
  std::ostringstream os;
  json rows = json::array();
  bool pass = true;
  const bool claim = p.mean() > 0.0;  // positivity is only asserted for positive-mean processes
  if (csv(c)) os << "N,estimate,std_error,ci_lo,ci_hi,tail_bound,mode,pass\n";
  if (modes.exact) {
    require_exact(p);
    const Index horizon = positive(c.horizon, 8, "--horizon");
    const auto v = exact_survival(p, horizon, exact_options(c));
    const bool ok = !claim || v > 0;
    pass = pass && ok;
    if (csv(c)) os << horizon << ',' << to_string(v) << ",,,,,exact," << (ok ? "true" : "false") << '\n';
    rows.push_back({{"N", horizon}, {"mode", "exact"}, {"estimate", to_string(v)}, {"pass", ok}});
  }
  if (modes.mc) {
    const Index horizon = positive(c.horizon, 2048, "--horizon");
    const auto e = mc_survival(p, horizon, mc_options(c, 100000));
    const auto bound = survival_tail_bound(p, horizon);
    const bool ok = !claim || e.mean - kSignSigmas * e.std_error > 0.0;
    pass = pass && ok;
    if (csv(c)) {
      os << horizon << ',' << format_real(e.mean) << ',' << format_real(e.std_error) << ','
         << format_real(e.ci_low) << ',' << format_real(e.ci_high) << ','
         << (bound ? format_real(*bound) : std::string()) << ",mc," << (ok ? "true" : "false") << '\n';
    }
    rows.push_back({{"N", horizon},
                    {"mode", "mc"},
                    {"estimate", estimate_json(e)},
                    {"tail_bound", bound ? json(*bound) : json(nullptr)},
                    {"pass", ok}});
  }
  if (!csv(c)) os << json{{"rows", std::move(rows)}, {"all_pass", pass}}.dump(2) << '\n';
  return {os.str(), pass};
}

// -------------------------------------------------------------- birkhoff

Outcome cmd_birkhoff(const RunConfig& c, const Process& p, std::ostream& err) {
  if (c.n_max < 1) throw UsageError("--n-max: must be positive");
  if (!(c.epsilon > 0.0)) throw UsageError("--epsilon: must be positive");
  const auto opts = mc_options(c, 10000);
  const auto report = trajectories(p, c.n_max, opts);
  const auto a_eps = estimate_a_epsilon(p, AEpsilonOptions{c.epsilon, c.n_max, c.cutoff, Tail::Lower}, opts);
  const double deviating = report.fraction_deviating(kBirkhoffTolerance);
  const bool pass = deviating <= kBirkhoffMaxDeviating && a_eps.mean <= kAEpsilonMax;

  std::ostringstream os;
  if (csv(c)) {
    write_trajectories_csv(os, report);
    err << "fraction deviating by more than " << format_real(kBirkhoffTolerance) << ": " << format_real(deviating)
        << "\nA_epsilon estimate (epsilon " << format_real(c.epsilon) << "): " << format_real(a_eps.mean)
        << " +/- " << format_real(a_eps.std_error) << '\n';
  } else {
    auto doc = trajectories_json(report);
    json means = json::array();
    for (const auto& m : conditional_mean(p).components) {
      means.push_back({{"component", m.id}, {"weight", to_string(m.weight)}, {"mean", m.mean}});
    }
    doc["conditional_mean"] = std::move(means);
    doc["summary"] = {{"tolerance", kBirkhoffTolerance},
                      {"fraction_deviating", deviating},
                      {"epsilon", c.epsilon},
                      {"cutoff", c.cutoff.value_or(default_cutoff(c.n_max))},
                      {"a_epsilon", estimate_json(a_eps)},
                      {"pass", pass}};
    os << doc.dump(2) << '\n';
  }
  return {os.str(), pass};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Mass-transport checks on stationary sequences", "masstransport"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", config.spec_path, "Process-spec JSON file")->required();
    sub->add_option("--seed", config.seed, "64-bit seed");
    sub->add_option("--trials", config.trials, "Number of trials");
    sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", config.out_path, "Output file (default: standard output)");
    sub->add_option("--threads", config.threads, "Thread cap; results do not depend on it");
    sub->add_option("--z", config.z, "Normal quantile for intervals")->check(CLI::PositiveNumber);
  };
  const auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", config.mode, "exact, mc or both")->check(CLI::IsMember({"exact", "mc", "both"}));
    sub->add_option("--horizon", config.horizon, "Largest n (or N) checked");
    sub->add_option("--horizon-cap", config.horizon_cap, "Largest horizon allowed in exact mode");
  };
  const auto add_window = [&](CLI::App* sub) {
    sub->add_option("--lo", config.lo, "Window start (<= 0)");
    sub->add_option("--hi", config.hi, "Window end (>= 0)");
  };

  auto* sample = app.add_subcommand("sample", "Dump sampled windows");
  add_common(sample);
  add_window(sample);
  auto* transport = app.add_subcommand("transport", "Dump records, ladder epochs and masses for sampled windows");
  add_common(transport);
  add_window(transport);
  auto* identity = app.add_subcommand("verify-identity", "Check E[M(0,n)] = E[M(-n,0)] for each n");
  add_common(identity);
  add_mode(identity);
  auto* maximal = app.add_subcommand("verify-maximal", "Check E[X_1; S_n <= 0 for some n <= N] <= 0");
  add_common(maximal);
  add_mode(maximal);
  auto* survival = app.add_subcommand("survival", "Estimate P(S_n > 0 for all n <= N)");
  add_common(survival);
  add_mode(survival);
  auto* birkhoff = app.add_subcommand("birkhoff", "Ergodic averages and the A_epsilon estimate");
  add_common(birkhoff);
  birkhoff->add_option("--n-max", config.n_max, "Trajectory length");
  birkhoff->add_option("--epsilon", config.epsilon, "Deviation threshold for A_epsilon");
  birkhoff->add_option("--cutoff", config.cutoff, "Smallest n tested for A_epsilon (default max(64, n_max/16))");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const auto spec = parse_spec(config.spec_path);
    const auto process = Process::make(spec);

    Outcome outcome;
    if (sample->parsed()) {
      outcome = cmd_sample(config, process);
    } else if (transport->parsed()) {
      outcome = cmd_transport(config, process);
    } else if (identity->parsed()) {
      outcome = cmd_identity(config, process);
    } else if (maximal->parsed()) {
      outcome = cmd_maximal(config, process);
    } else if (survival->parsed()) {
      outcome = cmd_survival(config, process);
    } else {
      outcome = cmd_birkhoff(config, process, err);
    }

    if (config.out_path.empty()) {
      out << outcome.text;
    } else {
      std::ofstream file(config.out_path, std::ios::binary);
      if (!file) throw UsageError("--out: cannot open '" + config.out_path + "'");
      file << outcome.text;
    }
    if (!outcome.pass) {
      err << "check failed\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const SpecParseError& e) {
    err << "spec error at " << e.what() << '\n';
  } catch (const InvalidSpec& e) {
    err << "invalid spec: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace mtp::cli
