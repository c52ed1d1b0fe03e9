// dcm: batch experiment runner for directed-configuration-model dynamics.
//
// Subcommands: theory, generate, simulate {meeting|coalescence|voter},
// collapsed {rt|lambda|exact-meeting}, forest, mixing, check.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcm/collapsed.hpp"
#include "dcm/degseq.hpp"
#include "dcm/dynamics.hpp"
#include "dcm/graph.hpp"
#include "dcm/rng.hpp"
#include "dcm/stationary.hpp"
#include "dcm/stats.hpp"
#include "dcm/theory.hpp"

#ifndef DCM_VERSION
#define DCM_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;

struct FamilySpec {
  std::string family = "regular";
  int d = 3;
  int a = 2;
  int b = 4;
  int n = 1000;
};

dcm::DegreeSequence build_family(const FamilySpec& f) {
  if (f.family == "regular") return dcm::make_regular(f.d, f.n);
  if (f.family == "alternate") return dcm::make_alternate(f.a, f.b, f.n);
  if (f.family == "eulerian") {
    if (f.n % 2 != 0) throw CLI::ValidationError("eulerian preset needs even n");
    std::vector<int> degrees(static_cast<std::size_t>(f.n), f.a);
    for (int v = f.n / 2; v < f.n; ++v) degrees[static_cast<std::size_t>(v)] = f.b;
    return dcm::make_eulerian(std::move(degrees));
  }
  if (f.family == "out-regular") {
    // Constant out-degree d; in-degrees alternate between a and b.
    if (f.n % 2 != 0 || f.a + f.b != 2 * f.d)
      throw CLI::ValidationError("out-regular needs even n and a + b = 2 d");
    std::vector<int> in(static_cast<std::size_t>(f.n), f.a);
    for (int v = f.n / 2; v < f.n; ++v) in[static_cast<std::size_t>(v)] = f.b;
    return dcm::make_out_regular(f.d, std::move(in));
  }
  if (f.family == "in-regular") {
    if (f.n % 2 != 0 || f.a + f.b != 2 * f.d)
      throw CLI::ValidationError("in-regular needs even n and a + b = 2 d");
    std::vector<int> out(static_cast<std::size_t>(f.n), f.a);
    for (int v = f.n / 2; v < f.n; ++v) out[static_cast<std::size_t>(v)] = f.b;
    return dcm::make_in_regular(std::move(out), f.d);
  }
  throw CLI::ValidationError("unknown family: " + f.family);
}

json family_json(const FamilySpec& f) {
  json j{{"family", f.family}, {"n", f.n}};
  if (f.family == "regular") j["d"] = f.d;
  else if (f.family == "alternate" || f.family == "eulerian") { j["a"] = f.a; j["b"] = f.b; }
  else { j["d"] = f.d; j["a"] = f.a; j["b"] = f.b; }
  return j;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DCM_SEED")) return std::strtoull(env, nullptr, 10);
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

long default_horizon(int n) {
  const double l = std::log(static_cast<double>(n));
  return static_cast<long>(std::floor(l * l * l * l * l));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

void add_family_flags(CLI::App* cmd, FamilySpec& fam) {
  cmd->add_option("--family", fam.family,
                  "regular | alternate | eulerian | out-regular | in-regular")
      ->capture_default_str();
  cmd->add_option("--d", fam.d, "degree for regular families")->capture_default_str();
  cmd->add_option("--a", fam.a, "first class degree")->capture_default_str();
  cmd->add_option("--b", fam.b, "second class degree")->capture_default_str();
  cmd->add_option("--n", fam.n, "number of vertices")->capture_default_str();
}

std::string theory_row(const std::string& label, const dcm::DegreeSequence& seq) {
  const dcm::DegreeStats stats = dcm::degree_stats(seq);
  const dcm::TheoryConstants tc = dcm::theory_constants(stats);
  std::ostringstream os;
  os.precision(10);
  os << label << ',' << seq.n() << ',' << stats.delta << ',' << stats.beta << ','
     << stats.rho << ',' << stats.gamma << ',' << stats.alpha << ',' << tc.p_frak << ','
     << tc.q_frak << ',' << tc.r_frak << ',' << tc.theta << '\n';
  return os.str();
}

int cmd_theory(const FamilySpec& fam, const std::string& preset, const std::string& out) {
  std::ostringstream csv;
  csv << "model,n,delta,beta,rho,gamma,alpha,p,q,r,theta\n";
  if (preset == "figure1") {
    const int n = 1000;
    const auto half = [n](int p1, int m1, int p2, int m2) {
      std::vector<int> outs(static_cast<std::size_t>(n), p1), ins(static_cast<std::size_t>(n), m1);
      for (int v = n / 2; v < n; ++v) {
        outs[static_cast<std::size_t>(v)] = p2;
        ins[static_cast<std::size_t>(v)] = m2;
      }
      return dcm::make_custom(std::move(outs), std::move(ins));
    };
    csv << theory_row("model1-regular", half(3, 3, 3, 3));
    csv << theory_row("model2-out-regular", half(3, 4, 3, 2));
    csv << theory_row("model3-in-regular", half(4, 3, 2, 3));
    csv << theory_row("model4-eulerian", half(2, 2, 4, 4));
    csv << theory_row("model5-alternate", half(2, 4, 4, 2));
  } else if (preset.empty()) {
    csv << theory_row(fam.family, build_family(fam));
  } else {
    throw CLI::ValidationError("unknown preset: " + preset);
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::filesystem::create_directories(out);
    write_file(std::filesystem::path(out) / "theory.csv", csv.str());
  }
  return 0;
}

int cmd_generate(const FamilySpec& fam, std::optional<std::uint64_t> seed_flag,
                 const std::string& mode, const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  const auto t0 = std::chrono::steady_clock::now();
  const dcm::DegreeSequence seq = build_family(fam);
  const dcm::ValidationMode vmode =
      mode == "relaxed" ? dcm::ValidationMode::kRelaxed : dcm::ValidationMode::kStrict;
  const dcm::ValidationReport report = dcm::validate(seq, vmode, 100.0);
  for (const auto& c : report.conditions)
    if (!c.pass)
      std::cerr << "warning: degree condition " << c.name << " fails: value " << c.value
                << " vs bound " << c.bound << " (vertex " << c.witness << ")\n";

  const dcm::SampledGraph sampled = dcm::sample_ergodic_dcm(seq, seed);
  const dcm::ErgodicityReport erg = dcm::ergodicity(sampled.graph);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::path dir(out.empty() ? "." : out);
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "edges.csv");
    dcm::write_edges_csv(os, sampled.graph);
  }
  {
    std::ofstream os(dir / "degseq.csv");
    dcm::write_degseq_csv(os, seq);
  }
  json manifest{{"command", "generate"},
                {"seed", seed},
                {"n", fam.n},
                {"family", family_json(fam)},
                {"params", {{"mode", mode}, {"retries", sampled.retries}}},
                {"trials", 1},
                {"censored_count", 0},
                {"ergodic", erg.is_ergodic},
                {"support_size", erg.support.size()},
                {"wall_seconds", wall},
                {"version", DCM_VERSION}};
  write_file(dir / "generate.manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << (dir / "edges.csv").string() << " (n=" << fam.n
            << ", retries=" << sampled.retries << ")\n";
  return 0;
}

std::string sample_csv(const dcm::StoppingTimeSample& s, double divisor) {
  std::ostringstream os;
  os.precision(12);
  os << "trial,value,censored\n";
  for (std::size_t i = 0; i < s.values.size(); ++i)
    os << i << ',' << s.values[i] / divisor << ',' << int(s.censored[i]) << '\n';
  return os.str();
}

int cmd_simulate(const std::string& dynamic, const FamilySpec& fam,
                 std::optional<std::uint64_t> seed_flag,
                 std::optional<std::uint64_t> quenched_flag, long trials, double u,
                 int workers, bool discrete, const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  std::uint64_t qseed_state = seed;
  const std::uint64_t quenched_seed =
      quenched_flag ? *quenched_flag : dcm::splitmix64(qseed_state);

  const auto t0 = std::chrono::steady_clock::now();
  const dcm::DegreeSequence seq = build_family(fam);
  const dcm::SampledGraph sampled = dcm::sample_ergodic_dcm(seq, quenched_seed);
  const dcm::StationaryDist dist = dcm::stationary(sampled.graph);
  const dcm::TheoryConstants tc = dcm::theory_constants(seq);

  dcm::SimOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.workers = workers;
  opt.time_mode = discrete ? dcm::TimeMode::kDiscrete : dcm::TimeMode::kContinuous;

  dcm::StoppingTimeSample sample;
  dcm::ReferenceDist ref;
  double divisor = 0.5 * tc.theta * fam.n;
  if (discrete) divisor *= 2.0;
  if (dynamic == "meeting") {
    sample = dcm::simulate_meeting(sampled.graph, dist, opt);
    ref.kind = dcm::ReferenceDist::Kind::kExp1;
  } else if (dynamic == "coalescence") {
    sample = dcm::simulate_coalescence(sampled.graph, opt);
    ref.kind = dcm::ReferenceDist::Kind::kKingmanSum;
  } else {
    sample = dcm::simulate_voter(sampled.graph, u, opt);
    ref.kind = dcm::ReferenceDist::Kind::kConsensusSum;
    ref.u = u;
  }

  std::vector<double> rescaled;
  rescaled.reserve(sample.values.size());
  for (std::size_t i = 0; i < sample.values.size(); ++i)
    if (!sample.censored[i]) rescaled.push_back(sample.values[i] / divisor);
  const double w1 = rescaled.empty() ? -1.0 : dcm::wasserstein1(rescaled, ref, seed ^ 0x9e3779b9ULL);
  const dcm::EmpiricalSummary summary =
      dcm::empirical_summary(sample.values, sample.censored, 40);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::path dir(out.empty() ? "." : out);
  std::filesystem::create_directories(dir);
  write_file(dir / (dynamic + ".csv"), sample_csv(sample, 1.0));
  write_file(dir / (dynamic + "_rescaled.csv"), sample_csv(sample, divisor));
  {
    std::vector<double> nocensor(rescaled);
    if (!nocensor.empty()) {
      std::ofstream os(dir / (dynamic + "_hist.csv"));
      dcm::write_histogram_csv(os, dcm::empirical_summary(nocensor, {}, 40));
    }
  }
  json manifest{{"command", "simulate " + dynamic},
                {"seed", seed},
                {"quenched_seed", quenched_seed},
                {"n", fam.n},
                {"family", family_json(fam)},
                {"params",
                 {{"u", u},
                  {"workers", workers},
                  {"time_mode", discrete ? "discrete" : "continuous"},
                  {"rescale_divisor", divisor},
                  {"theta", tc.theta},
                  {"retries", sampled.retries}}},
                {"trials", trials},
                {"censored_count", sample.censored_count()},
                {"mean", summary.mean},
                {"std_error", summary.std_error},
                {"rescaled_mean", summary.mean / divisor},
                {"w1_vs_reference", w1},
                {"wall_seconds", wall},
                {"version", DCM_VERSION}};
  if (dynamic == "voter") {
    long ones = 0;
    for (char c : sample.consensus_values) ones += c;
    manifest["params"]["consensus_one_fraction"] =
        static_cast<double>(ones) / static_cast<double>(trials);
  }
  write_file(dir / (dynamic + ".manifest.json"), manifest.dump(2) + "\n");
  std::cout << dynamic << ": mean " << summary.mean << " (SE " << summary.std_error
            << "), rescaled mean " << summary.mean / divisor << ", W1 " << w1 << "\n";
  return 0;
}

int cmd_collapsed(const std::string& what, const FamilySpec& fam,
                  std::optional<std::uint64_t> seed_flag, std::optional<long> T_flag) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  const dcm::DegreeSequence seq = build_family(fam);
  const dcm::SampledGraph sampled = dcm::sample_ergodic_dcm(seq, seed);
  const dcm::StationaryDist dist = dcm::stationary(sampled.graph);
  const dcm::TheoryConstants tc = dcm::theory_constants(seq);
  const long T = T_flag.value_or(default_horizon(fam.n));

  std::cout.precision(10);
  if (what == "rt") {
    const dcm::CollapsedChain chain = dcm::build_collapsed(sampled.graph, dist);
    const dcm::RtResult rt = dcm::r_t(chain, T);
    std::cout << "n,T,rt,r_frak,rel_error\n"
              << fam.n << ',' << T << ',' << rt.value << ',' << tc.r_frak << ','
              << std::abs(rt.value - tc.r_frak) / tc.r_frak << "\n";
  } else if (what == "lambda") {
    const dcm::CollapsedChain chain = dcm::build_collapsed(sampled.graph, dist);
    const dcm::FvtlReport rep = dcm::fvtl_lambda(chain, dist, T);
    std::cout << "n,T,lambda,sup_geometric_error,t_max\n"
              << fam.n << ',' << T << ',' << rep.lambda << ',' << rep.sup_error << ','
              << rep.t_max << "\n";
  } else {  // exact-meeting
    const dcm::MeetingExpectation e = dcm::exact_meeting_expectation(sampled.graph, dist);
    std::cout << "n,discrete,continuous,half_theta_n\n"
              << fam.n << ',' << e.discrete << ',' << e.continuous << ','
              << 0.5 * tc.theta * fam.n << "\n";
  }
  return 0;
}

int cmd_forest(const FamilySpec& fam, std::optional<std::uint64_t> seed_flag, long T,
               long trials, int workers, const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  const auto t0 = std::chrono::steady_clock::now();
  const dcm::DegreeSequence seq = build_family(fam);
  const dcm::DegreeStats stats = dcm::degree_stats(seq);
  const dcm::ForestRunStats f = dcm::simulate_forest(seq, nullptr, T, trials, seed, workers);
  const double predicted = 1.0 + dcm::phi_fn(stats.rho, f.q_in);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream csv;
  csv.precision(12);
  csv << "time,mass,se,law\n";
  for (long t = 2; t <= T && t < static_cast<long>(f.first_return_mass.size()); t += 2)
    csv << t << ',' << f.first_return_mass[static_cast<std::size_t>(t)] << ','
        << f.first_return_se[static_cast<std::size_t>(t)] << ','
        << dcm::return_law(t / 2, stats.rho, f.q_in) << '\n';

  std::filesystem::path dir(out.empty() ? "." : out);
  std::filesystem::create_directories(dir);
  write_file(dir / "forest.csv", csv.str());
  json manifest{{"command", "forest"},
                {"seed", seed},
                {"n", fam.n},
                {"family", family_json(fam)},
                {"params", {{"T", T}, {"q_in", f.q_in}, {"rho", stats.rho}}},
                {"trials", trials},
                {"censored_count", 0},
                {"reset_count_mean", f.reset_count_mean},
                {"reset_count_se", f.reset_count_se},
                {"predicted_reset_mean", predicted},
                {"no_return_mass", f.no_return_mass},
                {"wall_seconds", wall},
                {"version", DCM_VERSION}};
  write_file(dir / "forest.manifest.json", manifest.dump(2) + "\n");
  std::cout << "resets " << f.reset_count_mean << " +- " << f.reset_count_se
            << " (predicted " << predicted << ")\n";
  return 0;
}

int cmd_mixing(const FamilySpec& fam, std::optional<std::uint64_t> seed_flag, int starts,
               const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  const dcm::DegreeSequence seq = build_family(fam);
  const dcm::SampledGraph sampled = dcm::sample_ergodic_dcm(seq, seed);
  const dcm::StationaryDist dist = dcm::stationary(sampled.graph);
  const std::vector<double> epsilons{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0};
  dcm::TvStarts tv_starts;
  tv_starts.all = starts <= 0;
  tv_starts.sample_k = starts;
  tv_starts.seed = seed ^ 0x5bf03635ULL;
  const dcm::MixingProfile profile = dcm::tv_profile(sampled.graph, dist, epsilons, tv_starts);

  std::ostringstream csv;
  csv.precision(10);
  csv << "epsilon,time,tv\n";
  for (std::size_t i = 0; i < epsilons.size(); ++i)
    csv << epsilons[i] << ',' << profile.times[i] << ',' << profile.tv_values[i] << '\n';
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::filesystem::create_directories(out);
    write_file(std::filesystem::path(out) / "mixing.csv", csv.str());
  }
  std::cout << "t_ent " << profile.t_ent << " (entropy rate " << profile.entropy_rate << ")\n";
  return 0;
}

struct Verdict {
  std::string name;
  bool pass;
  json detail;
};

int report_verdicts(const std::vector<Verdict>& verdicts) {
  json arr = json::array();
  bool all = true;
  for (const auto& v : verdicts) {
    arr.push_back({{"check", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    all = all && v.pass;
  }
  std::cout << arr.dump(2) << "\n" << (all ? "ALL CHECKS PASSED" : "CHECK FAILURES") << "\n";
  return all ? 0 : 1;
}

dcm::Digraph make_k3() {
  dcm::Digraph g;
  g.seq = dcm::make_regular(2, 3);
  g.tail_offset = {0, 2, 4, 6};
  g.destination = {1, 2, 0, 2, 0, 1};
  g.matching = {0, 2, 1, 4, 3, 5};
  return g;
}

int cmd_check(const std::string& suite, int n, long trials, std::optional<std::uint64_t> seed_flag,
              int workers) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  std::vector<Verdict> verdicts;

  if (suite == "exact") {
    dcm::Rng rng(seed);
    int instances = 0;
    double worst_cond = 0.0, worst_identity = 0.0;
    for (int i = 0; instances < 20 && i < 400; ++i) {
      const int nn = 3 + static_cast<int>(rng.below(6));
      std::vector<int> out(static_cast<std::size_t>(nn));
      for (auto& d : out) d = 2 + static_cast<int>(rng.below(3));
      dcm::DegreeSequence seq;
      try {
        seq = dcm::make_eulerian(out);
      } catch (const std::exception&) {
        continue;
      }
      const dcm::SampledGraph s = dcm::sample_ergodic_dcm(seq, seed + static_cast<std::uint64_t>(i));
      const dcm::StationaryDist dist = dcm::stationary(s.graph);
      const dcm::CollapsedChain chain = dcm::build_collapsed(s.graph, dist);
      const auto stat = dcm::stationary_collapsed(chain, dist);
      worst_cond = std::max({worst_cond, stat.max_offdiag_deviation, stat.diagonal_deviation});
      const double lhs = dcm::exact_collapsed_hitting_expectation(chain, dist);
      const double rhs = dcm::exact_meeting_expectation(s.graph, dist).discrete;
      worst_identity = std::max(worst_identity, std::abs(lhs - rhs));
      ++instances;
    }
    verdicts.push_back({"collapsed-stationary-conditions", worst_cond <= 1e-10,
                        {{"max_deviation", worst_cond}, {"instances", instances}}});
    verdicts.push_back({"meeting-identity", worst_identity <= 1e-8,
                        {{"max_abs_error", worst_identity}}});

    const dcm::Digraph k3 = make_k3();
    const dcm::StationaryDist k3_dist = dcm::stationary(k3);
    const double k3_cont = dcm::exact_meeting_expectation(k3, k3_dist).continuous;
    verdicts.push_back({"k3-exact-meeting", std::abs(k3_cont - 2.0 / 3.0) <= 1e-12,
                        {{"value", k3_cont}}});

    double worst_catalan = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double rho = 0.5 * i / 50.0;
      double sum = 0.0;
      for (long t = 1; t <= 4000; ++t) sum += dcm::return_law(t, rho, 1.0);
      worst_catalan = std::max(worst_catalan, std::abs(sum - dcm::epsilon_fn(rho)));
    }
    verdicts.push_back({"catalan-identity", worst_catalan <= 1e-12,
                        {{"max_abs_error", worst_catalan}}});
  } else if (suite == "mc") {
    FamilySpec fam;
    fam.family = "regular";
    fam.d = 3;
    fam.n = n;
    const dcm::DegreeSequence seq = build_family(fam);
    const dcm::SampledGraph s = dcm::sample_ergodic_dcm(seq, seed);
    const dcm::StationaryDist dist = dcm::stationary(s.graph);
    const dcm::TheoryConstants tc = dcm::theory_constants(seq);
    dcm::SimOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.workers = workers;
    const dcm::StoppingTimeSample meet = dcm::simulate_meeting(s.graph, dist, opt);
    const double divisor = 0.5 * tc.theta * n;
    const double ratio = meet.mean() / divisor;
    verdicts.push_back({"meeting-mean-ratio", ratio > 0.9 && ratio < 1.1,
                        {{"ratio", ratio}, {"n", n}, {"trials", trials}}});
    std::vector<double> rescaled;
    for (std::size_t i = 0; i < meet.values.size(); ++i)
      if (!meet.censored[i]) rescaled.push_back(meet.values[i] / divisor);
    dcm::ReferenceDist exp1;
    const double w1 = dcm::wasserstein1(rescaled, exp1, seed ^ 0xabcdULL);
    verdicts.push_back({"meeting-w1-exp1", w1 <= 0.1, {{"w1", w1}}});

    opt.trials = std::max<long>(trials / 5, 500);
    const dcm::StoppingTimeSample coal = dcm::simulate_coalescence(s.graph, opt);
    const double cratio = coal.mean() / meet.mean();
    verdicts.push_back({"coalescence-meeting-ratio", cratio > 1.8 && cratio < 2.2,
                        {{"ratio", cratio}, {"trials", opt.trials}}});
  } else if (suite == "forest") {
    const dcm::DegreeSequence seq = dcm::make_regular(3, std::max(n, 10));
    const dcm::DegreeStats stats = dcm::degree_stats(seq);
    const dcm::ForestRunStats f =
        dcm::simulate_forest(seq, nullptr, 500, std::max<long>(trials, 100000), seed, workers);
    bool mass_ok = true;
    json detail = json::array();
    for (long t = 1; t <= 3; ++t) {
      const double law = dcm::return_law(t, stats.rho, f.q_in);
      const double mass = f.first_return_mass[static_cast<std::size_t>(2 * t)];
      const double se = f.first_return_se[static_cast<std::size_t>(2 * t)];
      mass_ok = mass_ok && std::abs(mass - law) <= 3.0 * se + 1e-12;
      detail.push_back({{"time", 2 * t}, {"mass", mass}, {"law", law}, {"se", se}});
    }
    verdicts.push_back({"forest-first-return-law", mass_ok, detail});
    const double predicted = 1.0 + dcm::phi_fn(stats.rho, f.q_in);
    const bool reset_ok =
        std::abs(f.reset_count_mean - predicted) <= 3.0 * f.reset_count_se;
    verdicts.push_back({"forest-reset-mean", reset_ok,
                        {{"mean", f.reset_count_mean},
                         {"predicted", predicted},
                         {"se", f.reset_count_se}}});
  } else {
    throw CLI::ValidationError("unknown suite: " + suite);
  }
  return report_verdicts(verdicts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed configuration model dynamics toolkit"};
  app.set_version_flag("--version", DCM_VERSION);
  app.set_config("--config", "", "flat key=value config file; flags override");
  app.require_subcommand(1);

  FamilySpec fam;
  std::optional<std::uint64_t> seed, quenched_seed;
  std::optional<long> T_flag;
  long trials = 10000;
  double u = 0.5;
  int workers = 1;
  int starts = 100;
  bool discrete = false;
  std::string out, mode = "strict", preset, suite = "exact";

  auto* theory = app.add_subcommand("theory", "degree functionals and theta");
  add_family_flags(theory, fam);
  theory->add_option("--preset", preset, "figure1: the five reference models at n=1000");
  theory->add_option("--out", out, "output directory (default: stdout)");

  auto* generate = app.add_subcommand("generate", "sample one ergodic graph");
  add_family_flags(generate, fam);
  generate->add_option("--seed", seed);
  generate->add_option("--mode", mode, "strict | relaxed degree validation")
      ->capture_default_str();
  generate->add_option("--out", out);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo stopping times");
  simulate->require_subcommand(1);
  for (const char* name : {"meeting", "coalescence", "voter"}) {
    auto* sub = simulate->add_subcommand(name);
    add_family_flags(sub, fam);
    sub->add_option("--seed", seed);
    sub->add_option("--quenched-seed", quenched_seed, "pins the graph across dynamics");
    sub->add_option("--trials", trials)->capture_default_str();
    sub->add_option("--u", u, "initial density of opinion 1 (voter)")->capture_default_str();
    sub->add_option("--workers", workers)->capture_default_str();
    sub->add_flag("--discrete", discrete, "count jump-chain steps instead of time");
    sub->add_option("--out", out);
  }

  auto* collapsed = app.add_subcommand("collapsed", "exact collapsed-chain quantities");
  collapsed->require_subcommand(1);
  for (const char* name : {"rt", "lambda", "exact-meeting"}) {
    auto* sub = collapsed->add_subcommand(name);
    add_family_flags(sub, fam);
    sub->add_option("--seed", seed);
    sub->add_option("--T", T_flag, "horizon (default floor(log^5 n))");
  }

  auto* forest = app.add_subcommand("forest", "annealed first-return process");
  add_family_flags(forest, fam);
  forest->add_option("--seed", seed);
  forest->add_option("--T", T_flag);
  forest->add_option("--trials", trials)->capture_default_str();
  forest->add_option("--workers", workers)->capture_default_str();
  forest->add_option("--out", out);

  auto* mixing = app.add_subcommand("mixing", "TV profile around the entropic time");
  add_family_flags(mixing, fam);
  mixing->add_option("--seed", seed);
  mixing->add_option("--starts", starts, "sampled starts; 0 = all (small n)")
      ->capture_default_str();
  mixing->add_option("--out", out);

  auto* check = app.add_subcommand("check", "verification suites");
  check->add_option("--suite", suite, "exact | mc | forest")->capture_default_str();
  check->add_option("--n", fam.n)->capture_default_str();
  check->add_option("--trials", trials)->capture_default_str();
  check->add_option("--seed", seed);
  check->add_option("--workers", workers)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (theory->parsed()) return cmd_theory(fam, preset, out);
    if (generate->parsed()) return cmd_generate(fam, seed, mode, out);
    if (simulate->parsed()) {
      const std::string dynamic = simulate->get_subcommands().front()->get_name();
      return cmd_simulate(dynamic, fam, seed, quenched_seed, trials, u, workers, discrete, out);
    }
    if (collapsed->parsed()) {
      const std::string what = collapsed->get_subcommands().front()->get_name();
      return cmd_collapsed(what, fam, seed, T_flag);
    }
    if (forest->parsed())
      return cmd_forest(fam, seed, T_flag.value_or(500), trials, workers, out);
    if (mixing->parsed()) return cmd_mixing(fam, seed, starts, out);
    if (check->parsed()) return cmd_check(suite, fam.n, trials, seed, workers);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
