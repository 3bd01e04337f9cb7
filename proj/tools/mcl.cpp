// Copyright 2026 The mcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mcl: command-line front end. Exit codes: 0 success, 1 usage,
// 2 precondition, 3 capacity or unwritable output.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mcl/acceptance.hpp"
#include "mcl/characters.hpp"
#include "mcl/correlations.hpp"
#include "mcl/counterexample.hpp"
#include "mcl/distance.hpp"
#include "mcl/errors.hpp"
#include "mcl/expsum.hpp"
#include "mcl/multfn.hpp"
#include "mcl/report.hpp"
#include "mcl/sieve.hpp"
#include "mcl/typical.hpp"

namespace {

using namespace mcl;
using report::Json;
using report::Report;

struct Global {
  std::uint64_t seed = acceptance::kDefaultSeed;
  std::string out = "-";
  std::string format;  // empty: the subcommand's default
  u64 mem_budget = 0;  // bytes; 0 keeps the built-in limits

  SieveLimits limits() const {
    return mem_budget ? SieveLimits::from_memory_budget(mem_budget) : SieveLimits{};
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

u64 to_u64(const std::string& s) {
  std::size_t used = 0;
  u64 v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw PreconditionError("'" + s + "' is not an integer");
  return v;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw PreconditionError("'" + s + "' is not a number");
  return v;
}

// Prime-value file: {"name": ..., "kind": "completely" | "squarefree",
// "primes": [[p, re, im], ...]}. Evaluating at an unlisted prime is an error.
MultFn fn_from_file(const std::string& path) {
  const auto j = read_json_file(path);
  auto table = std::make_shared<std::map<u64, cplx>>();
  bool real = true;
  for (const auto& e : j.at("primes")) {
    const cplx v(e.at(1).get<double>(), e.size() > 2 ? e.at(2).get<double>() : 0.0);
    real = real && v.imag() == 0;
    (*table)[e.at(0).get<u64>()] = v;
  }
  const std::string name = j.value("name", path);
  auto at = [table, name](u64 p) {
    const auto it = table->find(p);
    if (it == table->end())
      throw PreconditionError(name + ": no value for prime " + std::to_string(p));
    return it->second;
  };
  const std::string kind = j.value("kind", "completely");
  if (kind == "completely") return MultFn::completely(name, at, real);
  if (kind == "squarefree") return fns::squarefree_supported(name, at, real);
  throw PreconditionError(path + ": kind must be completely or squarefree");
}

DirichletCharacter parse_character(const std::string& q, const std::string& i) {
  const auto g = character_group(to_u64(q));
  const u64 idx = to_u64(i);
  detail::require(idx < g.size(), "character index out of range for modulus " + q);
  return g[idx];
}

// one | liouville | moebius | mu2 | char:q:i | twist:t | chartwist:q:i:t | file.json
MultFn parse_fn(const std::string& text) {
  if (text == "one") return fns::one();
  if (text == "liouville") return fns::liouville();
  if (text == "moebius") return fns::moebius();
  if (text == "mu2") return fns::mu_squared();
  const auto parts = split(text, ':');
  if (parts[0] == "char" && parts.size() == 3) return fns::character(parse_character(parts[1], parts[2]));
  if (parts[0] == "twist" && parts.size() == 2) return fns::archimedean(to_double(parts[1]));
  if (parts[0] == "chartwist" && parts.size() == 4)
    return fns::twisted_character(parse_character(parts[1], parts[2]), to_double(parts[3]));
  if (text.size() > 5 && text.substr(text.size() - 5) == ".json") return fn_from_file(text);
  throw PreconditionError("unknown function '" + text + "'");
}

// "P:Q,P:Q,..." as a synthetic interval system covering [1, X].
std::optional<IntervalSystem> parse_restrict(const std::string& text, u64 X) {
  if (text.empty()) return std::nullopt;
  std::vector<std::pair<u64, u64>> iv;
  for (const auto& t : split(text, ',')) {
    const auto pq = split(t, ':');
    detail::require(pq.size() == 2, "restriction intervals are written P:Q");
    iv.emplace_back(to_u64(pq[0]), to_u64(pq[1]));
  }
  return synthetic_system(iv, X);
}

Json approx_json(const RationalApprox& a) {
  return {{"alpha", a.alpha}, {"a", a.a}, {"q", a.q}, {"err", a.err}, {"Qcap", a.Qcap}};
}

Json arc_json(const ArcLabel& l) {
  return {{"kind", to_string(l.kind)}, {"W", l.W}, {"approx", approx_json(l.approx)}};
}

// ---- sieve -------------------------------------------------------------

struct SieveArgs {
  u64 lo = 1, hi = 1;
  std::string mode = "spf";
};

std::string sieve_binary(const SieveArgs& a, const SieveLimits& lim) {
  std::string out = "MCL1";
  const std::map<std::string, char> modes{{"spf", 0}, {"liouville", 1}, {"moebius", 2}, {"primes", 3}};
  out += modes.at(a.mode);
  auto put64 = [&](u64 v) {
    for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
  };
  put64(a.lo);
  put64(a.hi);
  if (a.mode == "spf") {
    const auto s = build_factor_sieve(a.lo, a.hi, lim);
    for (u64 n = a.lo; n <= a.hi; ++n) put64(s.spf(n));
  } else if (a.mode == "primes") {
    for (u64 p : primes_in(a.lo, a.hi, lim)) put64(p);
  } else {
    const auto b = a.mode == "liouville" ? liouville_block(a.lo, a.hi, lim) : moebius_block(a.lo, a.hi, lim);
    for (auto v : b.values) out += static_cast<char>(v);
  }
  return out;
}

Report run_sieve(const SieveArgs& a, const SieveLimits& lim) {
  Report r;
  r.command = "sieve";
  r.fields = {{"lo", a.lo}, {"hi", a.hi}, {"mode", a.mode}};
  r.table.columns = {"n", "value"};
  if (a.mode == "spf") {
    const auto s = build_factor_sieve(a.lo, a.hi, lim);
    for (u64 n = a.lo; n <= a.hi; ++n) r.table.add({n, s.spf(n)});
  } else if (a.mode == "primes") {
    for (u64 p : primes_in(a.lo, a.hi, lim)) r.table.add({p, std::uint64_t{1}});
  } else {
    const auto b = a.mode == "liouville" ? liouville_block(a.lo, a.hi, lim) : moebius_block(a.lo, a.hi, lim);
    for (u64 n = a.lo; n <= a.hi; ++n) r.table.add({n, static_cast<std::int64_t>(b.at(n))});
  }
  return r;
}

// ---- typical -----------------------------------------------------------

struct TypicalArgs {
  u64 p1 = 0, q1 = 0, x0 = 0, x = 0;
  std::string synthetic;
  u64 samples = 200'000;
};

Report run_typical(const TypicalArgs& a, const Global& g) {
  const auto lim = g.limits();
  std::optional<IntervalSystem> sys;
  if (!a.synthetic.empty()) {
    const auto j = read_json_file(a.synthetic);
    std::vector<std::pair<u64, u64>> iv;
    for (const auto& e : j.at("intervals")) iv.emplace_back(e.at(0).get<u64>(), e.at(1).get<u64>());
    sys = synthetic_system(iv, a.x);
  } else {
    detail::require(a.p1 && a.q1 && a.x0 && a.x, "typical needs --p1 --q1 --x0 --x or --synthetic");
    sys = build_interval_system(a.p1, a.q1, a.x0, a.x);
  }
  const auto d = density_report(*sys, a.x, g.seed, a.samples, 10'000'000, lim);
  Report r;
  r.command = "typical";
  Json ladder = Json::array();
  for (std::size_t j = 0; j < sys->ladder().size(); ++j) {
    const auto& l = sys->ladder()[j];
    ladder.push_back({{"j", l.j},
                      {"logP", static_cast<double>(l.log_p)},
                      {"logQ", static_cast<double>(l.log_q)},
                      {"P", sys->bounds()[j].lo},
                      {"Q", sys->bounds()[j].hi},
                      {"mertens", d.mertens_per_j[j]}});
  }
  r.fields = {{"X", a.x},
              {"synthetic", sys->synthetic()},
              {"ladder", ladder},
              {"J", sys->J()},
              {"measured_deficit", d.measured_deficit},
              {"standard_error", d.standard_error},
              {"sampled", d.sampled},
              {"samples", d.samples},
              {"mertens_bound", d.mertens_bound}};
  return r;
}

// ---- distance / bigm ---------------------------------------------------

Report run_distance(const std::string& f, const std::string& g, u64 X, const Global& gl) {
  const auto tab = PrimeTable::upto(X, gl.limits());
  const auto d = distance(parse_fn(f), parse_fn(g), tab, X);
  Report r;
  r.command = "distance";
  r.fields = {{"f", f}, {"g", g}, {"X", X}, {"value", d.value}, {"squared", d.squared},
              {"term_count", d.term_count}};
  return r;
}

Report run_bigm(const std::string& f, u64 X, u64 qmax, double eps) {
  BigMOptions opt;
  opt.eps = eps;
  const auto fn = parse_fn(f);
  Report r;
  r.command = "bigm";
  if (qmax <= 1) {
    const auto m = big_m(fn, X, opt);
    const auto& gr = m.grid;
    r.fields = {{"f", f},
                {"X", X},
                {"value", m.M},
                {"argmin", m.argmin_t},
                {"grid_meta",
                 {{"t_lo", gr.t_lo},
                  {"t_hi", gr.t_hi},
                  {"proxy_spacing", gr.proxy_spacing},
                  {"refine_spacing", gr.refine_spacing},
                  {"proxy_primes", gr.proxy_primes},
                  {"proxy_points", gr.proxy_points},
                  {"candidates", gr.candidates},
                  {"full_evaluations", gr.full_evaluations},
                  {"golden_tol", gr.golden_tol}}}};
  } else {
    const auto m = big_m_q(fn, X, qmax, opt);
    r.fields = {{"f", f},
                {"X", X},
                {"Q", qmax},
                {"value", m.M},
                {"argmin", m.t},
                {"q", m.q},
                {"chi_index", m.chi_index},
                {"grid_meta", {{"characters", m.characters}, {"eps", eps}}}};
  }
  return r;
}

// ---- correlate ---------------------------------------------------------

struct CorrelateArgs {
  u64 x = 0, h_max = 0;
  unsigned k = 2;
  std::size_t samples = 1000;
  std::string f = "liouville";
  double delta = 0.1;
};

Report run_correlate(const CorrelateArgs& a, const Global& g) {
  const auto fn = parse_fn(a.f);
  Report r;
  r.command = "correlate";
  if (a.k == 2) {
    const auto t = two_point_table(a.x, a.h_max, fn, g.limits());
    const auto e = t.exceptional(a.delta);
    r.fields = {{"f", a.f},
                {"X", a.x},
                {"H", a.h_max},
                {"k", 2},
                {"average_abs", t.average_abs()},
                {"exceptional", {{"delta", e.delta}, {"count", e.count}, {"paper_ceiling", e.paper_ceiling}}},
                {"integer_valued", t.integer_valued},
                {"max_rounding_residual", t.max_rounding_residual},
                {"fft_length", t.fft_length},
                {"chunks", t.chunks}};
    r.table.columns = {"h", "re", "im", "abs_over_X"};
    for (u64 h = 0; h <= a.h_max; ++h)
      r.table.add({h, t.entries[h].real(), t.entries[h].imag(),
                   std::abs(t.entries[h]) / static_cast<double>(a.x)});
  } else {
    const auto c = averaged_chowla(a.x, a.h_max, a.k, a.samples, g.seed, fn, g.limits());
    r.fields = {{"f", a.f},   {"X", a.x},
                {"H", a.h_max}, {"k", a.k},
                {"average_abs", c.mean}, {"standard_error", c.standard_error},
                {"tuples", c.tuples},    {"enumerated", c.enumerated}};
  }
  return r;
}

// ---- fourier-check -----------------------------------------------------

struct FourierArgs {
  std::string file;
  std::size_t support = 10;
  i64 range = 100;
  double h = 5, step = 1e-3;
};

Report run_fourier(const FourierArgs& a, const Global& g) {
  FiniteFn f;
  if (!a.file.empty()) {
    for (const auto& e : read_json_file(a.file).at("values"))
      f[e.at(0).get<i64>()] = cplx(e.at(1).get<double>(), e.size() > 2 ? e.at(2).get<double>() : 0.0);
  } else {
    detail::require(a.range >= 1 && a.support <= static_cast<std::size_t>(a.range),
                    "--support must not exceed --range");
    auto rng = make_rng(g.seed, {0xF0});
    std::vector<i64> pool(static_cast<std::size_t>(a.range));
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < a.support; ++i) f[pool[i]] = cplx(u(rng), u(rng));
  }
  const auto c = fourier_identity_check(f, a.h, a.step);
  Report r;
  r.command = "fourier-check";
  r.fields = {{"H", a.h},
              {"support", f.size()},
              {"lhs", c.lhs},
              {"rhs", c.rhs},
              {"rel_err", c.rel_err},
              {"points", c.points},
              {"degree", c.degree},
              {"coarse_points", c.coarse_points},
              {"coarse_rel_err", c.coarse_rel_err},
              {"fine_rel_err", c.fine_rel_err},
              {"converged", c.converged}};
  return r;
}

// ---- variance ----------------------------------------------------------

Report run_variance(const std::string& f, u64 X, u64 h, const std::string& restrict,
                    const Global& g) {
  const auto sys = parse_restrict(restrict, 2 * X + h);
  const auto v = short_interval_variance(parse_fn(f), X, h, sys ? &*sys : nullptr, g.limits());
  Report r;
  r.command = "variance";
  r.fields = {{"f", f},     {"X", X},
              {"h", h},     {"value", v.value},
              {"restricted", v.restricted}, {"hypothesis_warning", v.hypothesis_warning}};
  return r;
}

// ---- expsum / arcs -----------------------------------------------------

struct ExpsumArgs {
  u64 x = 0;
  double h = 0, alpha = 0, w = 10;
  bool sup = false;
  std::size_t grid = 1000;
  std::string f = "liouville", restrict;
};

Report run_expsum(const ExpsumArgs& a, const Global& g) {
  const auto fn = parse_fn(a.f);
  const auto sys = parse_restrict(a.restrict, a.x + static_cast<u64>(std::floor(a.h)));
  const IntervalSystem* rs = sys ? &*sys : nullptr;
  Report r;
  r.command = "expsum";
  if (a.sup) {
    const auto s = sup_over_alpha(fn, a.x, a.h, a.grid, a.w, rs, g.limits());
    r.fields = {{"f", a.f},
                {"X", a.x},
                {"H", a.h},
                {"sup", true},
                {"alpha", s.alpha},
                {"value", s.value},
                {"grid_size", s.grid_size},
                {"value_at_zero", s.value_at_zero},
                {"refined_value", s.refined_value},
                {"refinement_change", s.refinement_change},
                {"arc", arc_json(s.arc)}};
  } else {
    const double v = sweep_integral(fn, a.x, a.h, a.alpha, rs, 1, g.limits());
    const auto arc = classify_arc(dirichlet_approx(a.alpha, arc_qcap(a.h, a.w)), a.w);
    r.fields = {{"f", a.f}, {"X", a.x}, {"H", a.h}, {"sup", false}, {"alpha", a.alpha},
                {"value", v}, {"arc", arc_json(arc)}};
  }
  return r;
}

Report run_arcs(double alpha, u64 qcap, double w) {
  const auto arc = classify_arc(dirichlet_approx(alpha, qcap), w);
  Report r;
  r.command = "arcs";
  r.fields = {{"alpha", alpha}, {"kind", to_string(arc.kind)}, {"W", w},
              {"a", arc.approx.a}, {"q", arc.approx.q}, {"err", arc.approx.err},
              {"Qcap", arc.approx.Qcap}};
  return r;
}

// ---- ramare / vinogradov / flask ---------------------------------------

Report run_ramare(u64 x, u64 p1, u64 q1, const std::string& conv, const Global& g) {
  RamareConvention c;
  if (conv == "exclude_p")
    c = RamareConvention::exclude_p;
  else if (conv == "literal")
    c = RamareConvention::literal;
  else
    throw PreconditionError("--convention must be exclude_p or literal");
  const auto sys = synthetic_system({{p1, q1}}, x);
  const auto s = ramare_scan(sys, x, c, g.limits());
  Report r;
  r.command = "ramare";
  r.fields = {{"X", x},           {"P1", p1},
              {"Q1", q1},         {"convention", conv},
              {"checked", s.checked}, {"mismatches", s.mismatches},
              {"first_mismatch", s.first_mismatch}};
  return r;
}

Report run_vinogradov(u64 n, double A, double alpha) {
  const auto v = vinogradov_sum(n, A, alpha);
  Report r;
  r.command = "vinogradov";
  r.fields = {{"N", n}, {"A", A}, {"alpha", alpha}, {"sum", v.sum}, {"paper_bound", v.paper_bound},
              {"ratio", v.ratio}, {"approx", approx_json(v.approx)}};
  return r;
}

Report run_flask(u64 p, double h, double alpha, double w) {
  const auto f = min_sum_flask(p, h, alpha, w);
  Report r;
  r.command = "flask";
  r.fields = {{"P", p}, {"H", h}, {"alpha", alpha}, {"value", f.value}, {"arc", arc_json(f.arc)}};
  return r;
}

// ---- counterexample ----------------------------------------------------

struct CounterArgs {
  u64 t1 = 20;
  int stages = 1;
  double eps = 0.05;
  u64 cap = 1'000'000'000;
  double s_cap = 1'000'000;
  u64 corr_max = 100'000'000;
};

Report run_counterexample(const CounterArgs& a, const Global& g) {
  const auto ce = build_counterexample(a.t1, a.stages, a.eps, {a.cap, a.s_cap});
  Report r;
  r.command = "counterexample";
  Json corr = Json::array();
  std::vector<u64> Ns;
  for (const auto& s : ce.rule.stages()) Ns.push_back(std::min(s.t_next, a.corr_max));
  if (Ns.empty()) Ns.push_back(std::min<u64>(1'000'000, a.corr_max));
  std::sort(Ns.begin(), Ns.end());
  Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());
  for (u64 N : Ns) corr.push_back({{"N", N}, {"value", consecutive_correlation(ce.g, N, g.limits())}});
  r.fields = {{"t1", a.t1}, {"eps", a.eps}, {"cap", a.cap}, {"s_cap", a.s_cap}, {"correlation_at", corr}};
  r.table_name = "stages";
  r.table.columns = {"m", "t_m", "s", "eps_achieved", "t_next", "capped", "primes_aligned"};
  for (const auto& s : ce.rule.stages())
    r.table.add({static_cast<std::int64_t>(s.m), s.t_m, s.s, s.eps_achieved, s.t_next, s.capped,
                 static_cast<std::uint64_t>(s.primes_aligned)});
  return r;
}

// ---- accept ------------------------------------------------------------

Report run_accept(const std::string& suite, const Global& g) {
  const auto ids = acceptance::parse_suite(suite);
  std::vector<acceptance::Criterion> cs;
  for (auto& t : acceptance::run_suite(ids, g.seed, [](const acceptance::Timed& t) {
         std::fprintf(stderr, "%s %2d %-24s %.1fs\n", t.criterion.pass ? "PASS" : "FAIL",
                      t.criterion.id, t.criterion.name.c_str(), t.seconds);
       }))
    cs.push_back(std::move(t.criterion));
  return acceptance::to_report(cs, suite, g.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicative-function correlation toolkit"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);
  Global g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "Output path ('-' for stdout)")->capture_default_str();
  app.add_option("--format", g.format, "csv, json (sieve also accepts binary)");
  app.add_option("--mem-budget", g.mem_budget, "Memory budget in bytes for sieve blocks");

  // Each subcommand fills `job` and names its default output format.
  std::function<Report()> job;
  std::string default_format = "json";
  std::function<std::string()> binary_job;

  SieveArgs sa;
  auto* sieve = app.add_subcommand("sieve", "Smallest prime factors, Liouville, Moebius or primes");
  sieve->add_option("--lo", sa.lo)->required();
  sieve->add_option("--hi", sa.hi)->required();
  sieve->add_option("--mode", sa.mode)->check(CLI::IsMember({"spf", "liouville", "moebius", "primes"}));
  sieve->callback([&] {
    default_format = "csv";
    job = [&] { return run_sieve(sa, g.limits()); };
    binary_job = [&] { return sieve_binary(sa, g.limits()); };
  });

  TypicalArgs ta;
  auto* typical = app.add_subcommand("typical", "Density of the typical-factorization set");
  typical->add_option("--p1", ta.p1);
  typical->add_option("--q1", ta.q1);
  typical->add_option("--x0", ta.x0);
  typical->add_option("--x", ta.x)->required();
  typical->add_option("--synthetic", ta.synthetic, "JSON file {\"intervals\": [[P, Q], ...]}");
  typical->add_option("--samples", ta.samples);
  typical->callback([&] { job = [&] { return run_typical(ta, g); }; });

  std::string df = "liouville", dg = "one";
  u64 dx = 0;
  auto* dist = app.add_subcommand("distance", "Pretentious distance D(f, g; X)");
  dist->add_option("--f", df);
  dist->add_option("--g", dg);
  dist->add_option("--x", dx)->required();
  dist->callback([&] { job = [&] { return run_distance(df, dg, dx, g); }; });

  std::string bf = "liouville";
  u64 bx = 0, bq = 1;
  double beps = 0.1;
  auto* bigm = app.add_subcommand("bigm", "M(f; X) or M(f; X, Q)");
  bigm->add_option("--f", bf);
  bigm->add_option("--x", bx)->required();
  bigm->add_option("--qmax", bq);
  bigm->add_option("--eps", beps);
  bigm->callback([&] { job = [&] { return run_bigm(bf, bx, bq, beps); }; });

  CorrelateArgs ca;
  auto* corr = app.add_subcommand("correlate", "Two-point table or averaged k-point correlations");
  corr->add_option("--x", ca.x)->required();
  corr->add_option("--h-max", ca.h_max)->required();
  corr->add_option("--k", ca.k);
  corr->add_option("--samples", ca.samples);
  corr->add_option("--f", ca.f);
  corr->add_option("--delta", ca.delta);
  corr->callback([&] {
    default_format = ca.k == 2 ? "csv" : "json";
    job = [&] { return run_correlate(ca, g); };
  });

  FourierArgs fa;
  auto* fc = app.add_subcommand("fourier-check", "Both sides of the Fourier energy identity");
  fc->add_option("--file", fa.file, "JSON file {\"values\": [[n, re, im], ...]}");
  fc->add_option("--support", fa.support);
  fc->add_option("--range", fa.range);
  fc->add_option("--h", fa.h);
  fc->add_option("--step", fa.step);
  fc->callback([&] { job = [&] { return run_fourier(fa, g); }; });

  std::string vf = "liouville", vr;
  u64 vx = 0, vh = 0;
  auto* var = app.add_subcommand("variance", "Short-interval variance");
  var->add_option("--f", vf);
  var->add_option("--x", vx)->required();
  var->add_option("--h", vh)->required();
  var->add_option("--restrict", vr, "P:Q[,P:Q...] synthetic interval system");
  var->callback([&] { job = [&] { return run_variance(vf, vx, vh, vr, g); }; });

  ExpsumArgs ea;
  auto* es = app.add_subcommand("expsum", "Integral of |short exponential sums| over x");
  es->add_option("--x", ea.x)->required();
  es->add_option("--h", ea.h)->required();
  es->add_option("--alpha", ea.alpha);
  es->add_flag("--sup", ea.sup);
  es->add_option("--grid", ea.grid);
  es->add_option("--w", ea.w);
  es->add_option("--f", ea.f);
  es->add_option("--restrict", ea.restrict, "P:Q[,P:Q...] synthetic interval system");
  es->callback([&] { job = [&] { return run_expsum(ea, g); }; });

  double aa = 0, aw = 10;
  u64 aq = 1;
  auto* arcs = app.add_subcommand("arcs", "Dirichlet approximation and major/minor label");
  arcs->add_option("--alpha", aa)->required();
  arcs->add_option("--qcap", aq)->required();
  arcs->add_option("--w", aw);
  arcs->callback([&] { job = [&] { return run_arcs(aa, aq, aw); }; });

  u64 rx = 0, rp = 10, rq = 1000;
  std::string rc = "exclude_p";
  auto* ram = app.add_subcommand("ramare", "Check Ramare's identity for every n <= X");
  ram->add_option("--x", rx)->required();
  ram->add_option("--p1", rp);
  ram->add_option("--q1", rq);
  ram->add_option("--convention", rc)->check(CLI::IsMember({"exclude_p", "literal"}));
  ram->callback([&] { job = [&] { return run_ramare(rx, rp, rq, rc, g); }; });

  u64 vn = 0;
  double va = 0, valpha = 0;
  auto* vin = app.add_subcommand("vinogradov", "sum_{n <= N} min(A, 1/||n alpha||)");
  vin->add_option("--n", vn)->required();
  vin->add_option("--a", va)->required();
  vin->add_option("--alpha", valpha)->required();
  vin->callback([&] { job = [&] { return run_vinogradov(vn, va, valpha); }; });

  u64 fp = 0;
  double fh = 0, falpha = 0, fw = 10;
  auto* flask = app.add_subcommand("flask", "Four-prime min-sum via representation counts");
  flask->add_option("--p", fp)->required();
  flask->add_option("--h", fh)->required();
  flask->add_option("--alpha", falpha)->required();
  flask->add_option("--w", fw);
  flask->callback([&] { job = [&] { return run_flask(fp, fh, falpha, fw); }; });

  CounterArgs cea;
  auto* ce = app.add_subcommand("counterexample", "Build the staged counterexample g");
  ce->add_option("--t1", cea.t1);
  ce->add_option("--stages", cea.stages);
  ce->add_option("--eps", cea.eps);
  ce->add_option("--cap", cea.cap);
  ce->add_option("--s-cap", cea.s_cap);
  ce->add_option("--corr-max", cea.corr_max, "Largest N for the consecutive correlation");
  ce->callback([&] { job = [&] { return run_counterexample(cea, g); }; });

  std::string suite = "all";
  auto* acc = app.add_subcommand("accept", "Run the acceptance suite");
  acc->add_option("--suite", suite, "all, or ids such as 1,4-6");
  acc->callback([&] { job = [&] { return run_accept(suite, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ConversionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    const std::string fmt = g.format.empty() ? default_format : g.format;
    if (fmt == "binary") {
      if (!binary_job) throw PreconditionError("binary output is only available for sieve");
      report::write_text(binary_job(), g.out);
    } else {
      const auto f = report::parse_format(fmt);
      report::emit(job(), f, g.out);
    }
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const OutputError& e) {
    std::cerr << "output: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
