// isingfast: approximate partition functions and moments of the homogeneous
// Ising model on regular lattices, with MCMC references, grid benchmarking
// and a Bayesian p-value activation-detection sampler.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "ising/bayes.hpp"
#include "ising/bench.hpp"
#include "ising/exact.hpp"
#include "ising/mcmc.hpp"
#include "ising/moments.hpp"
#include "ising/partition.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

json provenance(const json& config, std::uint64_t seed = 0) {
  std::ostringstream ss;
  ss << config;
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a(ss.str())));
  return json{{"version", kVersion}, {"seed", seed}, {"config_hash", hex}};
}

struct GraphOpts {
  std::string topology = "lattice2d-free";
  int rows = 0;
  int cols = 1;
  std::string order = "first";

  void attach(CLI::App* cmd) {
    cmd->add_option("--topology", topology,
                    "circular-chain | lattice2d-free | lattice2d-torus");
    cmd->add_option("--rows", rows, "rows (or n for chains)")->required();
    cmd->add_option("--cols", cols, "columns (1 for chains)");
    cmd->add_option("--order", order, "first (k=4) | second (k=8) | fifth (k=24)");
  }
  ising::GraphSpec spec() const {
    ising::GraphSpec s;
    s.topology = ising::topology_from_string(topology);
    s.rows = rows;
    s.cols = cols;
    s.order = ising::order_from_string(order);
    return s;
  }
  json to_json() const {
    return json{{"topology", topology}, {"rows", rows}, {"cols", cols},
                {"order", order}};
  }
};

int resolve_threads(int threads_flag) {
  if (const char* env = std::getenv("ISING_FAST_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (threads_flag > 0) return threads_flag;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fast deterministic Ising-model approximations"};
  app.require_subcommand(1);

  // ---- approx ----
  auto* approx = app.add_subcommand("approx", "analytical logZ / M / S");
  std::string quantity = "logZ", method = "tilde";
  double alpha = 0.0, beta = 0.0;
  GraphOpts gopt;
  int quad_points = 2048;
  std::string quad_rule = "gl";
  approx->add_option("--quantity", quantity, "logZ | M | S");
  approx->add_option("--method", method, "phi | hphi | tilde");
  approx->add_option("--alpha", alpha)->required();
  approx->add_option("--beta", beta)->required();
  gopt.attach(approx);
  approx->add_option("--quad-points", quad_points);
  approx->add_option("--quad-rule", quad_rule, "gl | trapezoid");

  // ---- exact1nn ----
  auto* e1 = app.add_subcommand("exact1nn", "closed-form circular 1-NN logZ");
  int n_chain = 0;
  e1->add_option("--alpha", alpha)->required();
  e1->add_option("--beta", beta)->required();
  e1->add_option("--n", n_chain)->required();

  // ---- brute ----
  auto* brute = app.add_subcommand("brute", "exact enumeration (n <= 24)");
  brute->add_option("--alpha", alpha)->required();
  brute->add_option("--beta", beta)->required();
  GraphOpts gopt_brute;
  gopt_brute.attach(brute);

  // ---- sample ----
  auto* sample = app.add_subcommand("sample", "MCMC chain moments");
  std::string updater = "sw";
  long burnin = 10000, samples = 10000;
  int thin = 1;
  std::uint64_t seed = 0;
  sample->add_option("--updater", updater, "sw | gibbs");
  sample->add_option("--alpha", alpha)->required();
  sample->add_option("--beta", beta)->required();
  sample->add_option("--burnin", burnin);
  sample->add_option("--samples", samples);
  sample->add_option("--thin", thin);
  sample->add_option("--seed", seed);
  GraphOpts gopt_sample;
  gopt_sample.attach(sample);

  // ---- pathsample ----
  auto* ps = app.add_subcommand("pathsample", "path-sampling logZ reference");
  int knots = 32;
  bool cold_start = false;
  ps->add_option("--alpha", alpha)->required();
  ps->add_option("--beta", beta)->required();
  ps->add_option("--knots", knots);
  ps->add_option("--burnin", burnin);
  ps->add_option("--samples", samples);
  ps->add_option("--seed", seed);
  ps->add_flag("--cold-start", cold_start,
               "restart each knot chain from scratch");
  GraphOpts gopt_ps;
  gopt_ps.attach(ps);

  // ---- grid ----
  auto* grid = app.add_subcommand("grid", "evaluate an (alpha,beta) surface");
  std::string grid_file, out_file = "surface.csv";
  bool default_grid = false;
  int threads_flag = 0;
  grid->add_option("--quantity", quantity, "logZ | M | S");
  grid->add_option("--method", method, "phi | hphi | tilde | 1nn");
  grid->add_option("--grid-file", grid_file, "JSON {alphas:[], betas:[]}");
  grid->add_flag("--default-grid", default_grid,
                 "19 alphas on [0,5] x 58 log-spaced betas on [0.005,10]");
  grid->add_option("--out", out_file);
  grid->add_option("--quad-points", quad_points);
  grid->add_option("--threads", threads_flag);
  GraphOpts gopt_grid;
  gopt_grid.attach(grid);

  // ---- compare ----
  auto* cmp = app.add_subcommand("compare", "surface discrepancy metrics");
  std::string ref_file, test_file;
  cmp->add_option("--ref", ref_file)->required();
  cmp->add_option("--test", test_file)->required();

  // ---- fmri ----
  auto* fmri = app.add_subcommand("fmri", "Bayesian activation detection");
  std::string data_file, mask_file, out_map = "map.csv", trace_file,
              summary_file, labels = "gibbs";
  double zeta = 10.0, theta_psi = 1.0, gamma_beta = 1.0, sigma2_alpha = 1.0;
  long warmup = 3000;
  fmri->add_option("--data", data_file,
                   "CSV voxel,row,col,rep,p or raw doubles with .json sidecar")
      ->required();
  fmri->add_option("--mask", mask_file, "CSV of 0/1 flags, rows x cols");
  fmri->add_option("--zeta", zeta);
  fmri->add_option("--theta-psi", theta_psi);
  fmri->add_option("--gamma", gamma_beta);
  fmri->add_option("--sigma2-alpha", sigma2_alpha);
  fmri->add_option("--burnin", burnin);
  fmri->add_option("--samples", samples);
  fmri->add_option("--warmup", warmup, "label-only warm-up sweeps");
  fmri->add_option("--seed", seed);
  fmri->add_option("--labels", labels, "gibbs | sw");
  fmri->add_option("--order", gopt.order, "prior neighborhood order");
  fmri->add_option("--out", out_map);
  fmri->add_option("--trace", trace_file, "full parameter trace CSV");
  fmri->add_option("--summary", summary_file, "summary JSON path");
  fmri->add_option("--quad-points", quad_points);

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    ising::QuadConfig quad;
    quad.points = quad_points;
    quad.rule = quad_rule == "trapezoid" ? ising::QuadConfig::Rule::trapezoid
                                         : ising::QuadConfig::Rule::gauss_legendre;

    if (*approx) {
      const auto spec = gopt.spec();
      spec.validate();
      const int n = static_cast<int>(spec.n());
      const int k = spec.nominal_degree();
      const ising::IsingParams p{alpha, beta};
      const auto q = ising::quantity_from_string(quantity);
      const auto zm = ising::z_method_from_string(method);
      double value = 0.0;
      std::string method_name;
      if (q == ising::Quantity::log_z) {
        const auto est = ising::log_z(p, n, k, zm, quad);
        value = est.log_z;
        method_name = ising::to_string(est.method);
      } else {
        const auto mm = zm == ising::ZMethod::phi ? ising::MomentMethod::phi
                                                  : ising::MomentMethod::tilde_phi;
        if (zm != ising::ZMethod::phi && zm != ising::ZMethod::tilde_phi)
          throw std::invalid_argument("M/S support methods phi and tilde only");
        const auto est = ising::moments(p, n, k, mm, quad);
        value = q == ising::Quantity::m_active ? est.m_active : est.s_spin;
        method_name = ising::to_string(mm);
      }
      json cfg{{"cmd", "approx"}, {"quantity", quantity}, {"method", method},
               {"alpha", alpha},  {"beta", beta},         {"graph", gopt.to_json()}};
      json out{{"value", value},
               {"method", method_name},
               {"runtime_ms", elapsed_ms(t0)},
               {"provenance", provenance(cfg)}};
      std::cout << out.dump(2) << "\n";
    } else if (*e1) {
      const double value = ising::log_z_1nn(alpha, beta, n_chain);
      json cfg{{"cmd", "exact1nn"}, {"alpha", alpha}, {"beta", beta}, {"n", n_chain}};
      json out{{"value", value},
               {"method", "one_nn_exact"},
               {"runtime_ms", elapsed_ms(t0)},
               {"provenance", provenance(cfg)}};
      std::cout << out.dump(2) << "\n";
    } else if (*brute) {
      const auto g = ising::build(gopt_brute.spec());
      const auto r = ising::brute_force(g, alpha, beta);
      json cfg{{"cmd", "brute"}, {"alpha", alpha}, {"beta", beta},
               {"graph", gopt_brute.to_json()}};
      json out{{"logZ", r.log_z},   {"M", r.m_active}, {"S", r.s_spin},
               {"matches", r.matches},
               {"runtime_ms", elapsed_ms(t0)},
               {"provenance", provenance(cfg)}};
      std::cout << out.dump(2) << "\n";
    } else if (*sample) {
      const auto g = ising::build(gopt_sample.spec());
      ising::MCMCConfig cfg;
      cfg.burn_in = burnin;
      cfg.samples = samples;
      cfg.thin = thin;
      cfg.seed = seed;
      cfg.updater = updater == "gibbs" ? ising::MCMCConfig::Updater::single_site
                                       : ising::MCMCConfig::Updater::swendsen_wang;
      const auto r = ising::run_chain(g, ising::IsingParams{alpha, beta}, cfg);
      json jcfg{{"cmd", "sample"},   {"updater", updater}, {"alpha", alpha},
                {"beta", beta},      {"burnin", burnin},   {"samples", samples},
                {"thin", thin},      {"seed", seed},
                {"graph", gopt_sample.to_json()}};
      json out{{"mean_active", r.mean_active},
               {"mean_spin", r.mean_spin},
               {"mean_matches", r.mean_matches},
               {"se_active", r.se_active},
               {"se_spin", r.se_spin},
               {"se_matches", r.se_matches},
               {"n_samples", r.n_samples},
               {"seed", r.seed},
               {"runtime_ms", elapsed_ms(t0)},
               {"provenance", provenance(jcfg, seed)}};
      std::cout << out.dump(2) << "\n";
    } else if (*ps) {
      const auto g = ising::build(gopt_ps.spec());
      ising::MCMCConfig cfg;
      cfg.burn_in = burnin;
      cfg.samples = samples;
      cfg.seed = seed;
      const auto est =
          ising::path_sample_log_z(g, alpha, beta, knots, cfg, !cold_start);
      json jcfg{{"cmd", "pathsample"}, {"alpha", alpha},  {"beta", beta},
                {"knots", knots},      {"burnin", burnin}, {"samples", samples},
                {"seed", seed},        {"graph", gopt_ps.to_json()}};
      json out{{"logZ", est.log_z},
               {"method", "path_sampling"},
               {"knots", est.quad_points},
               {"runtime_ms", elapsed_ms(t0)},
               {"provenance", provenance(jcfg, seed)}};
      std::cout << out.dump(2) << "\n";
    } else if (*grid) {
      const auto spec = gopt_grid.spec();
      spec.validate();
      const int n = static_cast<int>(spec.n());
      const int k = spec.nominal_degree();
      ising::GridSpec gs;
      if (default_grid || grid_file.empty()) {
        gs = ising::GridSpec::paper_default();
      } else {
        std::ifstream in(grid_file);
        if (!in) throw std::invalid_argument("cannot open " + grid_file);
        json jg;
        in >> jg;
        gs.alphas = jg.at("alphas").get<std::vector<double>>();
        gs.betas = jg.at("betas").get<std::vector<double>>();
        gs.validate();
      }
      const int threads = resolve_threads(threads_flag);
      const auto surface = ising::evaluate_surface(
          ising::quantity_from_string(quantity),
          ising::z_method_from_string(method), n, k, gs, quad, threads);
      json cfg{{"cmd", "grid"},   {"quantity", quantity}, {"method", method},
               {"graph", gopt_grid.to_json()}, {"threads", threads}};
      std::ofstream out(out_file);
      if (!out) throw std::invalid_argument("cannot open " + out_file);
      std::ostringstream prov;
      prov << "provenance: " << provenance(cfg);
      surface.to_csv(out, prov.str());
      json done{{"out", out_file},
                {"cells", surface.grid.cells()},
                {"runtime_ms", elapsed_ms(t0)},
                {"provenance", provenance(cfg)}};
      std::cout << done.dump(2) << "\n";
    } else if (*cmp) {
      std::ifstream fa(ref_file), fb(test_file);
      if (!fa) throw std::invalid_argument("cannot open " + ref_file);
      if (!fb) throw std::invalid_argument("cannot open " + test_file);
      const auto a = ising::Surface::from_csv(fa);
      const auto b = ising::Surface::from_csv(fb);
      const auto d = ising::discrepancy(a, b);
      json cfg{{"cmd", "compare"}, {"ref", ref_file}, {"test", test_file}};
      json out{{"L1", d.l1},
               {"R1", d.r1},
               {"L1_over_V", d.l1_over_v},
               {"runtime_ms", elapsed_ms(t0)},
               {"provenance", provenance(cfg)}};
      std::cout << out.dump(2) << "\n";
    } else if (*fmri) {
      ising::PValueData data;
      if (data_file.size() > 4 &&
          data_file.substr(data_file.size() - 4) == ".csv") {
        std::ifstream in(data_file);
        if (!in) throw std::invalid_argument("cannot open " + data_file);
        data = ising::PValueData::from_csv(in);
      } else {
        data = ising::PValueData::from_binary(data_file);
      }
      if (!mask_file.empty()) {
        std::ifstream in(mask_file);
        if (!in) throw std::invalid_argument("cannot open " + mask_file);
        data.apply_mask_csv(in);
      }
      ising::GraphSpec spec;
      spec.topology = ising::Topology::lattice2d_free;
      spec.rows = data.rows;
      spec.cols = data.cols;
      spec.order = ising::order_from_string(
          gopt.order == "first" ? "second" : gopt.order);
      const auto g = ising::build(spec);

      ising::PriorConfig prior;
      prior.zeta = zeta;
      prior.theta_psi = theta_psi;
      prior.gamma_beta = gamma_beta;
      prior.sigma2_alpha = sigma2_alpha;

      ising::PosteriorConfig pcfg;
      pcfg.mcmc.burn_in = burnin;
      pcfg.mcmc.samples = samples;
      pcfg.mcmc.seed = seed;
      pcfg.label_warmup = warmup;
      pcfg.labels = labels == "sw" ? ising::LabelUpdater::swendsen_wang
                                   : ising::LabelUpdater::single_site;
      pcfg.quad = quad;

      ising::BayesParams init;  // (0.001, 0.0025, 1, 0.001)
      const auto zprov =
          ising::make_tilde_provider(g.n, g.k_nominal, quad);
      const auto post =
          ising::run_posterior(data, g, prior, pcfg, init, zprov);

      json cfg{{"cmd", "fmri"},     {"data", data_file}, {"mask", mask_file},
               {"zeta", zeta},      {"theta_psi", theta_psi},
               {"gamma", gamma_beta}, {"sigma2_alpha", sigma2_alpha},
               {"burnin", burnin},  {"samples", samples}, {"warmup", warmup},
               {"seed", seed},      {"labels", labels}};
      {
        std::ofstream out(out_map);
        if (!out) throw std::invalid_argument("cannot open " + out_map);
        out << "# provenance: " << provenance(cfg, seed) << "\n";
        out << "row,col,prob\n";
        out.precision(10);
        for (int r = 0; r < post.rows; ++r)
          for (int c = 0; c < post.cols; ++c)
            out << r << ',' << c << ',' << post.activation_prob[r * post.cols + c]
                << "\n";
      }
      if (!trace_file.empty()) {
        std::ofstream out(trace_file);
        if (!out) throw std::invalid_argument("cannot open " + trace_file);
        out << "sweep,alpha,beta,psi,mu\n";
        out.precision(10);
        for (std::size_t t = 0; t < post.alpha_trace.size(); ++t)
          out << t << ',' << post.alpha_trace[t] << ',' << post.beta_trace[t]
              << ',' << post.psi_trace[t] << ',' << post.mu_trace[t] << "\n";
      }
      json summary{
          {"map", out_map},
          {"n_samples", post.n_samples},
          {"posterior_mean",
           {{"alpha", ising::trace_mean(post.alpha_trace)},
            {"beta", ising::trace_mean(post.beta_trace)},
            {"psi", ising::trace_mean(post.psi_trace)},
            {"mu", ising::trace_mean(post.mu_trace)}}},
          {"beta_ci90",
           {ising::trace_quantile(post.beta_trace, 0.05),
            ising::trace_quantile(post.beta_trace, 0.95)}},
          {"acceptance",
           {{"alpha", post.diag.alpha_proposed
                          ? double(post.diag.alpha_accepted) /
                                post.diag.alpha_proposed
                          : 0.0},
            {"beta", post.diag.beta_proposed
                         ? double(post.diag.beta_accepted) /
                               post.diag.beta_proposed
                         : 0.0},
            {"psi", post.diag.psi_proposed
                        ? double(post.diag.psi_accepted) / post.diag.psi_proposed
                        : 0.0},
            {"mu", post.diag.mu_proposed
                       ? double(post.diag.mu_accepted) / post.diag.mu_proposed
                       : 0.0}}},
          {"runtime_ms", elapsed_ms(t0)},
          {"provenance", provenance(cfg, seed)}};
      if (!summary_file.empty()) {
        std::ofstream out(summary_file);
        out << summary.dump(2) << "\n";
      }
      std::cout << summary.dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    json err{{"error",
              {{"type", typeid(e).name()}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
