// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sketchcomm/algorithms.hpp"
#include "sketchcomm/dist_matrix.hpp"
#include "sketchcomm/fabric.hpp"
#include "sketchcomm/grids.hpp"
#include "sketchcomm/linalg.hpp"
#include "sketchcomm/matrix_io.hpp"
#include "sketchcomm/rng.hpp"
#include "sketchcomm/synthetic.hpp"

#ifndef SKETCHCOMM_GIT_DESCRIBE
#define SKETCHCOMM_GIT_DESCRIBE "unknown"
#endif

namespace sketchcomm::cli {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt_seconds(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::uint64_t parse_count(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string("invalid ") + what + " '" + text + "'");
  }
  return v;
}

// Output sink: a file when a path is given, the caller's stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw ConfigError(path + ": cannot open for writing");
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

// ---------------------------------------------------------------- inputs

struct KernelSpec {
  bool rbf = false;
  std::optional<double> sigma;  // nullopt: ‖X‖_F / √n
};

std::optional<double> parse_sigma(const std::string& text) {
  if (text == "frob") return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0)) {
    throw ConfigError("invalid sigma '" + text + "' (expected a positive number or 'frob')");
  }
  return v;
}

KernelSpec parse_kernel(const std::string& text, const std::string& sigma_flag) {
  KernelSpec k;
  if (text == "linear") return k;
  if (text == "rbf") {
    k.rbf = true;
    k.sigma = parse_sigma(sigma_flag);
    return k;
  }
  if (text.rfind("rbf:", 0) == 0) {
    k.rbf = true;
    k.sigma = parse_sigma(text.substr(4));
    return k;
  }
  throw ConfigError("unknown kernel '" + text + "' (expected linear, rbf or rbf:<sigma>)");
}

struct BuiltKernel {
  DenseMatrix matrix;
  double sigma = 0.0;
};

BuiltKernel build_kernel(const DenseMatrix& points, const KernelSpec& spec) {
  if (!spec.rbf) return {kernel_linear(points), 0.0};
  const double sigma = spec.sigma ? *spec.sigma : rbf_sigma_frobenius(points);
  return {kernel_rbf(points, sigma), sigma};
}

struct InputOptions {
  std::string input;
  std::string points;
  std::string kernel = "linear";
  std::string sigma = "frob";
  std::string synthetic;
  std::size_t rank = 20;
  std::size_t dim = 16;
  std::string data_seed = "12345";

  void add_to(CLI::App& app, bool square) {
    app.add_option("--input", input, "Matrix file (binary, or CSV by extension)");
    app.add_option("--points", points, "Point file; the input becomes their kernel matrix");
    app.add_option("--kernel", kernel, "Kernel for --points: linear | rbf | rbf:<sigma>");
    app.add_option("--sigma", sigma, "RBF width: a number or 'frob' for ||X||_F/sqrt(n)");
    app.add_option("--synthetic", synthetic,
                   square ? "Synthetic input: uniform | lowrank | rbf" : "Synthetic input: uniform")
        ->check(square ? CLI::IsMember({"uniform", "lowrank", "rbf"}) : CLI::IsMember({"uniform"}));
    app.add_option("--rank", rank, "Rank of the lowrank synthetic input");
    app.add_option("--dim", dim, "Point dimension of the rbf synthetic input");
    app.add_option("--data-seed", data_seed, "Seed of the synthetic input");
  }

  // Returns the matrix plus a one-line description for the CSV metadata.
  std::pair<DenseMatrix, std::string> load(std::size_t rows, std::size_t cols,
                                           const std::string& fallback) const {
    const int sources = !input.empty() + !points.empty() + !synthetic.empty();
    if (sources > 1) throw ConfigError("give exactly one of --input, --points, --synthetic");
    if (!input.empty()) return {read_matrix(input), "input=" + input};
    if (!points.empty()) {
      const KernelSpec spec = parse_kernel(kernel, sigma);
      auto built = build_kernel(read_matrix(points), spec);
      std::string what = "points=" + points + " kernel=" + (spec.rbf ? "rbf" : "linear");
      if (spec.rbf) what += " sigma=" + fmt(built.sigma);
      return {std::move(built.matrix), what};
    }
    const std::string kind = synthetic.empty() ? fallback : synthetic;
    const std::uint64_t key = parse_seed(data_seed);
    if (rows == 0 || cols == 0) throw ConfigError("synthetic input needs its dimensions");
    if (kind == "uniform") {
      if (rows == cols) return {synthetic_symmetric(rows, key), "synthetic=uniform-symmetric"};
      return {synthetic_uniform(rows, cols, key), "synthetic=uniform"};
    }
    if (kind == "lowrank") {
      if (rank < 1) throw ConfigError("--rank must be >= 1");
      return {synthetic_lowrank_spsd(rows, rank, key),
              "synthetic=lowrank rank=" + std::to_string(rank)};
    }
    if (dim < 1) throw ConfigError("--dim must be >= 1");
    const DenseMatrix pts = gaussian_points(rows, dim, key);
    const KernelSpec spec = parse_kernel("rbf", sigma);
    auto built = build_kernel(pts, spec);
    return {std::move(built.matrix), "synthetic=rbf dim=" + std::to_string(dim) +
                                         " sigma=" + fmt(built.sigma)};
  }
};

struct CommonOptions {
  std::size_t procs = 1;
  std::size_t r = 0;
  std::string seed = "1";
  std::string distribution;
  std::string backend = "threaded";
  std::string output;
  std::size_t oracle_cutoff = 1024;
  double verify_tol = 1e-12;

  void add_to(CLI::App& app) {
    app.add_option("-P,--procs", procs, "Number of ranks")->required();
    app.add_option("-r,--rank-sketch", r, "Sketch size r")->required();
    app.add_option("--seed", seed, "Sketch seed (decimal or 0x-hex)");
    app.add_option("--distribution", distribution, "uniform | gaussian")
        ->check(CLI::IsMember({"uniform", "gaussian"}));
    app.add_option("--backend", backend, "threaded | lockstep")
        ->check(CLI::IsMember({"threaded", "lockstep"}));
    app.add_option("-o,--output", output, "CSV output path (default stdout)");
    app.add_option("--oracle-cutoff", oracle_cutoff,
                   "Largest row count verified against the serial oracle");
    app.add_option("--verify-tol", verify_tol, "Relative Frobenius tolerance for verification");
  }
};

// ---------------------------------------------------------------- grids

std::optional<std::size_t> nearest(std::size_t value, const std::function<bool(std::size_t)>& ok) {
  for (std::size_t d = 1; d <= value; ++d) {
    if (d < value && ok(value - d)) return value - d;
    if (ok(value + d)) return value + d;
  }
  return std::nullopt;
}

std::string sketch_grid_error(std::size_t n1, std::size_t n2, std::size_t r, const GridSpec& g) {
  std::string msg = "grid " + g.to_string() + " cannot split n1=" + std::to_string(n1) +
                    ", n2=" + std::to_string(n2) + ", r=" + std::to_string(r) + " evenly";
  if (auto v = nearest(n1, [&](std::size_t x) { return rand_matmul_runnable(x, n2, r, g); })) {
    msg += "; nearest valid n1 is " + std::to_string(*v);
  }
  if (auto v = nearest(n2, [&](std::size_t x) { return rand_matmul_runnable(n1, x, r, g); })) {
    msg += "; nearest valid n2 is " + std::to_string(*v);
  }
  if (auto v = nearest(r, [&](std::size_t x) {
        return x < n2 && rand_matmul_runnable(n1, n2, x, g);
      })) {
    msg += "; nearest valid r is " + std::to_string(*v);
  }
  return msg;
}

std::string nystrom_grid_error(std::size_t n, std::size_t r, const GridSpec& a,
                               const GridSpec& b) {
  std::string msg = "grids " + a.to_string() + " / " + b.to_string() + " cannot split n=" +
                    std::to_string(n) + ", r=" + std::to_string(r) + " evenly";
  if (auto v = nearest(n, [&](std::size_t x) { return x > r && nystrom_runnable(x, r, a, b); })) {
    msg += "; nearest valid n is " + std::to_string(*v);
  }
  if (auto v = nearest(r, [&](std::size_t x) { return x < n && nystrom_runnable(n, x, a, b); })) {
    msg += "; nearest valid r is " + std::to_string(*v);
  }
  return msg;
}

// ---------------------------------------------------------------- reports

struct PhaseRow {
  const char* name;
  std::vector<const char*> timed;
  std::vector<const char*> sites;
};

struct CsvTotals {
  std::optional<double> residual;
  std::optional<double> error;
};

void write_header(std::ostream& os, const std::string& command,
                  const std::vector<std::string>& meta) {
  os << "# sketchcomm " << SKETCHCOMM_GIT_DESCRIBE << "\n# command: " << command << '\n';
  for (const auto& m : meta) os << "# " << m << '\n';
}

void write_phase_csv(std::ostream& os, const std::vector<PhaseRow>& rows, const CostReport& report,
                     const std::vector<PhaseTimes>& times, const CsvTotals& totals) {
  os << "phase,seconds,words_sent,words_received,model_words,model_latency,residual,error\n";
  const int p = report.world_size() > 0 ? report.world_size() : static_cast<int>(times.size());
  for (const auto& row : rows) {
    double seconds = 0.0;
    std::uint64_t sent = 0, received = 0, model = 0, latency = 0;
    for (int rank = 0; rank < p; ++rank) {
      double t = 0.0;
      for (const char* phase : row.timed) {
        auto it = times[rank].find(phase);
        if (it != times[rank].end()) t += it->second;
      }
      seconds = std::max(seconds, t);
      CostTotals c;
      for (const char* site : row.sites) {
        const CostTotals s = report.site_totals(rank, site);
        c.words_sent += s.words_sent;
        c.words_received += s.words_received;
        c.model_bandwidth += s.model_bandwidth;
        c.model_latency += s.model_latency;
      }
      sent = std::max(sent, c.words_sent);
      received = std::max(received, c.words_received);
      model = std::max(model, c.model_bandwidth);
      latency = std::max(latency, c.model_latency);
    }
    os << row.name << ',' << fmt_seconds(seconds) << ',' << sent << ',' << received << ','
       << model << ',' << latency << ",,\n";
  }
  double seconds = 0.0;
  std::uint64_t sent = 0, received = 0;
  for (int rank = 0; rank < p; ++rank) {
    double t = 0.0;
    for (const auto& [phase, dt] : times[rank]) t += dt;
    seconds = std::max(seconds, t);
    const CostTotals c = report.rank_totals(rank);
    sent = std::max(sent, c.words_sent);
    received = std::max(received, c.words_received);
  }
  os << "total," << fmt_seconds(seconds) << ',' << sent << ',' << received << ','
     << report.max_model_bandwidth() << ',' << report.max_model_latency() << ','
     << (totals.residual ? fmt(*totals.residual) : "") << ','
     << (totals.error ? fmt(*totals.error) : "") << '\n';
}

// ---------------------------------------------------------------- sketch

struct SketchOptions {
  CommonOptions common;
  InputOptions input;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::string grid;
};

int cmd_sketch(const SketchOptions& o, std::ostream& out, std::ostream& err) {
  const auto& c = o.common;
  if (c.procs < 1) throw ConfigError("-P must be >= 1");
  const SketchSeed seed{parse_seed(c.seed),
                        c.distribution.empty() ? Distribution::uniform
                                               : parse_distribution(c.distribution)};
  auto [a, source] = o.input.load(o.n1, o.n2 ? o.n2 : o.n1, "uniform");
  if ((o.n1 && a.rows() != o.n1) || (o.n2 && a.cols() != o.n2)) {
    throw ConfigError("input is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                      ", which disagrees with --n1/--n2");
  }
  const std::size_t n1 = a.rows(), n2 = a.cols(), r = c.r;
  if (r < 1 || r >= n2) {
    throw ConfigError("r must satisfy 1 <= r < n2 (r=" + std::to_string(r) +
                      ", n2=" + std::to_string(n2) + ")");
  }
  const int p = static_cast<int>(c.procs);

  std::string note;
  GridSpec grid(p, 1, 1);
  if (!o.grid.empty()) {
    grid = parse_grid(o.grid);
    if (grid.size() != p) {
      throw ConfigError("grid " + grid.to_string() + " has " + std::to_string(grid.size()) +
                        " ranks but -P is " + std::to_string(p));
    }
  } else {
    const GridChoice choice = select_grid_randmatmul(n1, n2, r, p);
    grid = choice.grid;
    note = choice.note;
    if (!rand_matmul_runnable(n1, n2, r, grid)) {
      std::optional<GridSpec> alt;
      Rational best;
      for (const GridSpec& g : factor_triples(p)) {
        if (!rand_matmul_runnable(n1, n2, r, g)) continue;
        const Rational cost = model_cost_randmatmul(n1, n2, r, g).exact_bandwidth;
        if (!alt || cost < best) {
          alt = g;
          best = cost;
        }
      }
      if (alt) {
        note = "selected grid " + grid.to_string() + " cannot split the tiles; using " +
               alt->to_string();
        grid = *alt;
      }
    }
  }
  if (!rand_matmul_runnable(n1, n2, r, grid)) throw ConfigError(sketch_grid_error(n1, n2, r, grid));

  const bool verify = n1 <= c.oracle_cutoff;
  struct RankOut {
    PhaseTimes times;
    DenseMatrix b;
  };
  const Backend backend = parse_backend(c.backend);
  auto run = run_spmd(p, backend, [&](Communicator& comm) {
    RankOut ro;
    const DistMatrix local = scatter_matrix(a, DistLayout(n1, n2, grid, BlockRole::a_style),
                                            comm.rank());
    const DistMatrix b = rand_matmul(comm, local, seed, r, &ro.times);
    if (verify) {
      DenseMatrix full = gather_matrix(comm, b);
      if (comm.rank() == 0) ro.b = std::move(full);
    }
    return ro;
  });

  CsvTotals totals;
  if (verify) {
    const DenseMatrix omega = gen_block(seed, n2, r, 0, n2, 0, r);
    totals.residual = relative_frobenius_error(run.results[0].b, gemm(a, omega));
  }
  std::vector<PhaseTimes> times;
  for (auto& ro : run.results) times.push_back(std::move(ro.times));

  Sink sink(c.output, out);
  std::vector<std::string> meta = {
      "n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) + " r=" + std::to_string(r) +
          " P=" + std::to_string(p),
      "seed=" + c.seed + " distribution=" + std::string(to_string(seed.distribution)),
      "backend=" + c.backend + " grid=" + grid.to_string(),
      source,
      "predicted_words=" + model_cost_randmatmul(n1, n2, r, grid).exact_bandwidth.to_string()};
  if (!note.empty()) meta.push_back("note: " + note);
  if (!verify) meta.push_back("residual skipped: n1 exceeds the oracle cutoff");
  write_header(sink.stream(), "sketch", meta);
  write_phase_csv(sink.stream(),
                  {{"generate-omega", {phases::generate_omega}, {}},
                   {"allgather-A", {phases::allgather_a}, {sites::allgather_a}},
                   {"local-multiply", {phases::first_multiply}, {}},
                   {"reduce-scatter-B", {phases::reduce_scatter_b}, {sites::reduce_scatter_b}}},
                  run.report, times, totals);

  if (totals.residual && !(*totals.residual <= c.verify_tol)) {
    err << "verification failed: residual " << fmt(*totals.residual) << " exceeds "
        << fmt(c.verify_tol) << '\n';
    return exit_verification;
  }
  return exit_ok;
}

// ---------------------------------------------------------------- nystrom

struct NystromCliOptions {
  CommonOptions common;
  InputOptions input;
  std::size_t n = 0;
  std::string variant = "redist";
  std::string grid;
  std::string grid2;
  double tol = 1e-12;
  bool skip_check = false;
  bool reuse_omega = false;
};

double asymmetry(const DenseMatrix& a) {
  double diff = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const double d = a(i, j) - a(j, i);
      diff += d * d;
    }
  const double norm = frobenius_norm(a);
  return norm == 0.0 ? 0.0 : std::sqrt(diff) / norm;
}

int cmd_nystrom(const NystromCliOptions& o, std::ostream& out, std::ostream& err) {
  const auto& c = o.common;
  if (c.procs < 1) throw ConfigError("-P must be >= 1");
  const SketchSeed seed{parse_seed(c.seed),
                        c.distribution.empty() ? Distribution::gaussian
                                               : parse_distribution(c.distribution)};
  const NystromVariant variant = parse_variant(o.variant);
  auto [a, source] = o.input.load(o.n, o.n, "lowrank");
  if (a.rows() != a.cols()) {
    throw ConfigError("nystrom input must be square, got " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()));
  }
  if (o.n && a.rows() != o.n) throw ConfigError("input size disagrees with --n");
  if (!o.skip_check && asymmetry(a) > 1e-10) {
    throw ConfigError("input is not symmetric (relative asymmetry " + fmt(asymmetry(a)) +
                      "); pass --skip-check to run anyway");
  }
  const std::size_t n = a.rows(), r = c.r;
  if (r < 1 || r >= n) {
    throw ConfigError("r must satisfy 1 <= r < n (r=" + std::to_string(r) +
                      ", n=" + std::to_string(n) + ")");
  }
  const int p = static_cast<int>(c.procs);

  std::string note;
  GridSpec first(p, 1, 1), second(p, 1, 1);
  if (!o.grid.empty() || !o.grid2.empty()) {
    if (o.grid.empty() || (o.grid2.empty() && variant == NystromVariant::redist)) {
      throw ConfigError("redist needs both --grid and --grid2");
    }
    first = parse_grid(o.grid);
    second = o.grid2.empty() ? first : parse_grid(o.grid2);
    if (variant == NystromVariant::noredist && first != second) {
      throw ConfigError("noredist requires --grid2 to equal --grid");
    }
    if (first.size() != p || second.size() != p) {
      throw ConfigError("grid sizes must equal -P=" + std::to_string(p));
    }
  } else {
    const GridPairChoice choice = select_grids_nystrom(n, r, p, variant);
    first = choice.first;
    second = choice.second;
    note = choice.note;
    if (!nystrom_runnable(n, r, first, second)) {
      std::optional<std::pair<GridSpec, GridSpec>> alt;
      Rational best;
      const auto triples = factor_triples(p);
      for (const GridSpec& g : triples) {
        for (const GridSpec& h : triples) {
          if (variant == NystromVariant::noredist && g != h) continue;
          if (!nystrom_runnable(n, r, g, h)) continue;
          const Rational cost = model_cost_nystrom(n, r, g, h).exact_bandwidth;
          if (!alt || cost < best) {
            alt = std::pair{g, h};
            best = cost;
          }
        }
      }
      if (alt) {
        note = "selected grids " + first.to_string() + " / " + second.to_string() +
               " cannot split the tiles; using " + alt->first.to_string() + " / " +
               alt->second.to_string();
        first = alt->first;
        second = alt->second;
      }
    }
  }
  if (!nystrom_runnable(n, r, first, second)) {
    throw ConfigError(nystrom_grid_error(n, r, first, second));
  }

  const bool verify = n <= c.oracle_cutoff;
  struct RankOut {
    PhaseTimes times;
    DenseMatrix b;
    DenseMatrix c;
    bool reused = false;
  };
  const Backend backend = parse_backend(c.backend);
  auto run = run_spmd(p, backend, [&](Communicator& comm) {
    RankOut ro;
    const DistMatrix local =
        scatter_matrix(a, DistLayout(n, n, first, BlockRole::a_style), comm.rank());
    NystromOptions opts;
    opts.reuse_omega = o.reuse_omega;
    opts.times = &ro.times;
    NystromOutput res = nystrom(comm, local, seed, r, second, opts);
    ro.reused = res.omega_reused;
    if (verify) {
      DenseMatrix b = gather_matrix(comm, res.b);
      DenseMatrix cc = gather_matrix(comm, res.c);
      if (comm.rank() == 0) {
        ro.b = std::move(b);
        ro.c = std::move(cc);
      }
    }
    return ro;
  });

  CsvTotals totals;
  if (verify) {
    const DenseMatrix omega = gen_block(seed, n, r, 0, n, 0, r);
    const DenseMatrix bs = gemm(a, omega);
    const DenseMatrix cs = gemm(omega, bs, Transpose::yes);
    totals.residual = std::max(relative_frobenius_error(run.results[0].b, bs),
                               relative_frobenius_error(run.results[0].c, cs));
    totals.error = nystrom_error(a, run.results[0].b, run.results[0].c, o.tol);
  }
  std::vector<PhaseTimes> times;
  for (auto& ro : run.results) times.push_back(std::move(ro.times));

  Sink sink(c.output, out);
  std::vector<std::string> meta = {
      "n=" + std::to_string(n) + " r=" + std::to_string(r) + " P=" + std::to_string(p),
      "seed=" + c.seed + " distribution=" + std::string(to_string(seed.distribution)),
      "backend=" + c.backend + " variant=" + std::string(to_string(variant)) +
          " grid=" + first.to_string() + " grid2=" + second.to_string(),
      source,
      "pinv_tol=" + fmt(o.tol) + " reuse_omega=" + (run.results[0].reused ? "yes" : "no"),
      "predicted_words=" + model_cost_nystrom(n, r, first, second).exact_bandwidth.to_string()};
  if (!note.empty()) meta.push_back("note: " + note);
  if (!verify) meta.push_back("residual and error skipped: n exceeds the oracle cutoff");
  write_header(sink.stream(), "nystrom", meta);
  write_phase_csv(
      sink.stream(),
      {{"generate-omega", {phases::generate_omega}, {}},
       {"first-matmul",
        {phases::allgather_a, phases::first_multiply, phases::reduce_scatter_b},
        {sites::allgather_a, sites::reduce_scatter_b}},
       {"all-to-all", {phases::all_to_all}, {sites::redistribute_b}},
       {"unpack", {phases::unpack}, {}},
       {"second-matmul", {phases::allgather_b, phases::second_multiply}, {sites::allgather_b}},
       {"reduce-scatter", {phases::reduce_scatter_c}, {sites::reduce_scatter_c}}},
      run.report, times, totals);

  if (totals.residual && !(*totals.residual <= c.verify_tol)) {
    err << "verification failed: residual " << fmt(*totals.residual) << " exceeds "
        << fmt(c.verify_tol) << '\n';
    return exit_verification;
  }
  return exit_ok;
}

// ---------------------------------------------------------------- bounds

struct BoundsOptions {
  std::string problem = "randmatmul";
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::vector<std::string> procs;
  std::string variant = "both";
  std::string output;
};

// "8", "1:64" (every integer) or "1:4096:x2" (geometric).
std::vector<std::int64_t> parse_sweep(const std::vector<std::string>& items) {
  std::vector<std::int64_t> out;
  for (const auto& item : items) {
    std::vector<std::string> parts;
    std::stringstream ss(item);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() == 1) {
      out.push_back(static_cast<std::int64_t>(parse_count(parts[0], "P")));
      continue;
    }
    if (parts.size() > 3) throw ConfigError("invalid sweep '" + item + "'");
    const auto lo = static_cast<std::int64_t>(parse_count(parts[0], "sweep start"));
    const auto hi = static_cast<std::int64_t>(parse_count(parts[1], "sweep end"));
    if (lo < 1 || hi < lo) throw ConfigError("empty or invalid sweep '" + item + "'");
    if (parts.size() == 2) {
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      if (parts[2].size() < 2 || parts[2][0] != 'x') {
        throw ConfigError("invalid sweep step '" + parts[2] + "' (expected xK)");
      }
      const auto k = static_cast<std::int64_t>(parse_count(parts[2].substr(1), "sweep factor"));
      if (k < 2) throw ConfigError("sweep factor must be >= 2");
      for (std::int64_t v = lo; v <= hi; v *= k) out.push_back(v);
    }
  }
  for (auto v : out)
    if (v < 1) throw ConfigError("P values must be >= 1");
  if (out.empty()) throw ConfigError("empty P sweep");
  return out;
}

std::string exact_gap(const Rational& predicted, const Surd& bound) {
  return fmt(predicted.to_double() - bound.to_double());
}

int cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  const auto sweep = parse_sweep(o.procs);
  Sink sink(o.output, out);
  std::ostream& os = sink.stream();
  os << "# sketchcomm " << SKETCHCOMM_GIT_DESCRIBE << "\n# command: bounds\n";
  os << "problem,variant,n1,n2,r,P,case,W,grid1,grid2,predicted,gap\n";

  if (o.problem == "randmatmul") {
    if (o.n1 < 1 || o.n2 < 1 || o.r < 1) throw ConfigError("bounds needs --n1, --n2 and -r");
    if (o.r >= o.n2) throw ConfigError("randmatmul bounds require r < n2");
    for (auto p : sweep) {
      const BoundResult lb = lb_randmatmul(o.n1, o.n2, o.r, p);
      const GridChoice choice = select_grid_randmatmul(o.n1, o.n2, o.r, p);
      const CostPrediction cost = model_cost_randmatmul(o.n1, o.n2, o.r, choice.grid);
      os << "randmatmul,-," << o.n1 << ',' << o.n2 << ',' << o.r << ',' << p << ','
         << lb.case_id << ',' << fmt(lb.words) << ',' << choice.grid.to_string() << ",-,"
         << fmt(cost.bandwidth_words) << ',' << exact_gap(cost.exact_bandwidth, lb.exact_words)
         << '\n';
    }
    return exit_ok;
  }
  if (o.problem != "nystrom") throw ConfigError("unknown problem '" + o.problem + "'");
  if (o.n < 1 || o.r < 1) throw ConfigError("nystrom bounds need --n and -r");
  if (o.r >= o.n) throw ConfigError("nystrom bounds require r < n");
  std::vector<NystromVariant> variants;
  if (o.variant == "both") {
    variants = {NystromVariant::redist, NystromVariant::noredist};
  } else {
    variants = {parse_variant(o.variant)};
  }
  std::optional<std::int64_t> crossover;
  for (auto p : sweep) {
    const BoundResult lb = lb_nystrom(o.n, o.r, p);
    std::vector<Rational> costs;
    for (auto v : variants) {
      const GridPairChoice choice = select_grids_nystrom(o.n, o.r, p, v);
      const CostPrediction cost = model_cost_nystrom(o.n, o.r, choice.first, choice.second);
      costs.push_back(cost.exact_bandwidth);
      os << "nystrom," << to_string(v) << ',' << o.n << ',' << o.n << ',' << o.r << ',' << p
         << ',' << lb.case_id << ',' << fmt(lb.words) << ',' << choice.first.to_string() << ','
         << choice.second.to_string() << ',' << fmt(cost.bandwidth_words) << ','
         << exact_gap(cost.exact_bandwidth, lb.exact_words) << '\n';
    }
    if (costs.size() == 2 && !crossover && costs[0] < costs[1]) crossover = p;
  }
  if (variants.size() == 2) {
    os << "# crossover_P=" << (crossover ? std::to_string(*crossover) : "none") << '\n';
  }
  return exit_ok;
}

// ---------------------------------------------------------------- kernel

struct KernelOptions {
  std::string points;
  std::string kernel = "linear";
  std::string sigma = "frob";
  std::string output;
  std::string format;
};

int cmd_kernel(const KernelOptions& o, std::ostream& out) {
  const KernelSpec spec = parse_kernel(o.kernel, o.sigma);
  const DenseMatrix pts = read_matrix(o.points);
  const BuiltKernel k = build_kernel(pts, spec);
  MatrixFormat format = format_from_path(o.output);
  if (o.format == "binary") format = MatrixFormat::binary;
  if (o.format == "csv") format = MatrixFormat::csv;
  write_matrix(o.output, k.matrix, format);
  out << "wrote " << k.matrix.rows() << "x" << k.matrix.cols() << ' '
      << (spec.rbf ? "rbf" : "linear") << " kernel";
  if (spec.rbf) out << " (sigma=" << fmt(k.sigma) << ")";
  out << " to " << o.output << '\n';
  return exit_ok;
}

int exit_code_for(const std::exception_ptr& e, std::ostream& err) {
  try {
    std::rethrow_exception(e);
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_config;
  } catch (const MatrixIoError& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_config;
  } catch (const DeadlockError& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_deadlock;
  } catch (const RankFailure& ex) {
    err << "error: " << ex.what() << '\n';
    try {
      std::rethrow_exception(ex.cause());
    } catch (const std::invalid_argument&) {
      return exit_config;
    } catch (...) {
      return exit_failure;
    }
  } catch (const FabricError& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_failure;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_config;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_failure;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Communication-instrumented randomized sketching and Nystrom approximation"};
  app.require_subcommand(1);

  SketchOptions sketch;
  auto* sk = app.add_subcommand("sketch", "B = A * Omega on a 3D grid; per-phase cost CSV");
  sketch.common.add_to(*sk);
  sketch.input.add_to(*sk, false);
  sk->add_option("--n1", sketch.n1, "Rows of A (synthetic input)");
  sk->add_option("--n2", sketch.n2, "Columns of A (synthetic input; default n1)");
  sk->add_option("--grid", sketch.grid, "Grid override, e.g. 2x2x1");

  NystromCliOptions nys;
  auto* ny = app.add_subcommand("nystrom", "B = A * Omega, C = Omega^T * B; cost and error CSV");
  nys.common.add_to(*ny);
  nys.input.add_to(*ny, true);
  ny->add_option("--n", nys.n, "Order of A (synthetic input)");
  ny->add_option("--variant", nys.variant, "redist | noredist")
      ->check(CLI::IsMember({"redist", "noredist"}));
  ny->add_option("--grid", nys.grid, "First grid override");
  ny->add_option("--grid2", nys.grid2, "Second grid override");
  ny->add_option("--tol", nys.tol, "Pseudoinverse tolerance relative to the largest eigenvalue");
  ny->add_flag("--skip-check", nys.skip_check, "Skip the input symmetry check");
  ny->add_flag("--reuse-omega", nys.reuse_omega,
               "Reuse the first Omega block in the second multiply when it matches");

  BoundsOptions bounds;
  auto* bo = app.add_subcommand("bounds", "Lower bounds, selected grids and predicted costs");
  bo->add_option("--problem", bounds.problem, "randmatmul | nystrom")
      ->check(CLI::IsMember({"randmatmul", "nystrom"}));
  bo->add_option("--n1", bounds.n1, "Rows of A (randmatmul)");
  bo->add_option("--n2", bounds.n2, "Columns of A (randmatmul)");
  bo->add_option("--n", bounds.n, "Order of A (nystrom)");
  bo->add_option("-r,--rank-sketch", bounds.r, "Sketch size r")->required();
  bo->add_option("-P,--procs", bounds.procs, "P values: N, A:B or A:B:xK")->required();
  bo->add_option("--variant", bounds.variant, "redist | noredist | both (nystrom)")
      ->check(CLI::IsMember({"redist", "noredist", "both"}));
  bo->add_option("-o,--output", bounds.output, "CSV output path (default stdout)");

  KernelOptions kern;
  auto* ke = app.add_subcommand("kernel", "Write the kernel matrix of a point file");
  ke->add_option("--points", kern.points, "Point file, one point per row")->required();
  ke->add_option("--kernel", kern.kernel, "linear | rbf | rbf:<sigma>");
  ke->add_option("--sigma", kern.sigma, "RBF width: a number or 'frob'");
  ke->add_option("-o,--output", kern.output, "Output matrix path")->required();
  ke->add_option("--format", kern.format, "binary | csv (default from the extension)")
      ->check(CLI::IsMember({"binary", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*sk) return cmd_sketch(sketch, out, err);
    if (*ny) return cmd_nystrom(nys, out, err);
    if (*bo) return cmd_bounds(bounds, out);
    return cmd_kernel(kern, out);
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
}

}  // namespace sketchcomm::cli
