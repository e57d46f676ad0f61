// lpb — command-line front end for the lpbayes shared library.
//
// Subcommands: estimate, verify, construct-prior, fig1, scan-linearity.
// Priors travel as JSON files, results as CSV or JSON. Exit codes:
//   0 success (for verify: the linearity check passed)
//   1 verify ran fine but the linearity check failed
//   2 usage, parse, or input-file errors
//   3 numerical failures
//   4 prior construction impossible (no admissible modulation frequency)

#include <lpbayes.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void bail(int code, const std::string& message) {
  throw CliError{code, message};
}

int exit_code_for(lpb_status s) {
  switch (s) {
    case LPB_OK:
      return 0;
    case LPB_ERR_INVALID_ARGUMENT:
    case LPB_ERR_NOT_SYMMETRIC:
    case LPB_ERR_NOT_PSD:
    case LPB_ERR_NOT_PD:
    case LPB_ERR_SINGULAR_COVARIANCE:
    case LPB_ERR_IMPROPER_PRIOR:
    case LPB_ERR_DEGREE_TOO_LARGE:
    case LPB_ERR_DIMENSION_TOO_LARGE:
    case LPB_ERR_RANK_DEFICIENT_GRID:
    case LPB_ERR_IO:
      return 2;
    case LPB_ERR_NO_ZERO_FOUND:
      return 4;
    default:
      return 3;
  }
}

void check(lpb_status s, const std::string& context) {
  if (s == LPB_OK) return;
  bail(exit_code_for(s), context + ": " + lpb_status_name(s) + " (" +
                             lpb_last_error() + ")");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double json_num(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      size_t pos = 0;
      const double d = std::stod(v.get<std::string>(), &pos);
      if (pos == v.get<std::string>().size()) return d;
    } catch (...) {
    }
  }
  bail(2, "expected a number (or decimal string) for " + what);
}

struct PriorHandle {
  lpb_prior* ptr = nullptr;
  PriorHandle() = default;
  explicit PriorHandle(lpb_prior* p) : ptr(p) {}
  PriorHandle(const PriorHandle&) = delete;
  PriorHandle& operator=(const PriorHandle&) = delete;
  PriorHandle(PriorHandle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  ~PriorHandle() { lpb_prior_free(ptr); }
  int dim() const { return lpb_prior_dim(ptr); }
};

std::vector<double> json_double_list(const json& v, const std::string& what) {
  if (!v.is_array()) bail(2, what + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) out.push_back(json_num(e, what));
  return out;
}

PriorHandle load_prior(const std::string& path) {
  std::ifstream in(path);
  if (!in) bail(2, "cannot open prior file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    bail(2, "prior file is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("type"))
    bail(2, "prior file must be an object with a \"type\" field");
  const std::string type = doc["type"].get<std::string>();

  lpb_prior* prior = nullptr;
  if (type == "gaussian") {
    const std::vector<double> mean = json_double_list(doc.at("mean"), "mean");
    const int n = static_cast<int>(mean.size());
    std::vector<double> cov;
    for (const json& row : doc.at("cov")) {
      const std::vector<double> r = json_double_list(row, "cov row");
      if (static_cast<int>(r.size()) != n) bail(2, "cov rows must have length n");
      cov.insert(cov.end(), r.begin(), r.end());
    }
    if (cov.size() != static_cast<size_t>(n) * n) bail(2, "cov must be n x n");
    check(lpb_prior_gaussian(n, mean.data(), cov.data(), &prior), "gaussian prior");
  } else if (type == "atomic") {
    const json& atoms = doc.at("atoms");
    if (!atoms.is_array() || atoms.empty()) bail(2, "atoms must be a nonempty array");
    const int n = atoms[0].is_array() ? static_cast<int>(atoms[0].size()) : 1;
    std::vector<double> flat;
    for (const json& a : atoms) {
      if (a.is_array()) {
        const std::vector<double> row = json_double_list(a, "atom");
        if (static_cast<int>(row.size()) != n) bail(2, "atoms must share a dimension");
        flat.insert(flat.end(), row.begin(), row.end());
      } else {
        if (n != 1) bail(2, "atoms must share a dimension");
        flat.push_back(json_num(a, "atom"));
      }
    }
    const std::vector<double> probs = json_double_list(doc.at("probs"), "probs");
    if (probs.size() * n != flat.size()) bail(2, "probs must match the atom count");
    check(lpb_prior_atomic(n, static_cast<int>(probs.size()), flat.data(),
                           probs.data(), &prior),
          "atomic prior");
  } else if (type == "grid") {
    const json& nodes = doc.contains("nodes") ? doc.at("nodes") : doc.at("axes");
    std::vector<std::vector<double>> axes;
    if (!nodes.is_array() || nodes.empty()) bail(2, "nodes must be a nonempty array");
    if (nodes[0].is_array()) {
      for (const json& axis : nodes) axes.push_back(json_double_list(axis, "axis"));
    } else {
      axes.push_back(json_double_list(nodes, "nodes"));
    }
    const int n = static_cast<int>(axes.size());
    std::vector<int> sizes;
    std::vector<double> concat;
    for (const auto& axis : axes) {
      sizes.push_back(static_cast<int>(axis.size()));
      concat.insert(concat.end(), axis.begin(), axis.end());
    }
    const std::vector<double> weights = json_double_list(doc.at("weights"), "weights");
    check(lpb_prior_grid(n, sizes.data(), concat.data(), weights.data(), &prior),
          "grid prior");
  } else if (type == "cosine") {
    check(lpb_prior_cosine(json_num(doc.at("a"), "a"), json_num(doc.at("rho"), "rho"),
                           json_num(doc.at("theta"), "theta"),
                           json_num(doc.at("omega"), "omega"), &prior),
          "cosine prior");
  } else {
    bail(2, "unknown prior type: " + type);
  }
  return PriorHandle(prior);
}

// "0.5", "0.5,0.2;0.2,0.4", or JSON "[[0.5,0.2],[0.2,0.4]]".
std::vector<double> parse_matrix(const std::string& text, int* n_out) {
  std::vector<std::vector<double>> rows;
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const std::exception& e) {
      bail(2, "cannot parse matrix: " + std::string(e.what()));
    }
    if (doc.is_array() && !doc.empty() && doc[0].is_array()) {
      for (const json& r : doc) rows.push_back(json_double_list(r, "matrix row"));
    } else {
      rows.push_back(json_double_list(doc, "matrix"));
    }
  } else {
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
      std::vector<double> r;
      std::stringstream rs(row);
      std::string cell;
      while (std::getline(rs, cell, ',')) {
        try {
          r.push_back(std::stod(cell));
        } catch (...) {
          bail(2, "cannot parse matrix entry: " + cell);
        }
      }
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  if (rows.empty()) bail(2, "empty matrix");
  const int n = static_cast<int>(rows.size());
  if (n == 1 && static_cast<int>(rows[0].size()) == 1) {
    *n_out = 1;
    return rows[0];
  }
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) bail(2, "matrix must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  *n_out = n;
  return flat;
}

struct Range {
  double lo, hi, step;
};

Range parse_range(const std::string& text) {
  Range r{};
  std::stringstream ss(text);
  std::string part;
  std::vector<double> vals;
  while (std::getline(ss, part, ':')) {
    try {
      vals.push_back(std::stod(part));
    } catch (...) {
      bail(2, "cannot parse range component: " + part);
    }
  }
  if (vals.size() != 3) bail(2, "ranges use the form min:max:step");
  r.lo = vals[0];
  r.hi = vals[1];
  r.step = vals[2];
  if (!(r.step > 0.0) || r.hi < r.lo) bail(2, "range requires step > 0 and max >= min");
  return r;
}

std::vector<double> range_values(const Range& r) {
  std::vector<double> v;
  const int count = static_cast<int>(std::floor((r.hi - r.lo) / r.step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) v.push_back(r.lo + i * r.step);
  return v;
}

// Per-dimension ranges separated by ';'; one range replicates across dims.
std::vector<double> build_y_grid(const std::string& spec, int n, int* count_out) {
  std::vector<Range> ranges;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';'))
    if (!part.empty()) ranges.push_back(parse_range(part));
  if (ranges.empty()) bail(2, "empty y range");
  if (static_cast<int>(ranges.size()) == 1 && n > 1) ranges.assign(n, ranges[0]);
  if (static_cast<int>(ranges.size()) != n)
    bail(2, "y range dimension does not match the prior dimension");

  std::vector<std::vector<double>> axes;
  for (const Range& r : ranges) axes.push_back(range_values(r));
  std::vector<double> grid;
  std::vector<size_t> idx(n, 0);
  for (;;) {
    for (int d = 0; d < n; ++d) grid.push_back(axes[d][idx[d]]);
    int d = n - 1;
    while (d >= 0 && ++idx[d] == axes[d].size()) idx[d--] = 0;
    if (d < 0) break;
  }
  *count_out = static_cast<int>(grid.size() / n);
  return grid;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) bail(2, "cannot open output file: " + tmp);
    out << content;
    if (!out) bail(2, "write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) bail(2, "cannot move output into place: " + ec.message());
}

lpb_quad_cfg make_cfg(double half_width, int nodes, double tol) {
  lpb_quad_cfg cfg = lpb_quad_cfg_default();
  cfg.half_width = half_width;
  cfg.nodes_per_dim = nodes;
  cfg.tol = tol;
  return cfg;
}

std::string density_path_for(const std::string& out) {
  std::filesystem::path p(out);
  std::filesystem::path dir = p.parent_path();
  const std::string stem = p.stem().string();
  return (dir / (stem + "_density.csv")).string();
}

// ---------------------------------------------------------------------------

int cmd_estimate(const std::string& prior_path, double p, double k,
                 const std::string& yspec, const lpb_quad_cfg& cfg,
                 const std::string& out, const std::string& format) {
  const PriorHandle prior = load_prior(prior_path);
  const int n = prior.dim();
  int count = 0;
  const std::vector<double> ys = build_y_grid(yspec, n, &count);

  std::vector<double> fs(ys.size());
  for (int j = 0; j < count; ++j)
    check(lpb_optimal_estimate(prior.ptr, ys.data() + static_cast<size_t>(j) * n,
                               p, k, &cfg, fs.data() + static_cast<size_t>(j) * n),
          "estimate");

  if (format == "json") {
    json cols = json::array();
    for (int d = 0; d < n; ++d) cols.push_back("y" + std::to_string(d + 1));
    for (int d = 0; d < n; ++d) cols.push_back("f" + std::to_string(d + 1));
    json rows = json::array();
    for (int j = 0; j < count; ++j) {
      json row = json::array();
      for (int d = 0; d < n; ++d) row.push_back(ys[static_cast<size_t>(j) * n + d]);
      for (int d = 0; d < n; ++d) row.push_back(fs[static_cast<size_t>(j) * n + d]);
      rows.push_back(std::move(row));
    }
    atomic_write(out, json{{"columns", cols}, {"rows", rows}}.dump(2) + "\n");
  } else {
    std::string csv;
    if (n == 1) {
      csv = "y,f\n";
    } else {
      for (int d = 0; d < n; ++d) csv += "y" + std::to_string(d + 1) + ",";
      for (int d = 0; d < n; ++d)
        csv += "f" + std::to_string(d + 1) + (d + 1 < n ? "," : "\n");
    }
    for (int j = 0; j < count; ++j) {
      for (int d = 0; d < n; ++d) csv += fmt(ys[static_cast<size_t>(j) * n + d]) + ",";
      for (int d = 0; d < n; ++d)
        csv += fmt(fs[static_cast<size_t>(j) * n + d]) + (d + 1 < n ? "," : "\n");
    }
    atomic_write(out, csv);
  }
  return 0;
}

int cmd_verify(const std::string& prior_path, const std::string& a_text, double p,
               double k, const std::string& yspec, const lpb_quad_cfg& cfg,
               const std::string& out, const std::string& format) {
  const PriorHandle prior = load_prior(prior_path);
  const int n = prior.dim();
  int an = 0;
  const std::vector<double> a = parse_matrix(a_text, &an);
  if (an != n) bail(2, "matrix dimension does not match the prior dimension");
  int count = 0;
  const std::vector<double> ys = build_y_grid(yspec, n, &count);

  std::vector<double> norms(count);
  double max_norm = 0.0;
  check(lpb_orthogonality_residual(prior.ptr, a.data(), p, k, count, ys.data(),
                                   &cfg, norms.data(), &max_norm),
        "verify");
  const bool pass = max_norm <= 1e-6;

  if (format == "json") {
    json rows = json::array();
    for (int j = 0; j < count; ++j) {
      json y = json::array();
      for (int d = 0; d < n; ++d) y.push_back(ys[static_cast<size_t>(j) * n + d]);
      rows.push_back(json{{"y", y}, {"residual_norm", norms[j]}});
    }
    atomic_write(out, json{{"rows", rows}, {"max_norm", max_norm}, {"pass", pass}}
                              .dump(2) +
                          "\n");
  } else {
    std::string csv;
    for (int d = 0; d < n; ++d) csv += "y" + std::to_string(d + 1) + ",";
    csv += "residual_norm\n";
    for (int j = 0; j < count; ++j) {
      for (int d = 0; d < n; ++d) csv += fmt(ys[static_cast<size_t>(j) * n + d]) + ",";
      csv += fmt(norms[j]) + "\n";
    }
    csv += "max_norm=" + fmt(max_norm) + " pass=" + (pass ? "true" : "false") + "\n";
    atomic_write(out, csv);
  }
  std::printf("max_norm=%s pass=%s\n", fmt(max_norm).c_str(), pass ? "true" : "false");
  return pass ? 0 : 1;
}

int cmd_construct_prior(double p, double a, double rho, double theta,
                        int omega_index, bool has_omega_index,
                        const std::string& out, std::string density_out) {
  double omegas[256];
  int count = 0;
  check(lpb_omega_for_p(p, 256, omegas, &count), "frequency search");

  int selected = count - 1;  // largest admissible frequency by default
  if (has_omega_index) {
    if (omega_index < 0 || omega_index >= count)
      bail(2, "--omega-index out of range (0.." + std::to_string(count - 1) + ")");
    selected = omega_index;
  }
  const double omega = omegas[selected];

  lpb_prior* raw = nullptr;
  check(lpb_prior_cosine(a, rho, theta, omega, &raw), "cosine prior");
  const PriorHandle prior(raw);

  json doc{{"type", "cosine"}, {"a", a}, {"rho", rho}, {"theta", theta},
           {"omega", omega}};
  atomic_write(out, doc.dump(2) + "\n");

  const double sigma = std::sqrt(a / (1.0 - a));
  const double hi = 6.0 * sigma;
  const int points = 2401;
  std::string csv = "x,density\n";
  for (int i = 0; i < points; ++i) {
    const double x = -hi + i * (2.0 * hi / (points - 1));
    double d = 0.0;
    check(lpb_prior_density(prior.ptr, &x, &d), "density");
    csv += fmt(x) + "," + fmt(d) + "\n";
  }
  if (density_out.empty()) density_out = density_path_for(out);
  atomic_write(density_out, csv);

  std::string listing = "omega candidates:";
  for (int i = 0; i < count; ++i) {
    listing += " " + fmt_full(omegas[i]);
    if (i == selected) listing += "*";
  }
  std::printf("%s\nselected omega = %s\nprior: %s\ndensity table: %s\n",
              listing.c_str(), fmt_full(omega).c_str(), out.c_str(),
              density_out.c_str());
  return 0;
}

int cmd_fig1(double p, double a, double rho, double theta,
             const std::string& xspec, const std::string& out) {
  std::vector<double> omegas_nonneg;
  if (rho == 0.0) {
    omegas_nonneg.push_back(0.0);
  } else {
    double omegas[256];
    int count = 0;
    check(lpb_omega_for_p(p, 256, omegas, &count), "frequency search");
    for (int i = 0; i < count; ++i)
      if (omegas[i] >= 0.0) omegas_nonneg.push_back(omegas[i]);
  }

  const double sigma = std::sqrt(a / (1.0 - a));
  Range xr{-6.0 * sigma, 6.0 * sigma, 0.005 * sigma};
  if (!xspec.empty()) xr = parse_range(xspec);
  const std::vector<double> xs = range_values(xr);

  std::vector<PriorHandle> priors;
  std::string header = "x";
  for (double w : omegas_nonneg) {
    lpb_prior* raw = nullptr;
    check(lpb_prior_cosine(a, rho, theta, w, &raw), "cosine prior");
    priors.emplace_back(raw);
    header += ",density_omega_" + fmt(w);
  }

  std::string csv = header + "\n";
  for (double x : xs) {
    csv += fmt(x);
    for (const PriorHandle& prior : priors) {
      double d = 0.0;
      check(lpb_prior_density(prior.ptr, &x, &d), "density");
      csv += "," + fmt(d);
    }
    csv += "\n";
  }
  atomic_write(out, csv);
  return 0;
}

int cmd_scan_linearity(const std::string& prior_path, double p, double k,
                       const std::string& yspec, const lpb_quad_cfg& cfg,
                       const std::string& out, const std::string& format) {
  const PriorHandle prior = load_prior(prior_path);
  const int n = prior.dim();
  int count = 0;
  const std::vector<double> ys = build_y_grid(yspec, n, &count);

  std::vector<double> a(static_cast<size_t>(n) * n);
  double max_dev = 0.0;
  check(lpb_fit_best_linear(prior.ptr, p, k, count, ys.data(), &cfg, a.data(),
                            &max_dev),
        "linear fit");
  const bool linear = max_dev <= 1e-5;
  const std::string verdict = linear ? "linear" : "nonlinear";

  if (format == "json") {
    json am = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back(a[static_cast<size_t>(i) * n + j]);
      am.push_back(std::move(row));
    }
    atomic_write(out, json{{"best_fit_a", am},
                           {"max_deviation", max_dev},
                           {"verdict", verdict}}.dump(2) +
                          "\n");
  } else {
    std::string csv;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        csv += "a_" + std::to_string(i + 1) + std::to_string(j + 1) + ",";
    csv += "max_deviation,verdict\n";
    for (size_t i = 0; i < a.size(); ++i) csv += fmt(a[i]) + ",";
    csv += fmt(max_dev) + "," + verdict + "\n";
    atomic_write(out, csv);
  }
  std::printf("verdict=%s max_deviation=%s\n", verdict.c_str(), fmt(max_dev).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal Bayesian L^p estimation under standard Gaussian noise"};
  app.require_subcommand(1);

  std::string prior_path, a_text, yspec, xspec, out, density_out, format = "csv";
  double p = 2.0, k = 0.0, a_param = 0.5, rho = 1.0, theta = 0.0;
  double half_width = 8.0, tol = 1e-10;
  int nodes = 801, omega_index = 0;
  unsigned long long seed = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_prior) {
    if (needs_prior)
      cmd->add_option("--prior", prior_path, "prior JSON file")->required();
    cmd->add_option("--p", p, "loss exponent p");
    cmd->add_option("--k", k, "loss exponent k (defaults to p)");
    cmd->add_option("--half-width", half_width, "quadrature truncation radius");
    cmd->add_option("--nodes", nodes, "quadrature nodes per dimension (odd)");
    cmd->add_option("--tol", tol, "quadrature tolerance");
    cmd->add_option("--seed", seed,
                    "random seed (reserved; these outputs are deterministic)");
    cmd->add_option("--out", out, "output file")->required();
    cmd->add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* estimate =
      app.add_subcommand("estimate", "tabulate the optimal estimator on a y grid");
  add_common(estimate, true);
  estimate->add_option("--y-range", yspec,
                       "y grid min:max:step (per dim, ';' separated)");

  CLI::App* verify = app.add_subcommand(
      "verify", "orthogonality residual of a candidate linear estimator");
  add_common(verify, true);
  verify
      ->add_option("--A", a_text,
                   "candidate linear map (scalar, 'a11,a12;a21,a22', or JSON)")
      ->required();
  verify->add_option("--y-range", yspec,
                     "y grid min:max:step (per dim, ';' separated)");

  CLI::App* construct = app.add_subcommand(
      "construct-prior",
      "build a cosine-modulated prior that induces a linear L^p estimator (p > 2)");
  add_common(construct, false);
  construct->add_option("--a", a_param, "envelope parameter in (0,1)");
  construct->add_option("--rho", rho, "modulation depth in [-1,1]");
  construct->add_option("--theta", theta, "modulation phase");
  CLI::Option* oidx = construct->add_option(
      "--omega-index", omega_index,
      "index into the admissible frequency list (default: largest)");
  construct->add_option("--density-out", density_out,
                        "density table path (default: <out>_density.csv)");

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "density table for the admissible cosine priors (default p=4, rho=1)");
  add_common(fig1, false);
  fig1->add_option("--a", a_param, "envelope parameter in (0,1)");
  fig1->add_option("--rho", rho, "modulation depth in [-1,1]");
  fig1->add_option("--theta", theta, "modulation phase");
  fig1->add_option("--x-range", xspec, "x grid min:max:step (default -6s:6s:0.005s)");

  CLI::App* scan = app.add_subcommand(
      "scan-linearity", "fit the best linear map and report a linear/nonlinear verdict");
  add_common(scan, true);
  scan->add_option("--y-range", yspec,
                   "y grid min:max:step (per dim, ';' separated)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (k == 0.0) k = p;
    if (yspec.empty()) yspec = "-4:4:0.5";
    const lpb_quad_cfg cfg = make_cfg(half_width, nodes, tol);
    if (estimate->parsed())
      return cmd_estimate(prior_path, p, k, yspec, cfg, out, format);
    if (verify->parsed())
      return cmd_verify(prior_path, a_text, p, k, yspec, cfg, out, format);
    if (construct->parsed()) {
      if (construct->count("--p") == 0) bail(2, "construct-prior requires --p (> 2)");
      return cmd_construct_prior(p, a_param, rho, theta, omega_index,
                                 oidx->count() > 0, out, density_out);
    }
    if (fig1->parsed()) {
      if (fig1->count("--p") == 0) p = 4.0;
      return cmd_fig1(p, a_param, rho, theta, xspec, out);
    }
    if (scan->parsed())
      return cmd_scan_linearity(prior_path, p, k, yspec, cfg, out, format);
    bail(2, "no subcommand selected");
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
