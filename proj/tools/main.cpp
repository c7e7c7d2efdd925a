// planewave CLI: classify / isotropy / geodesic / probe / verify-isometry /
// transform / sample-metric over homogeneous plane-wave model files.
//
// Exit codes: 0 success, 1 verification failed, 2 parse error,
// 3 contract/domain error, 4 numeric failure.
#include "planewave/homogeneous.hpp"
#include "planewave/isometry.hpp"
#include "planewave/model_io.hpp"
#include "planewave/rng.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pw = planewave;

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_matrix(const pw::Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (!out.empty()) out += ' ';
      out += fmt(m(i, j));
    }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pw::domain_error("cannot open output file '" + path + "'");
  out << content;
}

std::vector<double> parse_csv_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw pw::parse_error("bad number in list: '" + item + "'");
    }
  }
  return out;
}

pw::Matrix matrix_from_list(const std::vector<double>& vals, int n, const char* name) {
  if (static_cast<int>(vals.size()) != n * n)
    throw pw::parse_error(std::string(name) + " needs n*n = " + std::to_string(n * n) +
                          " comma-separated numbers");
  pw::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = vals[i * n + j];
  return m;
}

pw::Vector vector_from_list(const std::vector<double>& vals, int n, const char* name) {
  if (static_cast<int>(vals.size()) != n)
    throw pw::parse_error(std::string(name) + " needs n = " + std::to_string(n) +
                          " comma-separated numbers");
  pw::Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = vals[i];
  return v;
}

struct Options {
  std::string model_path;
  std::string out_path;
  std::uint64_t seed = 0;
  double step = 1e-3;
  double tmax = 10.0;
  int samples = 0;
  double tol = 0.0;
  std::string init;
  std::string A_list, lam_list, lamp_list;
  double c = 0.0;
  double u0 = std::numeric_limits<double>::quiet_NaN();
};

pw::HomogeneousModel load_model(const Options& opt) {
  pw::ModelFile mf = pw::parse_model_file(opt.model_path);
  mf.model.validate(mf.tol);
  return mf.model;
}

int run_classify(const Options& opt) {
  const pw::HomogeneousModel m = load_model(opt);
  const pw::Classification c = pw::classify(m, opt.tol > 0 ? opt.tol : 1e-10);
  const pw::Derivation L = m.derivation();

  std::ostringstream os;
  os << "flat " << (c.flat ? "true" : "false") << "\n";
  os << "cahen_wallach " << (c.cahen_wallach ? "true" : "false") << "\n";
  os << "complete " << (c.complete ? "true" : "false") << "\n";
  os << "isotropy_dim " << c.isotropy_dim << "\n";
  os << "L.delta " << fmt(L.delta) << "\n";
  os << "L.A " << fmt_matrix(L.A) << "\n";
  os << "L.B " << fmt_matrix(L.B) << "\n";
  os << "L.D " << fmt_matrix(L.D) << "\n";
  os << "L.C " << fmt_matrix(L.C) << "\n";
  write_output(opt.out_path, os.str());
  return 0;
}

int run_isotropy(const Options& opt) {
  const pw::HomogeneousModel m = load_model(opt);
  const auto basis = pw::isotropy_algebra(m.F, m.B);
  std::ostringstream os;
  os << "dim " << basis.size() << "\n";
  for (std::size_t k = 0; k < basis.size(); ++k)
    os << "E" << (k + 1) << " " << fmt_matrix(basis[k]) << "\n";
  write_output(opt.out_path, os.str());
  return 0;
}

int run_geodesic(const Options& opt) {
  const pw::HomogeneousModel m = load_model(opt);
  const pw::BrinkmannMetric g = pw::build_metric(m);
  const int n = m.n;

  pw::Point p0{0.0, pw::Vector::Zero(n), m.family == pw::Family::a ? 0.0 : 1.0};
  pw::Vector v0 = pw::Vector::Zero(n + 2);
  v0[n + 1] = m.family == pw::Family::a ? 1.0 : -1.0;
  if (!opt.init.empty()) {
    const auto vals = parse_csv_list(opt.init);
    if (static_cast<int>(vals.size()) != 2 * (n + 2))
      throw pw::parse_error("--init needs 2*(n+2) numbers: v,x..,u,dv,dx..,du");
    pw::Vector all(2 * (n + 2));
    for (std::size_t i = 0; i < vals.size(); ++i) all[i] = vals[i];
    p0 = pw::Point::from_coords(all.head(n + 2));
    v0 = all.tail(n + 2);
  }

  const pw::GeodesicTrace tr = pw::geodesic(g, p0, v0, opt.tmax, opt.step);
  write_output(opt.out_path, tr.to_csv());
  return 0;
}

int run_probe(const Options& opt) {
  const pw::HomogeneousModel m = load_model(opt);
  const pw::BrinkmannMetric g = pw::build_metric(m);
  const int samples = opt.samples > 0 ? opt.samples : 3;
  const pw::ProbeResult r = pw::completeness_probe(g, samples, opt.tmax, opt.step);

  std::ostringstream os;
  os << "verdict " << (r.incomplete ? "incomplete" : "no_escape_detected") << "\n";
  os << "traces " << r.traces << "\n";
  os << "tmax " << fmt(opt.tmax) << "\n";
  os << "step " << fmt(opt.step) << "\n";
  if (r.incomplete) {
    os << "witness.kind " << pw::to_string(r.witness.verdict) << "\n";
    os << "witness.exit_parameter " << fmt(r.witness.exit_parameter) << "\n";
    os << "witness.start.v " << fmt(r.witness_start.point.v) << "\n";
    os << "witness.start.u " << fmt(r.witness_start.point.u) << "\n";
    os << "witness.start.du "
       << fmt(r.witness_start.velocity[r.witness_start.velocity.size() - 1]) << "\n";
  }
  write_output(opt.out_path, os.str());
  return 0;
}

int run_verify_isometry(const Options& opt) {
  const pw::HomogeneousModel m = load_model(opt);
  const pw::BrinkmannMetric g = pw::build_metric(m);
  const int n = m.n;
  const pw::Interval span = g.alpha_span();

  pw::Matrix A = pw::Matrix::Identity(n, n);
  if (!opt.A_list.empty()) A = matrix_from_list(parse_csv_list(opt.A_list), n, "--A");
  pw::Vector lam = pw::Vector::Zero(n), lamp = pw::Vector::Zero(n);
  if (!opt.lam_list.empty()) lam = vector_from_list(parse_csv_list(opt.lam_list), n, "--lam");
  if (!opt.lamp_list.empty())
    lamp = vector_from_list(parse_csv_list(opt.lamp_list), n, "--lamp");
  double u0 = opt.u0;
  if (std::isnan(u0)) u0 = span.contains(0.0) ? 0.0 : std::sqrt(span.lo * span.hi);

  const pw::Isometry phi = pw::isometry_from_data(g, A, u0, lamp, lam, opt.c);

  const int samples = opt.samples > 0 ? opt.samples : 200;
  const double tol = opt.tol > 0 ? opt.tol : 1e-6;
  pw::SplitMix64 rng(opt.seed);
  const double pad = 0.05 * (span.hi - span.lo);

  double max_res = 0.0, sum_res = 0.0;
  for (int k = 0; k < samples; ++k) {
    pw::Point p;
    p.v = rng.uniform(-2.0, 2.0);
    p.x = pw::Vector::NullaryExpr(n, [&](Eigen::Index) { return rng.uniform(-2.0, 2.0); });
    p.u = rng.uniform(span.lo + pad, span.hi - pad);
    const double res = pw::pullback_residual(g, phi, p);
    max_res = std::max(max_res, res);
    sum_res += res;
  }

  std::ostringstream os;
  os << "samples " << samples << "\n";
  os << "max_residual " << fmt(max_res) << "\n";
  os << "mean_residual " << fmt(sum_res / samples) << "\n";
  os << "tol " << fmt(tol) << "\n";
  os << "result " << (max_res < tol ? "pass" : "fail") << "\n";
  write_output(opt.out_path, os.str());
  return max_res < tol ? 0 : 1;
}

int run_transform(const Options& opt) {
  const pw::HomogeneousModel m = load_model(opt);
  if (m.family != pw::Family::b)
    throw pw::contract_error("transform: family b model required");
  const pw::BrinkmannMetric g = pw::build_metric(m);
  const int n = m.n;
  const int samples = opt.samples > 0 ? opt.samples : 20;
  pw::SplitMix64 rng(opt.seed);

  auto pre = [&m](const pw::Point& p) { return pw::pre_transform_metric_at(m, p); };
  auto post = [&g](const pw::Point& p) { return pw::metric_at(g, p); };
  auto map = [&m](const pw::Point& p) { return pw::coordinate_transform_b(m, p); };

  std::ostringstream os;
  os << "v";
  for (int i = 1; i <= n; ++i) os << ",y" << i;
  os << ",u,vbar";
  for (int i = 1; i <= n; ++i) os << ",ybar" << i;
  os << ",ubar\n";

  double max_res = 0.0;
  for (int k = 0; k < samples; ++k) {
    pw::Point p;
    p.v = rng.uniform(-2.0, 2.0);
    p.x = pw::Vector::NullaryExpr(n, [&](Eigen::Index) { return rng.uniform(-2.0, 2.0); });
    p.u = rng.uniform(-2.0, 2.0);
    const pw::Point q = map(p);
    max_res = std::max(max_res, pw::pullback_residual(pre, post, map, p));
    os << fmt(p.v);
    for (int i = 0; i < n; ++i) os << ',' << fmt(p.x[i]);
    os << ',' << fmt(p.u) << ',' << fmt(q.v);
    for (int i = 0; i < n; ++i) os << ',' << fmt(q.x[i]);
    os << ',' << fmt(q.u) << "\n";
  }
  os << "# max_pullback_residual " << fmt(max_res) << "\n";
  write_output(opt.out_path, os.str());
  return 0;
}

int run_sample_metric(const Options& opt) {
  const pw::HomogeneousModel m = load_model(opt);
  const pw::BrinkmannMetric g = pw::build_metric(m);
  const int n = m.n;
  const int samples = opt.samples > 0 ? opt.samples : 50;
  const pw::Interval span = g.alpha_span();

  std::ostringstream os;
  os << "u";
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) os << ",S" << i << j;
  os << "\n";
  for (int k = 0; k < samples; ++k) {
    const double u = span.lo + (span.hi - span.lo) * (k + 0.5) / samples;
    const pw::Matrix s = g.S(u);
    os << fmt(u);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) os << ',' << fmt(s(i, j));
    os << "\n";
  }
  write_output(opt.out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homogeneous plane-wave toolkit"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool with_tmax) {
    cmd->add_option("--model", opt.model_path, "model file")->required();
    cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
    cmd->add_option("--seed", opt.seed, "PRNG seed (SplitMix64)");
    cmd->add_option("--step", opt.step, "integration/quadrature step");
    cmd->add_option("--samples", opt.samples, "sample count");
    cmd->add_option("--tol", opt.tol, "tolerance");
    if (with_tmax) cmd->add_option("--tmax", opt.tmax, "affine-parameter horizon");
  };

  auto* c_classify = app.add_subcommand("classify", "classification report");
  add_common(c_classify, false);
  auto* c_isotropy = app.add_subcommand("isotropy", "isotropy algebra basis");
  add_common(c_isotropy, false);
  auto* c_geodesic = app.add_subcommand("geodesic", "integrate one geodesic to CSV");
  add_common(c_geodesic, true);
  c_geodesic->add_option("--init", opt.init, "initial state v,x..,u,dv,dx..,du");
  auto* c_probe = app.add_subcommand("probe", "completeness probe");
  add_common(c_probe, true);
  auto* c_verify = app.add_subcommand("verify-isometry", "pullback residual check");
  add_common(c_verify, false);
  c_verify->add_option("--A", opt.A_list, "orthogonal matrix, row-major CSV");
  c_verify->add_option("--lam", opt.lam_list, "alpha(u0), CSV");
  c_verify->add_option("--lamp", opt.lamp_list, "alpha'(u0), CSV");
  c_verify->add_option("--c", opt.c, "v-translation constant");
  c_verify->add_option("--u0", opt.u0, "anchor leaf coordinate");
  auto* c_transform = app.add_subcommand("transform", "family-b chart change to CSV");
  add_common(c_transform, false);
  auto* c_sample = app.add_subcommand("sample-metric", "S(u) samples to CSV");
  add_common(c_sample, false);

  // Per-command defaults that differ from the shared ones.
  c_probe->parse_complete_callback([&] {
    if (!c_probe->count("--step")) opt.step = 0.2;
    if (!c_probe->count("--tmax")) opt.tmax = 1000.0;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c_classify->parsed()) return run_classify(opt);
    if (c_isotropy->parsed()) return run_isotropy(opt);
    if (c_geodesic->parsed()) return run_geodesic(opt);
    if (c_probe->parsed()) return run_probe(opt);
    if (c_verify->parsed()) return run_verify_isometry(opt);
    if (c_transform->parsed()) return run_transform(opt);
    if (c_sample->parsed()) return run_sample_metric(opt);
  } catch (const pw::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pw::contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pw::dimension_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pw::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pw::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
