#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "isofocal/decompcheck.hpp"
#include "isofocal/dynamics.hpp"
#include "isofocal/elliptic.hpp"
#include "isofocal/families.hpp"
#include "isofocal/flaschka.hpp"
#include "isofocal/pdcurve.hpp"

namespace isofocal::cli {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const VectorXc& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

json to_json(const Poly& p) { return to_json(VectorXc(p.coeffs())); }

namespace {

using cli::to_json;

json to_json(const MatrixXc& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(VectorXc(m.row(i).transpose())));
  return a;
}

json to_json(const MassedConfig& c) {
  return {{"positions", cli::to_json(c.positions)}, {"masses", cli::to_json(c.masses)}};
}

json to_json(const HomogPoly3& h) {
  json terms = json::array();
  for (int i = 0; i <= h.degree(); ++i)
    for (int j = 0; i + j <= h.degree(); ++j)
      terms.push_back({{"i", i}, {"j", j}, {"c", cli::to_json(h.at(i, j))}});
  return {{"degree", h.degree()}, {"terms", terms}};
}

json to_json(const FlaschkaCoords& c) {
  return {{"a_sq", cli::to_json(c.a_sq)}, {"b", cli::to_json(c.b)}, {"scale", cli::to_json(c.scale)}};
}

template <std::size_t K>
json to_json(const std::array<cplx, K>& a) {
  json r = json::array();
  for (cplx z : a) r.push_back(cli::to_json(z));
  return r;
}

MassedConfig config_from_json(const json& j) {
  return {vector_from_json(j.at("positions")), vector_from_json(j.at("masses"))};
}

std::vector<double> linspace(double a, double b, int count) {
  if (count < 1) throw InvalidInput("grid must be positive");
  std::vector<double> ts(count, a);
  for (int i = 1; i < count; ++i) ts[i] = a + (b - a) * i / (count - 1);
  return ts;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i]);
    os << '\n';
  }
  return os.str();
}

void complex_columns(std::vector<std::string>& h, const std::string& name) {
  h.push_back(name + "_re");
  h.push_back(name + "_im");
}

void push(std::vector<double>& row, cplx z) {
  row.push_back(z.real());
  row.push_back(z.imag());
}

struct Series {
  std::vector<std::pair<double, double>> pts;
  bool line = true;
};

std::string svg(const std::vector<Series>& series) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (auto [x, y] : s.pts) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  if (!(x0 <= x1)) x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double size = 480, cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  auto X = [&](double x) { return 250.0 + (x - cx) / span * size; };
  auto Y = [&](double y) { return 250.0 - (y - cy) / span * size; };
  static const char* colours[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#2c3e50", "#7f8c8d", "#16a085"};
  char buf[96];
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* col = colours[k % 8];
    const auto& s = series[k];
    if (s.line) {
      os << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
      bool first = true;
      for (auto [x, y] : s.pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        std::snprintf(buf, sizeof buf, "%s%.4f,%.4f", first ? "" : " ", X(x), Y(y));
        os << buf;
        first = false;
      }
      os << "\"/>\n";
    } else {
      for (auto [x, y] : s.pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"2\" fill=\"", X(x), Y(y));
        os << buf << col << "\"/>\n";
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const std::string& need_format(const JobConfig& job, const std::string& fallback,
                               std::initializer_list<const char*> allowed, std::string& holder) {
  holder = job.format.empty() ? fallback : job.format;
  for (const char* a : allowed)
    if (holder == a) return holder;
  throw InvalidInput(job.command + ": unsupported format " + holder);
}

FlowSpec flow_spec(const JobConfig& job) {
  FlowSpec spec;
  if (job.config) {
    const MardenPencil p = build_pencil(*job.config);
    spec.phi = p.phi;
    spec.f = p.f;
  } else {
    spec.phi = *job.phi;
    spec.f = *job.f;
  }
  spec.g = job.g;
  validate(spec, job.tol);
  return spec;
}

std::pair<Poly, Poly> pencil(const JobConfig& job) {
  if (job.config) {
    const MardenPencil p = build_pencil(*job.config);
    return {p.phi, p.f};
  }
  if (!job.phi || !job.f) throw InvalidInput(job.command + ": needs --phi and --f");
  return {*job.phi, *job.f};
}

JobResult run_simulate(const JobConfig& job) {
  std::string fmt;
  need_format(job, "csv", {"csv", "json", "svg"}, fmt);
  const FlowSpec spec = flow_spec(job);
  const int n = spec.n();
  const std::vector<double> ts = linspace(job.t0, job.t1, job.grid);
  const MatrixXc pos = track_roots(spec, std::vector<cplx>(ts.begin(), ts.end()));

  std::vector<std::vector<double>> rows;
  json jt = json::array(), jpos = json::array(), jm = json::array(), jc = json::array();
  std::vector<Series> paths(n);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const FlowState st = flow_state(spec, ts[k], job.tol);
    const VectorXc p = pos.col(k);
    VectorXc m = VectorXc::Constant(n, cplx(NAN, NAN));
    if (!st.collided) m = masses_by_residue(p, spec.numerator(ts[k]), spec.phi_t(ts[k]));
    std::vector<double> row{ts[k]};
    for (int i = 0; i < n; ++i) push(row, p(i));
    for (int i = 0; i < n; ++i) push(row, m(i));
    push(row, m.sum());
    row.push_back(st.collided ? 1.0 : 0.0);
    rows.push_back(row);
    jt.push_back(ts[k]);
    jpos.push_back(to_json(p));
    jm.push_back(st.collided ? json(nullptr) : to_json(m));
    jc.push_back(st.collided);
    for (int i = 0; i < n; ++i) paths[i].pts.emplace_back(p(i).real(), p(i).imag());
  }
  if (fmt == "svg") return {kOk, svg(paths), ""};
  if (fmt == "json")
    return {kOk, dump({{"command", "simulate"}, {"n", n}, {"t", jt}, {"positions", jpos}, {"masses", jm}, {"collided", jc}}), ""};
  std::vector<std::string> h{"t"};
  for (int i = 1; i <= n; ++i) complex_columns(h, "alpha" + std::to_string(i));
  for (int i = 1; i <= n; ++i) complex_columns(h, "m" + std::to_string(i));
  complex_columns(h, "mass_sum");
  h.push_back("collided");
  return {kOk, csv(h, rows), ""};
}

JobResult run_flaschka(const JobConfig& job) {
  std::string fmt;
  need_format(job, "json", {"json"}, fmt);
  const auto [phi, f] = pencil(job);
  const FlaschkaCoords c = to_flaschka(f, phi);
  const FlaschkaCoords e = evolve_flaschka(c, job.t1);
  const auto [f_t, phi_t] = from_flaschka(e);
  return {kOk, dump({{"command", "flaschka"}, {"coords", to_json(c)}, {"t", job.t1}, {"evolved", to_json(e)},
                     {"pencil_t", {{"phi", to_json(phi_t)}, {"f", to_json(f_t)}}},
                     {"lax", to_json(lax_matrix(c))}}), ""};
}

JobResult run_curve(const JobConfig& job) {
  std::string fmt;
  need_format(job, "json", {"json", "csv", "svg"}, fmt);
  const auto [phi, f] = pencil(job);
  const PDCurve curve = pd_curve(phi, f, job.tol);
  const std::vector<cplx> ts = t_grid(phi, f, job.grid);
  const auto samples = sample_curve(phi, f, ts);
  if (fmt == "csv") {
    std::vector<std::string> h{"sample"};
    complex_columns(h, "t");
    for (const char* c : {"x", "y", "z"}) complex_columns(h, c);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < samples.size(); ++k)
      for (const ProjPoint& p : samples[k]) {
        std::vector<double> row{static_cast<double>(k)};
        push(row, ts[k]);
        for (int i = 0; i < 3; ++i) push(row, p(i));
        rows.push_back(row);
      }
    return {kOk, csv(h, rows), ""};
  }
  if (fmt == "svg") {
    Series s{{}, false};
    for (const auto& pts : samples)
      for (const ProjPoint& p : pts)
        if (std::abs(p(2)) > 1e-12) s.pts.emplace_back((p(0) / p(2)).real(), (p(1) / p(2)).real());
    return {kOk, svg({s}), ""};
  }
  json js = json::array();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    json pts = json::array();
    for (const ProjPoint& p : samples[k]) pts.push_back(to_json(VectorXc(p)));
    js.push_back({{"t", to_json(ts[k])}, {"points", pts}});
  }
  return {kOk, dump({{"command", "curve"}, {"n", curve.n}, {"sym", to_json(curve.sym)}, {"curve", to_json(curve.tri)},
                     {"samples", js}}), ""};
}

JobResult run_decompose(const JobConfig& job) {
  std::string fmt;
  need_format(job, "json", {"json"}, fmt);
  const auto [phi, f] = pencil(job);
  const CriterionReport rep = criterion(phi, f, job.tol);
  json crit = json::array();
  for (const CriticalValue& c : rep.critical)
    crit.push_back({{"t", to_json(c.t)}, {"gcd_degree", c.gcd_degree}, {"gcd_margin", c.gcd_margin},
                    {"ambiguous", c.ambiguous}, {"spread", c.spread}});
  json out{{"command", "decompose"}, {"status", rep.status}, {"reason", rep.reason}, {"critical", crit}};
  int status = kOk;
  if (rep.certificate) {
    const DecompCertificate& c = *rep.certificate;
    json q = json::array();
    for (const Poly& p : c.Q_factors) q.push_back(to_json(p));
    out["certificate"] = {{"n", c.n}, {"parity_shape", c.parity_shape}, {"t_values", to_json(c.t_values)},
                          {"gcd_degrees", c.gcd_degrees}, {"contacts", to_json(c.contacts)}, {"Q_factors", q},
                          {"gamma1", to_json(c.gamma1)}, {"gamma2", to_json(c.gamma2)}, {"N", to_json(c.N)},
                          {"shape_residual", c.shape_residual}};
    const VerifyReport v = verify_certificate(c, phi, f, job.tol);
    out["verification"] = {{"ok", v.ok()}, {"shape_ok", v.shape_ok}, {"N", to_json(v.N)}, {"N_residual", v.N_residual},
                           {"inclusion_ok", v.inclusion_ok}, {"index", v.index}, {"a", v.a},
                           {"a_admissible", v.a_admissible}, {"messages", v.messages}};
    const Decomposition d = decompose_curve(pd_curve(phi, f, job.tol), phi, f, job.tol);
    json comps = json::array();
    for (const CurveComponent& cc : d.components)
      comps.push_back({{"degree", cc.degree}, {"equation", to_json(cc.eq)}, {"inliers", cc.inliers},
                       {"residual", cc.residual}});
    out["components"] = comps;
    out["decomposition"] = {{"status", d.status}, {"fit_residual", d.fit_residual},
                            {"product_residual", d.product_residual}};
    if (!d.decomposed()) status = kNoDecomposition;
  } else if (rep.status == "ambiguous") {
    return {kNumerical, dump(out), dump({{"error", "ambiguous"}, {"message", rep.reason}, {"residual", 0.0}})};
  } else {
    status = kNoDecomposition;
  }
  return {status, dump(out), ""};
}

JobResult run_family(const JobConfig& job) {
  std::string fmt;
  need_format(job, "json", {"json"}, fmt);
  const FamilyResult r = family({job.n, job.params});
  json params = json::array();
  for (cplx p : job.params) params.push_back(to_json(p));
  return {kOk, dump({{"command", "family"}, {"n", r.n}, {"params", params}, {"odd_poly", to_json(r.odd_poly)},
                     {"even_poly", to_json(r.even_poly)}, {"corrected_odd", to_json(r.corrected_odd)},
                     {"corrected_even", to_json(r.corrected_even)},
                     {"pencil", {{"phi", to_json(r.pencil_phi)}, {"f", to_json(r.pencil_f)}}},
                     {"literal", to_json(r.literal)}, {"positions", to_json(r.positions)},
                     {"corrected_masses", to_json(r.corrected_masses)},
                     {"position_residual", r.position_residual}, {"mass_residual", r.mass_residual},
                     {"literal_positions_valid", r.literal_positions_valid},
                     {"literal_masses_valid", r.literal_masses_valid}, {"N", to_json(r.N_displayed)},
                     {"notes", r.notes}}), ""};
}

JobResult run_elliptic(const JobConfig& job) {
  std::string fmt;
  need_format(job, "json", {"json"}, fmt);
  if (job.mode == "odd") {
    const OddTransform t = transform_odd(job.n, job.m, job.m_prime, job.k);
    return {kOk, dump({{"command", "elliptic"}, {"mode", "odd"}, {"n", t.n}, {"m", t.m}, {"m_prime", t.m_prime},
                       {"k", to_json(t.k)}, {"K", to_json(t.modulus.K)}, {"Kprime", to_json(t.modulus.Kprime)},
                       {"omega", to_json(t.omega)}, {"s", to_json(t.s)}, {"f", to_json(t.f)},
                       {"phi", to_json(t.phi)}, {"N", to_json(t.N)}, {"N_product", to_json(t.N_product)},
                       {"lambda", to_json(t.lambda)}, {"lambda_by_value", to_json(t.lambda_by_value)}}), ""};
  }
  if (job.mode == "even") {
    if (!job.P || !job.Q) throw InvalidInput("elliptic even: needs --P and --Q");
    const auto [phi, f] = transform_even(*job.P, *job.Q, job.k);
    return {kOk, dump({{"command", "elliptic"}, {"mode", "even"}, {"k", job.k}, {"phi", to_json(phi)}, {"f", to_json(f)}}), ""};
  }
  if (job.mode == "classes") {
    json cl = json::array();
    for (auto [a, b] : admissible_classes(job.n)) cl.push_back({a, b});
    return {kOk, dump({{"command", "elliptic"}, {"mode", "classes"}, {"n", job.n}, {"classes", cl}}), ""};
  }
  throw InvalidInput("elliptic: mode must be odd, even or classes");
}

JobResult run_arith(const JobConfig& job) {
  std::string fmt;
  need_format(job, "csv", {"csv", "json"}, fmt);
  if (job.odd_max < 1 || job.pow2_max < 0 || job.pow2_max > 62) throw InvalidInput("arith: bad range");
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(job.odd_max); n += 2) ns.push_back(n);
  for (int k = 1; k <= job.pow2_max; ++k) ns.push_back(std::uint64_t{1} << k);
  std::ostringstream os;
  json rows = json::array();
  os << "n,t,sigma_prime,euler_phi,product,identity\n";
  for (std::uint64_t n : ns) {
    const ArithTriple a = arith_functions(n);
    const std::uint64_t prod = a.sigma_prime * a.euler_phi;
    os << n << ',' << a.t << ',' << a.sigma_prime << ',' << a.euler_phi << ',' << prod << ',' << (a.t == prod) << '\n';
    rows.push_back({{"n", n}, {"t", a.t}, {"sigma_prime", a.sigma_prime}, {"euler_phi", a.euler_phi}, {"product", prod},
                    {"identity", a.t == prod}});
  }
  if (fmt == "json") return {kOk, dump({{"command", "arith"}, {"rows", rows}}), ""};
  return {kOk, os.str(), ""};
}

JobResult run_marden(const JobConfig& job) {
  std::string fmt;
  need_format(job, "json", {"json", "svg"}, fmt);
  if (!job.config) throw InvalidInput("marden: needs --positions and --masses");
  const MassedConfig& c = *job.config;
  const FocalData fd = foci_and_tangency(c, job.tol);
  if (fmt == "svg") {
    Series pos{{}, false}, foci{{}, false}, contacts{{}, false};
    for (Eigen::Index i = 0; i < c.positions.size(); ++i) pos.pts.emplace_back(c.positions(i).real(), c.positions(i).imag());
    for (const Root& r : fd.foci.entries) foci.pts.emplace_back(r.value.real(), r.value.imag());
    for (const Contact& k : fd.contacts)
      if (k.finite) contacts.pts.emplace_back(k.point.real(), k.point.imag());
    return {kOk, svg({pos, foci, contacts}), ""};
  }
  json foci = json::array(), contacts = json::array();
  for (const Root& r : fd.foci.entries) foci.push_back({{"value", to_json(r.value)}, {"multiplicity", r.multiplicity}});
  for (const Contact& k : fd.contacts)
    contacts.push_back({{"i", k.i}, {"j", k.j}, {"point", to_json(k.point)}, {"finite", k.finite}});
  json out{{"command", "marden"}, {"config", to_json(c)}, {"foci", foci}, {"contacts", contacts}, {"note", fd.note}};
  if (c.n() == 3) {
    const SteinerConic s = steiner_oracle({c.positions(0), c.positions(1), c.positions(2)});
    out["steiner"] = {{"coeffs", s.coeffs}, {"focus1", to_json(s.focus1)}, {"focus2", to_json(s.focus2)},
                      {"centre", to_json(s.centre)}};
  }
  return {kOk, dump(out), ""};
}

JobResult run_corpus(const JobConfig& job) {
  std::string fmt;
  need_format(job, "json", {"json"}, fmt);
  if (job.count < 1) throw InvalidInput("corpus: count must be positive");
  if (job.n != 0 && job.n < 2) throw InvalidInput("corpus: n must be at least 2");
  std::mt19937_64 rng(job.seed);
  json items = json::array();
  for (int c = 0; c < job.count; ++c) {
    const int n = job.n ? job.n : 2 + static_cast<int>(rng() % 7);
    MassedConfig cfg{VectorXc(n), VectorXc(n)};
    // Raw bits keep the corpus identical across standard libraries.
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < n; ++i) {
      cfg.positions(i) = cplx(2.0 * unit() - 1.0, 2.0 * unit() - 1.0);
      cfg.masses(i) = 0.5 + unit();
    }
    items.push_back(to_json(cfg));
  }
  return {kOk, dump({{"command", "corpus"}, {"seed", job.seed}, {"configs", items}}), ""};
}

json diagnostic(const Error& e) {
  return {{"error", to_string(e.kind())}, {"message", e.what()}, {"residual", e.residual()}};
}

}  // namespace

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw InvalidInput("complex value must be [re, im]");
  auto part = [](const json& v) { return v.is_null() ? NAN : v.get<double>(); };
  return {part(j[0]), part(j[1])};
}

VectorXc vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array");
  VectorXc v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Poly poly_from_json(const json& j) { return Poly(vector_from_json(j)); }

json to_json(const JobConfig& job) {
  json j{{"command", job.command}, {"t0", job.t0}, {"t1", job.t1}, {"grid", job.grid}, {"tol", job.tol},
         {"format", job.format}, {"out", job.out}, {"seed", job.seed}, {"n", job.n}, {"mode", job.mode},
         {"m", job.m}, {"m_prime", job.m_prime}, {"k", job.k}, {"odd_max", job.odd_max},
         {"pow2_max", job.pow2_max}, {"count", job.count}};
  json params = json::array();
  for (cplx p : job.params) params.push_back(to_json(p));
  j["params"] = params;
  if (job.phi) j["phi"] = to_json(*job.phi);
  if (job.f) j["f"] = to_json(*job.f);
  if (job.g) j["g"] = to_json(*job.g);
  if (job.P) j["P"] = to_json(*job.P);
  if (job.Q) j["Q"] = to_json(*job.Q);
  if (job.config) j["config"] = to_json(*job.config);
  return j;
}

JobConfig job_from_json(const json& j) {
  JobConfig job;
  job.command = j.at("command").get<std::string>();
  job.t0 = j.value("t0", job.t0);
  job.t1 = j.value("t1", job.t1);
  job.grid = j.value("grid", job.grid);
  job.tol = j.value("tol", job.tol);
  job.format = j.value("format", job.format);
  job.out = j.value("out", job.out);
  job.seed = j.value("seed", job.seed);
  job.n = j.value("n", job.n);
  job.mode = j.value("mode", job.mode);
  job.m = j.value("m", job.m);
  job.m_prime = j.value("m_prime", job.m_prime);
  job.k = j.value("k", job.k);
  job.odd_max = j.value("odd_max", job.odd_max);
  job.pow2_max = j.value("pow2_max", job.pow2_max);
  job.count = j.value("count", job.count);
  if (j.contains("params"))
    for (const json& p : j["params"]) job.params.push_back(complex_from_json(p));
  if (j.contains("phi")) job.phi = poly_from_json(j["phi"]);
  if (j.contains("f")) job.f = poly_from_json(j["f"]);
  if (j.contains("g")) job.g = poly_from_json(j["g"]);
  if (j.contains("P")) job.P = poly_from_json(j["P"]);
  if (j.contains("Q")) job.Q = poly_from_json(j["Q"]);
  if (j.contains("config")) job.config = config_from_json(j["config"]);
  return job;
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    try {
      std::size_t used = 0;
      const double re = std::stod(tok.substr(0, colon), &used);
      if (used != tok.substr(0, colon).size()) throw std::invalid_argument(tok);
      double im = 0.0;
      if (colon != std::string::npos) {
        const std::string s = tok.substr(colon + 1);
        im = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(tok);
      }
      out.emplace_back(re, im);
    } catch (const std::logic_error&) {
      throw InvalidInput("cannot parse number '" + tok + "'");
    }
  }
  if (out.empty()) throw InvalidInput("empty number list");
  return out;
}

void check_job(const JobConfig& job) {
  if (!(job.tol > 0)) throw InvalidInput("tolerance must be positive");
  const bool has_pencil = job.phi || job.f;
  const bool has_config = job.config.has_value();
  if (job.config && job.config->positions.size() != job.config->masses.size())
    throw InvalidInput("positions and masses differ in length");
  static const std::vector<std::string> needs_input{"simulate", "flaschka", "curve", "decompose", "marden"};
  if (std::find(needs_input.begin(), needs_input.end(), job.command) != needs_input.end()) {
    if (has_pencil == has_config) throw InvalidInput(job.command + ": give exactly one of a pencil or a configuration");
  } else if (has_pencil || has_config) {
    throw InvalidInput(job.command + ": takes no pencil or configuration");
  }
}

JobResult execute(const JobConfig& job) {
  try {
    check_job(job);
    if (job.command == "simulate") return run_simulate(job);
    if (job.command == "flaschka") return run_flaschka(job);
    if (job.command == "curve") return run_curve(job);
    if (job.command == "decompose") return run_decompose(job);
    if (job.command == "family") return run_family(job);
    if (job.command == "elliptic") return run_elliptic(job);
    if (job.command == "arith") return run_arith(job);
    if (job.command == "marden") return run_marden(job);
    if (job.command == "corpus") return run_corpus(job);
    throw InvalidInput("unknown command '" + job.command + "'");
  } catch (const InvalidInput& e) {
    return {kInvalid, "", dump(diagnostic(e))};
  } catch (const Error& e) {
    return {kNumerical, "", dump(diagnostic(e))};
  } catch (const json::exception& e) {
    return {kInvalid, "", dump({{"error", "invalid_input"}, {"message", e.what()}, {"residual", 0.0}})};
  }
}

}  // namespace isofocal::cli
