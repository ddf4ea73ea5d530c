#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"

using namespace isofocal;
using namespace isofocal::cli;

namespace {

struct RawOptions {
  std::string phi, f, g, positions, masses, params, P, Q, job;
};

Poly poly_arg(const std::string& s) {
  const auto v = parse_complex_list(s);
  return Poly(Eigen::Map<const VectorXc>(v.data(), static_cast<Eigen::Index>(v.size())));
}

VectorXc vector_arg(const std::string& s) {
  const auto v = parse_complex_list(s);
  return Eigen::Map<const VectorXc>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isofocal deformations, Poncelet-Darboux curves and decomposability checks"};
  app.require_subcommand(1);
  JobConfig job;
  RawOptions raw;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", job.tol, "Numerical tolerance");
    sub->add_option("--grid", job.grid, "Number of grid points");
    sub->add_option("--t0", job.t0, "Start of the t range");
    sub->add_option("--t1", job.t1, "End of the t range");
    sub->add_option("--out", job.out, "Output file (default stdout)");
    sub->add_option("--format", job.format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}));
    sub->add_option("--job", raw.job, "Read the whole job from a JSON file");
  };
  auto pencil_opts = [&](CLI::App* sub) {
    sub->add_option("--phi", raw.phi, "phi coefficients, ascending, re or re:im");
    sub->add_option("--f", raw.f, "f coefficients, ascending");
    sub->add_option("--positions", raw.positions, "Point positions");
    sub->add_option("--masses", raw.masses, "Point masses");
  };

  auto* sim = app.add_subcommand("simulate", "Isofocal or bifocal flow");
  common(sim), pencil_opts(sim);
  sim->add_option("--g", raw.g, "Second focal polynomial for the bifocal flow");
  for (auto [name, help] : {std::pair{"flaschka", "Flaschka coordinates and their evolution"},
                            {"curve", "Poncelet-Darboux curve"},
                            {"decompose", "Complete decomposability check"}}) {
    auto* s = app.add_subcommand(name, help);
    common(s), pencil_opts(s);
  }
  auto* fam = app.add_subcommand("family", "Explicit decomposable families");
  common(fam);
  fam->add_option("--n", job.n, "3, 5 or 7");
  fam->add_option("--params", raw.params, "Family parameters");
  auto* ell = app.add_subcommand("elliptic", "Jacobi transformations");
  common(ell);
  ell->add_option("--mode", job.mode, "odd, even or classes")->check(CLI::IsMember({"odd", "even", "classes"}));
  ell->add_option("--n", job.n, "Transformation order");
  ell->add_option("--m", job.m, "Real period multiple");
  ell->add_option("--m-prime", job.m_prime, "Imaginary period multiple");
  ell->add_option("--k", job.k, "Modulus");
  ell->add_option("--P", raw.P, "Even polynomial P");
  ell->add_option("--Q", raw.Q, "Even polynomial Q");
  auto* ar = app.add_subcommand("arith", "Table of t, sigma' and phi");
  common(ar);
  ar->add_option("--odd-max", job.odd_max, "Largest odd n");
  ar->add_option("--pow2-max", job.pow2_max, "Largest k for n = 2^k");
  auto* mar = app.add_subcommand("marden", "Foci and tangency points");
  common(mar);
  mar->add_option("--positions", raw.positions, "Point positions");
  mar->add_option("--masses", raw.masses, "Point masses");
  auto* cor = app.add_subcommand("corpus", "Random configurations");
  common(cor);
  cor->add_option("--seed", job.seed, "Random seed");
  cor->add_option("--count", job.count, "Number of configurations");
  cor->add_option("--n", job.n, "Fixed size (0 draws 2..8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  JobResult res;
  try {
    if (!raw.job.empty()) {
      std::ifstream in(raw.job);
      if (!in) throw InvalidInput("cannot read " + raw.job);
      const std::string out = job.out;
      job = job_from_json(nlohmann::json::parse(in));
      if (!out.empty()) job.out = out;
    } else {
      job.command = app.get_subcommands().front()->get_name();
      if (!raw.phi.empty()) job.phi = poly_arg(raw.phi);
      if (!raw.f.empty()) job.f = poly_arg(raw.f);
      if (!raw.g.empty()) job.g = poly_arg(raw.g);
      if (!raw.P.empty()) job.P = poly_arg(raw.P);
      if (!raw.Q.empty()) job.Q = poly_arg(raw.Q);
      if (!raw.params.empty()) job.params = parse_complex_list(raw.params);
      if (!raw.positions.empty() || !raw.masses.empty()) {
        if (raw.positions.empty() || raw.masses.empty()) throw InvalidInput("need both --positions and --masses");
        job.config = MassedConfig{vector_arg(raw.positions), vector_arg(raw.masses)};
      }
    }
    res = execute(job);
  } catch (const InvalidInput& e) {
    res = {kInvalid, "", nlohmann::json{{"error", "invalid_input"}, {"message", e.what()}, {"residual", 0.0}}.dump(2) + "\n"};
  } catch (const nlohmann::json::exception& e) {
    res = {kInvalid, "", nlohmann::json{{"error", "invalid_input"}, {"message", e.what()}, {"residual", 0.0}}.dump(2) + "\n"};
  }

  if (!res.artifact.empty()) {
    if (job.out.empty()) {
      std::cout << res.artifact;
    } else {
      std::ofstream out(job.out, std::ios::binary);
      out << res.artifact;
      if (!out) {
        std::cerr << "cannot write " << job.out << "\n";
        return kInvalid;
      }
    }
  }
  if (!res.diagnostic.empty()) std::cerr << res.diagnostic;
  return res.status;
}
