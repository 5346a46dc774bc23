// wpg: exact and Monte Carlo computation for weighted Pascal graphs.
//
// Subcommands: dims, phi, boundary, simulate, moment-check, self-check.
// Exit codes: 0 success, 1 I/O, 2 validation, 3 numeric non-convergence.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wpg/io.hpp"
#include "wpg/oracles.hpp"
#include "wpg/phi_families.hpp"

namespace {

using namespace wpg;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::io_error:
      return 1;
    case errc::divergent_case:
    case errc::truncation_failure:
    case errc::budget_exhausted:
      return 3;
    default:
      return 2;
  }
}

std::string resolve_output(const std::string& path) {
  if (path == "-" || path.empty()) return path;
  if (path.front() != '/') {
    if (const char* dir = std::getenv("WPG_OUTPUT_DIR")) return std::string(dir) + "/" + path;
  }
  return path;
}

// Writes either to stdout ("-") or to the named file.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  std::string resolved = resolve_output(path);
  if (resolved == "-" || resolved.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(resolved);
  if (!out) raise(errc::io_error, "cannot open output file '" + resolved + "'");
  fn(out);
  if (!out) raise(errc::io_error, "write failed for '" + resolved + "'");
}

struct FamilyFlags {
  std::string family = "pascal";
  std::string a, b, q;
  std::string a_file, b_file, a_tail, b_tail;
  std::string w0_seq, w0_file, w1_seq, w1_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family,
                    "graph family: pascal|stirling1|stirling2|gstirling|gstirling1|qpascal|eulerian|custom");
    cmd->add_option("--a", a, "scalar (eulerian) or sequence preset (gstirling)");
    cmd->add_option("--b", b, "scalar (eulerian) or sequence preset (gstirling)");
    cmd->add_option("--q", q, "q parameter (qpascal)");
    cmd->add_option("--a-file", a_file, "CSV file backing the a-sequence");
    cmd->add_option("--b-file", b_file, "CSV file backing the b-sequence");
    cmd->add_option("--a-tail", a_tail, "closed-form tail preset appended to --a-file");
    cmd->add_option("--b-tail", b_tail, "closed-form tail preset appended to --b-file");
    cmd->add_option("--w0-seq", w0_seq, "level-indexed tail weights (custom family)");
    cmd->add_option("--w0-file", w0_file, "CSV file of level-indexed tail weights (custom)");
    cmd->add_option("--w1-seq", w1_seq, "level-indexed head weights (custom family)");
    cmd->add_option("--w1-file", w1_file, "CSV file of level-indexed head weights (custom)");
  }

  SeqSpec sequence(const std::string& preset, const std::string& file, const std::string& tail,
                   const std::string& dflt) const {
    SeqSpec s = !file.empty() ? SeqSpec::from_file(file)
                              : SeqSpec::parse(!preset.empty() ? preset : dflt);
    if (!tail.empty()) s = s.with_tail(SeqSpec::parse(tail));
    return s;
  }

  FamilySpec build() const {
    if (family == "pascal") return FamilySpec::pascal();
    if (family == "stirling1") return FamilySpec::stirling1();
    if (family == "stirling2") return FamilySpec::stirling2();
    if (family == "qpascal") {
      if (q.empty()) raise(errc::invalid_parameter, "qpascal requires --q");
      return FamilySpec::q_pascal(ScalarSpec::parse(q));
    }
    if (family == "eulerian") {
      if (a.empty() || b.empty()) raise(errc::invalid_parameter, "eulerian requires --a and --b");
      return FamilySpec::eulerian(ScalarSpec::parse(a), ScalarSpec::parse(b));
    }
    if (family == "gstirling" || family == "gstirling1") {
      SeqSpec as = sequence(a, a_file, a_tail, "linear:1,1");
      SeqSpec bs = family == "gstirling1" ? SeqSpec::constant(ScalarSpec(0L))
                                          : sequence(b, b_file, b_tail, "const:0");
      return FamilySpec::gen_stirling(as, bs);
    }
    if (family == "custom") {
      SeqSpec v0 = sequence(w0_seq, w0_file, "", "const:1");
      SeqSpec v1 = sequence(w1_seq, w1_file, "", "const:1");
      return FamilySpec::custom(v0, v1);
    }
    raise(errc::invalid_parameter, "unknown family '" + family + "'");
  }
};

bool choose_exact(const FamilySpec& fam, bool force_exact, bool force_float) {
  if (force_exact && force_float) raise(errc::invalid_parameter, "--exact and --float conflict");
  if (force_exact) {
    if (!fam.exact_representable())
      raise(errc::invalid_parameter, "family parameters are not exactly representable");
    return true;
  }
  if (force_float) return false;
  return fam.exact_representable();
}

int cmd_dims(const FamilyFlags& flags, int max_level, const std::string& format,
             const std::string& output, bool force_exact, bool force_float) {
  FamilySpec fam = flags.build();
  bool exact = choose_exact(fam, force_exact, force_float);
  with_output(output, [&](std::ostream& os) {
    if (format == "csv") {
      if (exact)
        write_dims_csv(os, DimensionTable<Rational>(make_graph<Rational>(fam), max_level));
      else
        write_dims_csv(os, DimensionTable<double>(make_graph<double>(fam), max_level));
    } else if (format == "json") {
      json values = json::array();
      auto emit = [&](const auto& dims) {
        using S = std::decay_t<decltype(dims.at(0, 0))>;
        for (int n = 0; n <= dims.max_level(); ++n)
          for (int h = 0; h <= n; ++h)
            values.push_back({{"h", h},
                              {"t", n - h},
                              {"value", scalar_traits<S>::to_string(dims.at(h, n - h))}});
      };
      if (exact)
        emit(DimensionTable<Rational>(make_graph<Rational>(fam), max_level));
      else
        emit(DimensionTable<double>(make_graph<double>(fam), max_level));
      os << json{{"family", fam.tag()},
                 {"N", max_level},
                 {"mode", exact ? "exact" : "float"},
                 {"values", values}}
                .dump(2)
         << "\n";
    } else {
      raise(errc::invalid_parameter, "unknown format '" + format + "'");
    }
  });
  return 0;
}

struct MeasureFlags {
  std::string family = "polya";
  std::string a = "1", b = "1", theta = "1", alpha = "0", gamma = "1/2", q = "1/2";
  int m = 0;
  std::string a_file, a_tail, b_file, b_tail;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family,
                    "measure family: polya|bernoulli|gstirling|spacetime|crp|crp-gamma|qpascal|"
                    "qpolya|eulerian-qm|eulerian-qinf|eulerian-star");
    cmd->add_option("--a", a, "scalar or a-sequence preset");
    cmd->add_option("--b", b, "scalar or b-sequence preset");
    cmd->add_option("--theta", theta, "theta parameter");
    cmd->add_option("--alpha", alpha, "CRP alpha");
    cmd->add_option("--gamma", gamma, "gamma-CRP parameter");
    cmd->add_option("--q", q, "q parameter");
    cmd->add_option("--m", m, "index of the finitely supported extreme");
    cmd->add_option("--a-file", a_file, "CSV file backing the a-sequence");
    cmd->add_option("--a-tail", a_tail, "tail preset for --a-file");
    cmd->add_option("--b-file", b_file, "CSV file backing the b-sequence");
    cmd->add_option("--b-tail", b_tail, "tail preset for --b-file");
  }

  SeqSpec a_seq() const {
    SeqSpec s = !a_file.empty() ? SeqSpec::from_file(a_file) : SeqSpec::parse(a);
    if (!a_tail.empty()) s = s.with_tail(SeqSpec::parse(a_tail));
    return s;
  }
  SeqSpec b_seq() const {
    SeqSpec s = !b_file.empty() ? SeqSpec::from_file(b_file) : SeqSpec::parse(b);
    if (!b_tail.empty()) s = s.with_tail(SeqSpec::parse(b_tail));
    return s;
  }

  template <class S>
  Phi<S> build(int N) const {
    if (family == "polya") return polya_phi<S>(ScalarSpec::parse(a), ScalarSpec::parse(b), N);
    if (family == "bernoulli") return bernoulli_phi<S>(ScalarSpec::parse(theta), N);
    if (family == "gstirling")
      return gstirling_theta_phi<S>(a_seq(), b_seq(), ScalarSpec::parse(theta), N);
    if (family == "spacetime") return spacetime_walk_phi<S>(a_seq(), ScalarSpec::parse(theta), N);
    if (family == "crp") return crp_phi<S>(ScalarSpec::parse(alpha), ScalarSpec::parse(theta), N);
    if (family == "crp-gamma") return crp_gamma_phi<S>(ScalarSpec::parse(gamma), N);
    if (family == "qpascal") return qpascal_extreme_phi<S>(ScalarSpec::parse(q), m, N);
    if (family == "qpolya") {
      // the urn parameters ride the --a/--b flags, like the classical urn
      ScalarSpec av = ScalarSpec::parse(a), bv = ScalarSpec::parse(b);
      if (!is_integer(av) || !is_integer(bv))
        raise(errc::invalid_parameter, "q-Polya requires integer --a and --b");
      return qpolya_phi<S>(ScalarSpec::parse(q), static_cast<long>(av.as_double()),
                           static_cast<long>(bv.as_double()), N);
    }
    if (family == "eulerian-qm")
      return eulerian_qm_phi<S>(ScalarSpec::parse(a), ScalarSpec::parse(b), m, N);
    if (family == "eulerian-qinf")
      return eulerian_qinf_phi<S>(ScalarSpec::parse(a), ScalarSpec::parse(b), m, N);
    if (family == "eulerian-star")
      return eulerian_star_phi<S>(ScalarSpec::parse(a), ScalarSpec::parse(b), N);
    raise(errc::invalid_parameter, "unknown measure family '" + family + "'");
  }
};

int cmd_phi(const MeasureFlags& flags, int max_level, const std::string& format,
            const std::string& output, bool force_exact, bool force_float) {
  if (force_exact && force_float) raise(errc::invalid_parameter, "--exact and --float conflict");
  bool exact = !force_float;
  auto run = [&](auto phi) {
    auto rep = check_probability_function(phi);
    with_output(output, [&](std::ostream& os) {
      if (format == "csv")
        write_phi_csv(os, phi);
      else
        os << phi_to_json(phi).dump(2) << "\n";
    });
    std::cerr << json{{"check", phi_check_to_json(rep)}}.dump() << "\n";
  };
  if (exact)
    run(flags.build<Rational>(max_level));
  else
    run(flags.build<double>(max_level));
  return 0;
}

int cmd_boundary(const FamilyFlags& flags, const BoundaryOptions& opts, const std::string& output) {
  FamilySpec fam = flags.build();
  BoundaryReport rep = boundary_report(fam, opts);
  with_output(output, [&](std::ostream& os) {
    json j = boundary_report_to_json(rep);
    j["family"] = fam.tag();
    os << j.dump(2) << "\n";
  });
  return 0;
}

int cmd_simulate(SimJob job, const std::string& job_file, const std::string& format,
                 const std::string& output) {
  if (!job_file.empty()) {
    std::ifstream in(job_file);
    if (!in) raise(errc::io_error, "cannot open job file '" + job_file + "'");
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      raise(errc::parse_error, std::string("bad job JSON: ") + e.what());
    }
    job = job_from_json(j);
  }
  json result = run_job(job);
  with_output(output, [&](std::ostream& os) {
    if (format == "csv" && result.contains("counts")) {
      os << (job.statistic == "z" ? "z,count\n" : "h,count\n");
      long z0 = result.value("z_min", 0L);
      auto counts = result.at("counts").get<std::vector<long long>>();
      for (size_t i = 0; i < counts.size(); ++i)
        os << (job.statistic == "z" ? z0 + static_cast<long>(i) : static_cast<long>(i)) << ","
           << counts[i] << "\n";
    } else {
      os << result.dump(2) << "\n";
    }
  });
  return 0;
}

int cmd_moment_check(const FamilyFlags& flags, const std::string& phi_file, int max_level,
                     double tol, bool atoms, int m_max, const std::string& q_opt,
                     const std::string& output, bool force_float) {
  auto specs = parse_sequence_csv(phi_file);
  bool exact = !force_float;
  for (const auto& s : specs) exact = exact && s.exact_representable();

  if (atoms) {
    std::string qs = !q_opt.empty() ? q_opt : flags.q;
    if (qs.empty()) raise(errc::invalid_parameter, "atom recovery requires --q");
    json j;
    if (exact) {
      std::vector<Rational> seq;
      for (const auto& s : specs) seq.push_back(s.as_rational());
      auto rec = q_atom_recovery<Rational>(seq, ScalarSpec::parse(qs).as_rational(), m_max, tol);
      json weights = json::array();
      for (const auto& w : rec.atom_weights) weights.push_back(w.get_str());
      j = {{"atoms", weights},
           {"zero_mass", rec.zero_mass.get_str()},
           {"max_residual", rec.max_residual.get_str()},
           {"mode", "exact"}};
    } else {
      std::vector<double> seq;
      for (const auto& s : specs) seq.push_back(s.as_double());
      auto rec = q_atom_recovery<double>(seq, ScalarSpec::parse(qs).as_double(), m_max, tol);
      j = {{"atoms", rec.atom_weights},
           {"zero_mass", rec.zero_mass},
           {"max_residual", rec.max_residual},
           {"mode", "float"}};
    }
    with_output(output, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    return 0;
  }

  FamilySpec fam = flags.build();
  if (max_level < 0) max_level = static_cast<int>(specs.size()) - 1;
  if (static_cast<int>(specs.size()) < max_level + 1)
    raise(errc::invalid_parameter, "sequence shorter than max-level + 1");
  json j;
  auto run = [&](auto tag) {
    using S = decltype(tag);
    auto g = make_graph<S>(fam);
    std::vector<S> seq;
    for (const auto& s : specs) seq.push_back(s.template as<S>());
    auto res = hausdorff_check<S>(g, seq, max_level, tol);
    if (res.array) {
      json values = json::array();
      for (int n = 0; n <= max_level; ++n)
        for (int h = 0; h <= n; ++h)
          values.push_back({{"h", h},
                            {"t", n - h},
                            {"phi", scalar_traits<S>::to_string(res.array->at(h, n - h))}});
      j = {{"nonnegative", true}, {"values", values}};
    } else {
      j = {{"nonnegative", false},
           {"witness",
            {{"h", res.witness->h},
             {"t", res.witness->t},
             {"value", scalar_traits<S>::to_string(res.witness_value)}}}};
    }
  };
  if (exact && fam.exact_representable())
    run(Rational());
  else
    run(double());
  with_output(output, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
  return 0;
}

int cmd_self_check() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[ok] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  {
    auto g = make_graph<Rational>(FamilySpec::stirling1());
    DimensionTable<Rational> d(g, 7, FillMode::Serial);
    bool ok = true;
    for (int n = 0; n <= 7; ++n) {
      auto counts = record_count_oracle(n);
      for (int h = 0; h <= n; ++h) ok = ok && d.at(h, n - h) == Rational(static_cast<long>(counts[h]));
    }
    report("stirling-1 dimensions = permutation record counts (n <= 7)", ok);
  }
  {
    auto g = make_graph<Rational>(FamilySpec::eulerian(ScalarSpec(1L), ScalarSpec(1L)));
    DimensionTable<Rational> d(g, 7, FillMode::Serial);
    bool ok = true;
    for (int n = 0; n <= 7; ++n) {
      auto counts = descent_count_oracle(n);
      for (int h = 0; h <= n; ++h) ok = ok && d.at(h, n - h) == Rational(static_cast<long>(counts[h]));
    }
    report("eulerian dimensions = permutation descent counts (n <= 7)", ok);
  }
  {
    Rational q(1, 2);
    auto g = make_graph<Rational>(FamilySpec::q_pascal(ScalarSpec(q)));
    DimensionTable<Rational> d(g, 15, FillMode::Serial);
    auto rows = qbinomial_oracle(15, q);
    bool ok = true;
    for (int n = 0; n <= 15; ++n)
      for (int h = 0; h <= n; ++h) ok = ok && d.at(h, n - h) == rows[n][n - h];
    report("q-pascal dimensions = q-binomials by the dual recurrence (n <= 15)", ok);
  }
  {
    bool ok = true;
    std::vector<Phi<Rational>> phis;
    phis.push_back(polya_phi<Rational>(ScalarSpec(2L), ScalarSpec(3L), 12));
    phis.push_back(crp_phi<Rational>(ScalarSpec::parse("-1/2"), ScalarSpec(1L), 12));
    phis.push_back(crp_gamma_phi<Rational>(ScalarSpec::parse("1/3"), 12));
    phis.push_back(qpascal_extreme_phi<Rational>(ScalarSpec::parse("1/2"), 2, 12));
    phis.push_back(eulerian_qm_phi<Rational>(ScalarSpec(1L), ScalarSpec(1L), 2, 12));
    phis.push_back(spacetime_walk_phi<Rational>(SeqSpec::parse("geom:1,4"), ScalarSpec(1L), 12));
    for (const auto& phi : phis) ok = ok && check_probability_function(phi).exact_ok();
    report("catalog probability functions: exactly zero residuals (levels <= 12)", ok);
  }
  {
    // 12-step Z distribution vs the exhaustive path oracle
    std::vector<ScalarSpec> vals;
    for (const char* v : {"4", "1/4", "9", "1/9", "2", "1/2", "6", "1/6", "3", "1/3", "5", "1/5"})
      vals.push_back(ScalarSpec::parse(v));
    SeqSpec toy = SeqSpec::from_values(vals, "selfcheck").with_tail(SeqSpec::parse("geom:1000000000,4"));
    auto dist = z_distribution(toy, ScalarSpec(1L), 1e-6);
    const int n = 12;
    std::vector<double> p(n), q(n);
    long m_count = 0;
    for (int j = 0; j < n; ++j) {
      double a = toy.eval<double>(j);
      p[j] = 1.0 / (1.0 + a);
      q[j] = a / (1.0 + a);
      if (p[j] > q[j]) ++m_count;
    }
    bool ok = dist.truncation_error_bound < 1e-6;
    std::vector<double> brute(2 * n + 1, 0.0);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      double prob = 1.0;
      long heads = 0;
      for (int j = 0; j < n; ++j) {
        if (mask & (1u << j)) {
          prob *= p[j];
          ++heads;
        } else {
          prob *= q[j];
        }
      }
      brute[heads - m_count + n] += prob;
    }
    for (long z = -n; z <= n; ++z)
      ok = ok && std::abs(dist.weight_at(z) - brute[z + n]) <= dist.truncation_error_bound + 1e-12;
    report("12-step Z decomposition matches the 4096-path oracle", ok);
  }
  std::cout << (failures == 0 ? "self-check passed" : "self-check FAILED") << "\n";
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary computations for weighted Pascal graphs"};
  app.require_subcommand(1);

  // dims
  auto* dims = app.add_subcommand("dims", "exact weighted path counts");
  FamilyFlags dims_family;
  dims_family.attach(dims);
  int dims_level = 10;
  std::string dims_format = "csv", dims_output = "-";
  bool dims_exact = false, dims_float = false;
  dims->add_option("--max-level", dims_level, "largest level h+t");
  dims->add_option("--format", dims_format, "csv|json");
  dims->add_option("--output", dims_output, "output path or - for stdout");
  dims->add_flag("--exact", dims_exact, "force exact rational mode");
  dims->add_flag("--float", dims_float, "force floating mode");

  // phi
  auto* phi = app.add_subcommand("phi", "probability functions of the measure catalog");
  MeasureFlags phi_flags;
  phi_flags.attach(phi);
  int phi_level = 10;
  std::string phi_format = "csv", phi_output = "-";
  bool phi_exact = false, phi_float = false;
  phi->add_option("--max-level", phi_level, "largest level h+t");
  phi->add_option("--format", phi_format, "csv|json");
  phi->add_option("--output", phi_output, "output path or - for stdout");
  phi->add_flag("--exact", phi_exact, "force exact rational mode");
  phi->add_flag("--float", phi_float, "force floating mode");

  // boundary
  auto* boundary = app.add_subcommand("boundary", "extremal boundary reports");
  FamilyFlags boundary_family;
  boundary_family.attach(boundary);
  BoundaryOptions bopts;
  std::string boundary_output = "-";
  boundary->add_option("--m-display", bopts.m_display, "finitely supported extremes listed per side");
  boundary->add_option("--z-theta", bopts.z_theta, "reference theta for the Z decomposition");
  boundary->add_option("--z-tol", bopts.z_tol, "truncation tolerance for Z weights");
  boundary->add_option("--probe", bopts.n_probe, "partial-sum probe length");
  boundary->add_option("--output", boundary_output, "output path or - for stdout");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo of the named processes");
  std::string sim_process = "bernoulli", sim_stat = "endpoint", sim_scaler = "n";
  std::string sim_job_file, sim_format = "json", sim_output = "-";
  std::string sim_a = "1", sim_b = "1", sim_a_tail;
  SimJob job;
  simulate->add_option("--process", sim_process,
                       "bernoulli|polya|friedman|crp|crp-gamma|stirling1|spacetime|stirling2|"
                       "qpascal-qm|qpolya");
  simulate->add_option("--theta", job.process.theta, "theta parameter");
  simulate->add_option("--alpha", job.process.alpha, "CRP alpha");
  simulate->add_option("--gamma", job.process.gamma, "gamma-CRP parameter");
  simulate->add_option("--a", sim_a, "scalar a (polya/friedman) or a-sequence preset (spacetime)");
  simulate->add_option("--b", sim_b, "scalar b (polya/friedman) or b-sequence preset (stirling2)");
  simulate->add_option("--a-tail", sim_a_tail, "tail preset when --a is file:PATH");
  simulate->add_option("--q", job.process.q, "q parameter");
  simulate->add_option("--m", job.process.m, "extreme index");
  simulate->add_option("--n", job.n, "steps per replicate");
  simulate->add_option("--reps", job.replicates, "number of replicates");
  simulate->add_option("--seed", job.seed, "RNG seed");
  simulate->add_option("--stat", sim_stat, "endpoint|scaled|z|blocks");
  simulate->add_option("--scaler", sim_scaler, "n|logn|pow");
  simulate->add_option("--pow-alpha", job.pow_alpha, "exponent for --scaler pow");
  bool sim_serial = false;
  simulate->add_flag("--serial", sim_serial, "run the serial reference implementation");
  simulate->add_option("--job", sim_job_file, "JSON job file (overrides flags)");
  simulate->add_option("--format", sim_format, "json|csv");
  simulate->add_option("--output", sim_output, "output path or - for stdout");

  // moment-check
  auto* moment = app.add_subcommand("moment-check", "Hausdorff-type moment checks");
  FamilyFlags moment_family;
  moment_family.attach(moment);
  std::string moment_phi_file, moment_output = "-", moment_q;
  int moment_level = -1, moment_m_max = 6;
  double moment_tol = 1e-9;
  bool moment_atoms = false, moment_float = false;
  moment->add_option("--phi-file", moment_phi_file, "CSV sequence phi(n,0)")->required();
  moment->add_option("--max-level", moment_level, "reconstruction horizon (default: len-1)");
  moment->add_option("--tol", moment_tol, "tolerance");
  moment->add_flag("--atoms", moment_atoms, "recover q-power atoms instead of differencing");
  moment->add_option("--m-max", moment_m_max, "largest atom exponent for --atoms");
  moment->add_option("--q-atoms", moment_q, "q for atom recovery (defaults to --q)");
  moment->add_flag("--float", moment_float, "force floating mode");
  moment->add_option("--output", moment_output, "output path or - for stdout");

  // self-check
  app.add_subcommand("self-check", "run the built-in oracle suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dims->parsed())
      return cmd_dims(dims_family, dims_level, dims_format, dims_output, dims_exact, dims_float);
    if (phi->parsed())
      return cmd_phi(phi_flags, phi_level, phi_format, phi_output, phi_exact, phi_float);
    if (boundary->parsed()) return cmd_boundary(boundary_family, bopts, boundary_output);
    if (simulate->parsed()) {
      if (sim_job_file.empty()) {
        json jp{{"process", sim_process}, {"params", json::object()}};
        auto& params = jp["params"];
        params["theta"] = job.process.theta;
        params["alpha"] = job.process.alpha;
        params["gamma"] = job.process.gamma;
        params["q"] = job.process.q;
        params["m"] = job.process.m;
        if (sim_process == "spacetime") {
          params["a"] = sim_a;
          if (!sim_a_tail.empty()) params["a_tail"] = sim_a_tail;
        } else if (sim_process == "stirling2") {
          params["b"] = sim_b;
        } else if (sim_process == "qpolya") {
          params["alpha"] = ScalarSpec::parse(sim_a).as_double();
          params["beta"] = ScalarSpec::parse(sim_b).as_double();
        } else {
          params["a"] = ScalarSpec::parse(sim_a).as_double();
          params["b"] = ScalarSpec::parse(sim_b).as_double();
        }
        jp["n"] = job.n;
        jp["replicates"] = job.replicates;
        jp["seed"] = job.seed;
        jp["statistic"] = sim_stat;
        jp["scaler"] = sim_scaler;
        jp["pow_alpha"] = job.pow_alpha;
        jp["parallel"] = !sim_serial;
        job = job_from_json(jp);
      }
      return cmd_simulate(job, sim_job_file, sim_format, sim_output);
    }
    if (moment->parsed())
      return cmd_moment_check(moment_family, moment_phi_file, moment_level, moment_tol, moment_atoms,
                              moment_m_max, moment_q, moment_output, moment_float);
    return cmd_self_check();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
