#include "wpg/io.hpp"

#include <algorithm>
#include <cmath>

namespace wpg {

void write_zdist_csv(std::ostream& os, const ZDistribution& dist) {
  os << "z,weight\n";
  for (size_t i = 0; i < dist.weights.size(); ++i)
    os << (dist.z_min + static_cast<long>(i)) << "," << scalar_traits<double>::to_string(dist.weights[i])
       << "\n";
  os << "bound," << scalar_traits<double>::to_string(dist.truncation_error_bound) << "\n";
}

void write_endpoint_csv(std::ostream& os, const EndpointHistogram& hist) {
  os << "h,count\n";
  for (size_t h = 0; h < hist.counts.size(); ++h) os << h << "," << hist.counts[h] << "\n";
}

json boundary_report_to_json(const BoundaryReport& rep) {
  json extremes = json::array();
  for (const auto& e : rep.extremes) {
    json je{{"kind", e.kind}, {"pi", e.pi}, {"note", e.note}};
    if (e.m) je["m"] = *e.m;
    if (e.z) je["z"] = *e.z;
    if (e.theta) je["theta"] = *e.theta;
    if (e.pi_hi) je["pi_hi"] = *e.pi_hi;
    if (e.weight) je["weight"] = *e.weight;
    if (e.pi_exact) je["pi_exact"] = *e.pi_exact;
    extremes.push_back(je);
  }
  json j{{"classification", to_string(rep.classification)},
         {"extremes", extremes},
         {"accumulation_points", rep.accumulation_points},
         {"evidence", rep.evidence}};
  if (rep.z_weights) {
    j["z_distribution"] = {{"z_min", rep.z_weights->z_min},
                           {"weights", rep.z_weights->weights},
                           {"truncation_error_bound", rep.z_weights->truncation_error_bound},
                           {"cut", rep.z_weights->cut}};
  }
  return j;
}

namespace {

ProcessSpec process_from_json(const json& j) {
  ProcessSpec spec;
  std::string name = j.at("process").get<std::string>();
  const json params = j.value("params", json::object());
  auto get = [&](const char* key, double dflt) { return params.value(key, dflt); };
  if (name == "bernoulli") {
    spec.kind = ProcessSpec::Kind::Bernoulli;
    spec.theta = get("theta", 1.0);
  } else if (name == "polya") {
    spec.kind = ProcessSpec::Kind::Polya;
    spec.a = get("a", 1.0);
    spec.b = get("b", 1.0);
  } else if (name == "friedman") {
    spec.kind = ProcessSpec::Kind::Friedman;
    spec.a = get("a", 1.0);
    spec.b = get("b", 1.0);
  } else if (name == "crp") {
    spec.kind = ProcessSpec::Kind::Crp;
    spec.alpha = get("alpha", 0.0);
    spec.theta = get("theta", 1.0);
  } else if (name == "crp-gamma") {
    spec.kind = ProcessSpec::Kind::CrpGamma;
    spec.gamma = get("gamma", 0.5);
  } else if (name == "stirling1") {
    spec.kind = ProcessSpec::Kind::Stirling1;
    spec.theta = get("theta", 1.0);
  } else if (name == "spacetime") {
    spec.kind = ProcessSpec::Kind::SpaceTimeWalk;
    spec.theta = get("theta", 1.0);
    spec.a_seq = SeqSpec::parse(params.at("a").get<std::string>());
    if (params.contains("a_tail"))
      spec.a_seq = spec.a_seq.with_tail(SeqSpec::parse(params.at("a_tail").get<std::string>()));
  } else if (name == "stirling2") {
    spec.kind = ProcessSpec::Kind::Stirling2Theta;
    spec.theta = get("theta", 1.0);
    spec.b_seq = SeqSpec::parse(params.value("b", "linear:1,1"));
  } else if (name == "qpascal-qm") {
    spec.kind = ProcessSpec::Kind::QPascalExtreme;
    spec.q = get("q", 0.5);
    spec.m = static_cast<int>(get("m", 0.0));
  } else if (name == "qpolya") {
    spec.kind = ProcessSpec::Kind::QPolya;
    spec.q = get("q", 0.5);
    spec.qp_alpha = static_cast<long>(get("alpha", 1.0));
    spec.qp_beta = static_cast<long>(get("beta", 1.0));
  } else {
    raise(errc::invalid_parameter, "unknown process '" + name + "'");
  }
  return spec;
}

json process_to_json(const ProcessSpec& spec) {
  json params = json::object();
  std::string name;
  switch (spec.kind) {
    case ProcessSpec::Kind::Bernoulli:
      name = "bernoulli";
      params["theta"] = spec.theta;
      break;
    case ProcessSpec::Kind::Polya:
      name = "polya";
      params["a"] = spec.a;
      params["b"] = spec.b;
      break;
    case ProcessSpec::Kind::Friedman:
      name = "friedman";
      params["a"] = spec.a;
      params["b"] = spec.b;
      break;
    case ProcessSpec::Kind::Crp:
      name = "crp";
      params["alpha"] = spec.alpha;
      params["theta"] = spec.theta;
      break;
    case ProcessSpec::Kind::CrpGamma:
      name = "crp-gamma";
      params["gamma"] = spec.gamma;
      break;
    case ProcessSpec::Kind::Stirling1:
      name = "stirling1";
      params["theta"] = spec.theta;
      break;
    case ProcessSpec::Kind::SpaceTimeWalk:
      name = "spacetime";
      params["theta"] = spec.theta;
      params["a"] = spec.a_seq.describe();
      break;
    case ProcessSpec::Kind::Stirling2Theta:
      name = "stirling2";
      params["theta"] = spec.theta;
      params["b"] = spec.b_seq.describe();
      break;
    case ProcessSpec::Kind::QPascalExtreme:
      name = "qpascal-qm";
      params["q"] = spec.q;
      params["m"] = spec.m;
      break;
    case ProcessSpec::Kind::QPolya:
      name = "qpolya";
      params["q"] = spec.q;
      params["alpha"] = static_cast<double>(spec.qp_alpha);
      params["beta"] = static_cast<double>(spec.qp_beta);
      break;
  }
  return json{{"process", name}, {"params", params}};
}

}  // namespace

SimJob job_from_json(const json& j) {
  SimJob job;
  job.process = process_from_json(j);
  job.n = j.at("n").get<int>();
  job.replicates = j.at("replicates").get<long long>();
  job.seed = j.at("seed").get<uint64_t>();
  job.statistic = j.value("statistic", "endpoint");
  std::string sc = j.value("scaler", "n");
  if (sc == "n")
    job.scaler = Scaler::N;
  else if (sc == "logn")
    job.scaler = Scaler::LogN;
  else if (sc == "pow")
    job.scaler = Scaler::PowAlpha;
  else
    raise(errc::invalid_parameter, "unknown scaler '" + sc + "'");
  job.pow_alpha = j.value("pow_alpha", 0.5);
  job.parallel = j.value("parallel", true);
  return job;
}

json job_to_json(const SimJob& job) {
  json j = process_to_json(job.process);
  j["n"] = job.n;
  j["replicates"] = job.replicates;
  j["seed"] = job.seed;
  j["statistic"] = job.statistic;
  j["scaler"] = job.scaler == Scaler::N ? "n" : (job.scaler == Scaler::LogN ? "logn" : "pow");
  j["pow_alpha"] = job.pow_alpha;
  j["parallel"] = job.parallel;
  return j;
}

json run_job(const SimJob& job) {
  json out{{"job", job_to_json(job)}};
  if (job.statistic == "endpoint") {
    auto kernel = process_kernel(job.process);
    auto hist = sample_paths(kernel, job.n, job.replicates, job.seed, job.parallel);
    out["counts"] = hist.counts;
    out["total"] = hist.total;
    double mean = 0;
    for (size_t h = 0; h < hist.counts.size(); ++h)
      mean += static_cast<double>(h) * static_cast<double>(hist.counts[h]);
    out["mean_h"] = mean / static_cast<double>(hist.total);
  } else if (job.statistic == "scaled") {
    auto rep = lln_diagnostic(job.process, job.scaler, job.pow_alpha, job.n, job.replicates,
                              job.seed, job.parallel);
    out["mean"] = rep.mean;
    out["sd"] = rep.sd;
    if (rep.exact_mean_hn) out["exact_mean_hn"] = *rep.exact_mean_hn;
    // fixed 50-bin histogram over [0, max]
    double hi = *std::max_element(rep.values.begin(), rep.values.end());
    if (hi <= 0) hi = 1.0;
    std::vector<long long> bins(50, 0);
    for (double v : rep.values) {
      int b = std::min(49, static_cast<int>(std::floor(v / hi * 50.0)));
      ++bins[static_cast<size_t>(std::max(0, b))];
    }
    out["hist_max"] = hi;
    out["hist_counts"] = bins;
  } else if (job.statistic == "z") {
    if (job.process.kind != ProcessSpec::Kind::SpaceTimeWalk)
      raise(errc::invalid_parameter, "z statistic requires the spacetime process");
    auto est = z_estimate(job.process.a_seq, job.process.theta, job.n, job.replicates, job.seed,
                          job.parallel);
    out["z_min"] = est.z_min;
    out["counts"] = est.counts;
    out["total"] = est.total;
  } else if (job.statistic == "blocks") {
    if (job.process.kind != ProcessSpec::Kind::Crp && job.process.kind != ProcessSpec::Kind::CrpGamma)
      raise(errc::invalid_parameter, "blocks statistic requires a CRP process");
    std::vector<long long> block_counts;
    double mean_blocks = 0;
    for (long long r = 0; r < job.replicates; ++r) {
      CrpSample s = job.process.kind == ProcessSpec::Kind::Crp
                        ? crp_sample(job.process.alpha, job.process.theta, job.n, job.seed,
                                     static_cast<uint64_t>(r))
                        : crp_gamma_sample(job.process.gamma, job.n, job.seed,
                                           static_cast<uint64_t>(r));
      size_t k = s.block_sizes.size();
      if (block_counts.size() <= k) block_counts.resize(k + 1, 0);
      ++block_counts[k];
      mean_blocks += static_cast<double>(k);
    }
    out["block_count_hist"] = block_counts;
    out["mean_blocks"] = mean_blocks / static_cast<double>(job.replicates);
  } else {
    raise(errc::invalid_parameter, "unknown statistic '" + job.statistic + "'");
  }
  return out;
}

}  // namespace wpg
