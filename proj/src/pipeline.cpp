#include "ratlin/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <type_traits>

namespace ratlin {

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
 public:
  StageTimer(RunReport& r, bool enabled, std::string key)
      : r_(r), enabled_(enabled), key_(std::move(key)), start_(Clock::now()) {}
  ~StageTimer() {
    if (enabled_) r_.timings[key_] += std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  RunReport& r_;
  bool enabled_;
  std::string key_;
  Clock::time_point start_;
};

[[noreturn]] void rethrow_in(const std::string& stage, const Error& e) {
  std::string msg = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  throw Error(e.code(), stage + ": " + msg);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

std::string list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string describe_structure(const std::vector<PoleZeroEntry>& entries) {
  std::string poles, zeros;
  for (const auto& e : entries) {
    if (!e.poles.empty()) poles += (poles.empty() ? "" : ", ") + e.structure.where() + " (" + list(e.poles) + ")";
    if (!e.zeros.empty()) zeros += (zeros.empty() ? "" : ", ") + e.structure.where() + " (" + list(e.zeros) + ")";
  }
  return "poles: " + (poles.empty() ? std::string("none") : poles) +
         "; zeros: " + (zeros.empty() ? std::string("none") : zeros);
}

// ---------------------------------------------------------------------------
// Linearization problems.

void run_linearization(const LinearizationProblem& lp, const PipelineConfig& cfg, RunReport& r) {
  const std::size_t n = lp.state_size;
  const QPolyMatrix& L = lp.pencil;
  if (n > L.rows() || n > L.cols()) throw Error(ErrorCode::ProblemParseError, "state_size exceeds the pencil size");
  r.sizes["rows"] = L.rows();
  r.sizes["cols"] = L.cols();
  r.sizes["state_size"] = n;

  const std::size_t p = L.rows() - n, m = L.cols() - n;
  const QPolyMatrix A = L.block(0, 0, n, n), B = L.block(0, n, n, m);
  const QPolyMatrix C = -L.block(n, 0, p, n), D = L.block(n, n, p, m);
  SystemMatrix sys;
  try {
    sys = SystemMatrix::make(A, B, C, D);
  } catch (const Error& e) {
    rethrow_in("system matrix", e);
  }

  {
    StageTimer t(r, cfg.timings, "verification");
    for (const auto& omega : lp.regions) {
      CheckOutcome c;
      c.check = omega.kind == RegionKind::Infinity ? "check_linearization_at_infinity" : "check_linearization_in";
      try {
        const LinearizationReport rep = omega.kind == RegionKind::Infinity
                                            ? check_linearization_at_infinity(sys, lp.target, omega.grade)
                                            : check_linearization_in(sys, lp.target, omega);
        c.passed = rep.is_linearization;
        c.detail = omega.describe() + ": " + (rep.is_linearization ? "linearization" : "not a linearization") +
                   "; rank " + (rep.rank_condition ? "ok" : "mismatch") + ", poles " +
                   (rep.pole_match ? "match" : "mismatch") + ", zeros " + (rep.zero_match ? "match" : "mismatch") +
                   "; " + describe_structure(rep.target_structure);
        if (!rep.witness.empty()) c.detail += "; witness " + rep.witness;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PreconditionNotMinimal) rethrow_in(c.check, e);
        c.passed = false;
        c.detail = omega.describe() + ": " + e.what();
      }
      r.checks.push_back(c);
    }

    const std::size_t exact_rank = poly_normal_rank(L);
    const std::size_t sampled_rank = normal_rank_by_evaluation(to_rat(L), cfg.seed);
    r.checks.push_back({"normal_rank_by_evaluation", exact_rank == sampled_rank, true,
                        "exact " + std::to_string(exact_rank) + ", sampled " + std::to_string(sampled_rank) +
                            " (seed " + std::to_string(cfg.seed) + ")"});
  }

  if (!lp.bfr) return;
  StageTimer t(r, cfg.timings, "block_full_rank");
  BfrShape shape = lp.bfr->shape;
  shape.n = n;
  BfrParts parts;
  try {
    parts = ingest(L, lp.bfr->layout, shape, lp.bfr->N1, lp.bfr->N2);
  } catch (const Error& e) {
    rethrow_in("block full rank ingest", e);
  }
  for (const auto& omega : lp.regions) {
    if (omega.kind == RegionKind::Infinity) {
      try {
        const InfinityCheck ic = check_infinity_condition(parts);
        const bool ok = ic.passed && ic.grade == omega.grade;
        r.checks.push_back({"check_infinity_condition", ok, true,
                            "grade " + std::to_string(ic.grade) + (ic.reason.empty() ? "" : "; " + ic.reason)});
      } catch (const Error& e) {
        r.checks.push_back({"check_infinity_condition", false, true, e.what()});
      }
      continue;
    }
    try {
      const bool ok = check_finite_condition(parts, omega);
      r.checks.push_back({"check_finite_condition", ok, true, omega.describe()});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DualBasisNotFullRankInRegion) rethrow_in("check_finite_condition", e);
      r.checks.push_back({"check_finite_condition", false, true, omega.describe() + ": " + e.what()});
    }
  }
  const bool same = recover_R(parts) == lp.target;
  r.checks.push_back({"recover_R", same, true, same ? "N2 (M + C A^-1 B) N1^T equals the target" : "differs from the target"});
}

// ---------------------------------------------------------------------------
// NLEP problems.

template <class T>
Matrix<T> pick(const MatrixData& m) {
  if constexpr (std::is_same_v<T, Rational>)
    return m.q;
  else
    return m.c;
}

bool all_exact(const NlepProblem& p) {
  auto ok = [](const std::vector<MatrixData>& v) {
    for (const auto& m : v)
      if (!m.exact) return false;
    return true;
  };
  if (!ok(p.Q) || !ok(p.A) || !ok(p.B)) return false;
  for (const auto& t : p.terms)
    if (!t.C.exact || !t.D.exact) return false;
  return true;
}

bool real_approximant(const BarycentricApprox& r) {
  for (const auto* v : {&r.z, &r.w, &r.g})
    for (const auto& x : *v)
      if (x.imag() != 0.0) return false;
  return true;
}

template <class T>
NlepModel<T> make_model(const NlepProblem& p, const PipelineConfig& cfg) {
  std::vector<NlepTerm<T>> terms;
  for (const auto& t : p.terms) terms.push_back({pick<T>(t.C), pick<T>(t.D), t.function});
  NlepModel<T> m;
  if (p.relation) {
    m.n = p.n;
    m.rel = *p.relation;
    for (const auto& a : p.A) m.A.push_back(pick<T>(a));
    for (const auto& b : p.B) m.B.push_back(pick<T>(b));
    m.terms = std::move(terms);
  } else {
    if (cfg.basis == "custom") throw Error(ErrorCode::ConfigError, "basis custom needs a relation in the problem file");
    std::vector<Matrix<T>> q;
    for (const auto& c : p.Q) q.push_back(pick<T>(c));
    m = NlepModel<T>::from_polynomial(q, cfg.basis, std::move(terms));
  }
  m.validate();
  return m;
}

std::vector<BarycentricApprox> approximate(const NlepProblem& p, const PipelineConfig& cfg,
                                           const SamplingRegion& sigma, RunReport& r) {
  const std::vector<Complex> points = sigma.sample_points();
  std::vector<BarycentricApprox> out(p.terms.size());
  std::vector<std::vector<Complex>> values(p.terms.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const TermSpec& t = p.terms[i];
    const std::string stage = "term " + std::to_string(i) + " sampling";
    if (t.sample_values) {
      if (t.sample_values->size() != points.size())
        throw Error(ErrorCode::ProblemParseError, stage + ": " + std::to_string(t.sample_values->size()) +
                                                      " samples for " + std::to_string(points.size()) + " points");
      values[i] = *t.sample_values;
    } else if (t.function) {
      try {
        values[i] = sample({*t.function}, sigma).values.front();
      } catch (const Error& e) {
        rethrow_in(stage, e);
      }
    }
    if (t.barycentric) {
      out[i] = *t.barycentric;
    } else {
      todo.push_back(i);
    }
  }

  try {
    if (cfg.set_valued && todo.size() > 1) {
      SampleSet s{points, {}};
      for (std::size_t i : todo) s.values.push_back(values[i]);
      const auto rs = set_valued_aaa(s, cfg.aaa_tol, cfg.aaa_max_m);
      for (std::size_t j = 0; j < todo.size(); ++j) out[todo[j]] = rs[j];
    } else {
      for (std::size_t i : todo) out[i] = aaa_approximate(SampleSet{points, {values[i]}}, cfg.aaa_tol, cfg.aaa_max_m);
    }
  } catch (const Error& e) {
    rethrow_in("aaa", e);
  }

  bool within_tol = true;
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const TermSpec& t = p.terms[i];
    ApproximationRow row;
    row.function = t.function ? t.function->describe() : t.barycentric ? "barycentric" : "samples";
    row.m = out[i].m();
    row.irreducible = irreducibility_report(out[i]).irreducible;
    if (!values[i].empty()) {
      const SampleSet s{points, {values[i]}};
      row.relative_error = relative_sample_error(out[i], s);
      if (!t.barycentric) within_tol = within_tol && row.relative_error <= cfg.aaa_tol;
      for (std::size_t k = 0; k < points.size(); ++k)
        r.plot.push_back({i, points[k].real(), points[k].imag(), std::abs(barycentric_eval(out[i], points[k]) - values[i][k])});
    }
    r.approximations.push_back(row);
  }
  if (!todo.empty())
    r.checks.push_back({"aaa_approximate", within_tol, true,
                        std::string(cfg.set_valued ? "set-valued" : "separate") + " AAA, tol " + format_double(cfg.aaa_tol)});
  return out;
}

template <class T>
CorkPencil<T> build_pencil(const NlepModel<T>& model, const std::vector<Barycentric<T>>& approxs,
                           const PipelineConfig& cfg) {
  if (model.terms.empty()) return build_cork(model.A, model.B, model.rel);
  if (cfg.form == "trimmed") {
    std::vector<LowRankFactors<T>> factors;
    for (const auto& t : model.terms) {
      if constexpr (std::is_same_v<T, Rational>)
        factors.push_back(low_rank_factorize(t.C, t.D, 0.0));
      else
        factors.push_back(low_rank_factorize(t.C, t.D, cfg.low_rank_tol));
    }
    return build_trimmed_cork(model, approxs, factors);
  }
  return build_cork_aaa(model, approxs);
}

CMatrix complex_of(const QMatrix& m) { return m.map([](const Rational& v) { return to_complex(v); }); }
CMatrix complex_of(const CMatrix& m) { return m; }

template <class T>
void run_nlep_typed(const NlepProblem& prob, const PipelineConfig& cfg, const std::vector<Barycentric<T>>& approxs,
                    const EigenRegion& target, RunReport& r) {
  NlepModel<T> model;
  CorkPencil<T> pencil;
  {
    StageTimer t(r, cfg.timings, "linearization");
    try {
      model = make_model<T>(prob, cfg);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw;
      rethrow_in("model", e);
    }
    const RelationCertificate cert = certify_relation(model.rel);
    r.checks.push_back({"certify_relation", cert.ok(), true,
                        model.rel.name + ": f0 = 1 " + (cert.f0_is_one ? "yes" : "no") + ", annihilates " +
                            (cert.annihilates ? "yes" : "no") + ", full rank everywhere " +
                            (cert.rank_everywhere ? "yes" : "no")});
    try {
      pencil = build_pencil(model, approxs, cfg);
    } catch (const Error& e) {
      rethrow_in("linearization", e);
    }
  }

  const std::size_t n = model.n, k = model.rel.k();
  std::size_t full = k * n, trimmed = k * n;
  for (const auto& t : pencil.terms) {
    full += t.r.m() * n;
    trimmed += t.r.m() * t.rank;
  }
  r.sizes["n"] = n;
  r.sizes["k"] = k;
  r.sizes["pencil_dim"] = pencil.dim();
  r.sizes["state_size"] = pencil.state_size();
  r.sizes["full_dim"] = full;
  if (cfg.form == "trimmed") r.sizes["trimmed_dim"] = trimmed;

  if (!pencil.terms.empty()) {
    StageTimer t(r, cfg.timings, "minimality");
    try {
      const auto rep = check_sufficient_minimality(pencil, MinimalityOptions{1e-8, cfg.direct_minimality_check});
      r.checks.push_back({"check_sufficient_minimality", rep.certified_minimal, false,
                          std::string(rep.exact ? "exact: " : "numeric: ") + rep.summary()});
    } catch (const Error& e) {
      rethrow_in("check_sufficient_minimality", e);
    }
  }

  if (cfg.mode == Mode::VerifyLinearization) {
    StageTimer t(r, cfg.timings, "verification");
    if constexpr (std::is_same_v<T, Rational>) {
      try {
        const BfrParts parts = cork_as_bfr(pencil, CorkView::State);
        const QRatMatrix target_R = cork_target(pencil);
        const RegionSpec omega = RegionSpec::cofinite();
        CheckOutcome c{"check_linearization_in", false, true, ""};
        try {
          const LinearizationReport rep = check_linearization_in(assemble(parts), target_R, omega);
          c.passed = rep.is_linearization;
          c.detail = omega.describe() + ": " + (rep.is_linearization ? "linearization" : "not a linearization") +
                     (rep.witness.empty() ? "" : "; witness " + rep.witness);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::PreconditionNotMinimal) throw;
          c.detail = omega.describe() + ": " + e.what();
        }
        r.checks.push_back(c);
        const InfinityCheck ic = check_infinity_condition(parts);
        r.checks.push_back({"check_infinity_condition", ic.passed, false,
                            "grade " + std::to_string(ic.grade) + (ic.reason.empty() ? "" : "; " + ic.reason)});
      } catch (const Error& e) {
        rethrow_in("verification", e);
      }
    } else {
      r.checks.push_back({"check_linearization_in", false, false,
                          "complex data: no exact verification, see check_sufficient_minimality"});
    }
    return;
  }

  std::vector<Eigenpair> pairs;
  {
    StageTimer t(r, cfg.timings, "eigensolve");
    try {
      pairs = recover_and_filter(qz_solve(complex_of(pencil.L0), complex_of(pencil.L1)), pencil, &model, target);
    } catch (const Error& e) {
      rethrow_in("eigensolve", e);
    }
  }
  double worst = 0.0;
  std::size_t zeros = 0;
  bool ok = true;
  const bool against_f = cfg.mode == Mode::SolveNlep;
  for (const auto& e : pairs) {
    EigenRow row{e.value.real(), e.value.imag(), std::nullopt, e.residual_nonlinear, to_string(e.cls)};
    if (e.cls == EigenClass::Zero) {
      row.residual = e.residual;
      const double res = against_f && e.residual_nonlinear ? *e.residual_nonlinear : e.residual;
      ++zeros;
      if (!(res <= cfg.residual_threshold)) ok = false;
      if (!(res <= worst)) worst = res;
    }
    r.eigenpairs.push_back(row);
  }
  r.checks.push_back({"eigenpair_residuals", ok, true,
                      std::to_string(zeros) + " eigenvalues, max residual " + format_double(worst) + " against " +
                          (against_f ? "F where available, R otherwise" : "R") + ", threshold " +
                          format_double(cfg.residual_threshold)});
}

void run_nlep(const NlepProblem& prob, const PipelineConfig& cfg, RunReport& r) {
  const SamplingRegion sigma = cfg.sampling ? *cfg.sampling : prob.sampling ? *prob.sampling : SamplingRegion{};
  const EigenRegion target = cfg.target ? *cfg.target : prob.target ? *prob.target : EigenRegion::all();

  std::vector<BarycentricApprox> approxs;
  {
    StageTimer t(r, cfg.timings, "approximation");
    approxs = approximate(prob, cfg, sigma, r);
  }

  bool exact = all_exact(prob);
  for (const auto& a : approxs) exact = exact && real_approximant(a);
  r.sizes["exact_arithmetic"] = exact ? 1 : 0;
  if (exact) {
    std::vector<QBarycentric> q;
    for (const auto& a : approxs) q.push_back(rationalize(a));
    run_nlep_typed<Rational>(prob, cfg, q, target, r);
  } else {
    run_nlep_typed<Complex>(prob, cfg, approxs, target, r);
  }
}

}  // namespace

RunReport run(const PipelineConfig& config) {
  config.validate();
  return run(config, load_problem(config.problem_path));
}

RunReport run(const PipelineConfig& config, const Problem& problem) {
  config.validate();
  RunReport r;
  r.mode = to_string(config.mode);
  r.problem_kind = problem.kind;
  r.config = config_to_json(config);
  {
    StageTimer t(r, config.timings, "total");
    if (problem.linearization) {
      if (config.mode != Mode::VerifyLinearization)
        throw Error(ErrorCode::ConfigError, "a linearization problem only supports mode verify_linearization");
      run_linearization(*problem.linearization, config, r);
    } else if (problem.nlep) {
      run_nlep(*problem.nlep, config, r);
    } else {
      throw Error(ErrorCode::ProblemParseError, "empty problem");
    }
  }
  r.passed = true;
  for (const auto& c : r.checks)
    if (c.gating && !c.passed) r.passed = false;
  return r;
}

int exit_code(const RunReport& report) { return report.passed ? 0 : 1; }

}  // namespace ratlin
