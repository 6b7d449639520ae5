#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ratlin/pipeline.hpp"

namespace py = pybind11;
using namespace ratlin;

namespace {

using Rows = std::vector<std::vector<std::string>>;

RegionSpec region_from(const std::optional<std::vector<std::string>>& excluded,
                       const std::optional<std::vector<std::string>>& points) {
  if (points) {
    std::vector<Rational> pts;
    for (const auto& p : *points) pts.push_back(parse_rational(p));
    return RegionSpec::finite_set(pts);
  }
  std::vector<Rational> ex;
  if (excluded)
    for (const auto& p : *excluded) ex.push_back(parse_rational(p));
  return RegionSpec::cofinite(ex);
}

py::dict structure_dict(const PoleZeroEntry& e) {
  py::dict d;
  d["locus"] = e.structure.locus.label();
  d["poles"] = e.poles;
  d["zeros"] = e.zeros;
  return d;
}

py::dict barycentric_dict(const BarycentricApprox& r) {
  py::dict d;
  d["z"] = r.z;
  d["w"] = r.w;
  d["g"] = r.g;
  return d;
}

BarycentricApprox barycentric_from(const std::vector<Complex>& z, const std::vector<Complex>& w,
                                   const std::vector<Complex>& g) {
  return BarycentricApprox::make(z, w, g);
}

SampleSet samples_from(const std::vector<Complex>& points, const std::vector<std::vector<Complex>>& values) {
  SampleSet s{points, values};
  s.validate();
  return s;
}

CMatrix cmatrix_from(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and numeric tools for rational matrix linearizations";

  static py::exception<Error> error(m, "RatlinError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(error.ptr())(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      inst.attr("witness") = e.witness();
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  m.def(
      "run",
      [](const std::string& config_path, std::optional<std::string> mode) {
        PipelineConfig cfg = load_config(config_path);
        if (mode) {
          if (*mode == "verify_linearization") cfg.mode = Mode::VerifyLinearization;
          else if (*mode == "solve_rep") cfg.mode = Mode::SolveRep;
          else if (*mode == "solve_nlep") cfg.mode = Mode::SolveNlep;
          else throw Error(ErrorCode::ConfigError, "unknown mode '" + *mode + "'");
        }
        cfg.validate();
        return report_to_json(run(cfg));
      },
      py::arg("config_path"), py::arg("mode") = py::none(), "Runs the pipeline and returns the JSON report.");

  m.def(
      "run_json",
      [](const std::string& config_json, const std::string& base_dir) {
        const PipelineConfig cfg = parse_config(config_json, base_dir);
        cfg.validate();
        return report_to_json(run(cfg));
      },
      py::arg("config_json"), py::arg("base_dir") = "");

  m.def(
      "check_linearization",
      [](const Rows& pencil_rows, std::size_t state_size, const Rows& target_rows,
         std::optional<std::vector<std::string>> excluded, std::optional<std::vector<std::string>> points) {
        const QPolyMatrix l = parse_poly_matrix(pencil_rows, 1);
        const QRatMatrix target = parse_rat_matrix(target_rows);
        const std::size_t n = state_size;
        if (n > l.rows() || n > l.cols()) throw Error(ErrorCode::DimensionMismatch, "state larger than the pencil");
        const SystemMatrix sys = SystemMatrix::make(l.block(0, 0, n, n), l.block(0, n, n, l.cols() - n),
                                                    -l.block(n, 0, l.rows() - n, n),
                                                    l.block(n, n, l.rows() - n, l.cols() - n));
        const LinearizationReport rep = check_linearization_in(sys, target, region_from(excluded, points));
        py::dict d;
        d["is_linearization"] = rep.is_linearization;
        d["rank_condition"] = rep.rank_condition;
        d["pole_match"] = rep.pole_match;
        d["zero_match"] = rep.zero_match;
        d["witness"] = rep.witness;
        py::list st;
        for (const auto& e : rep.target_structure) st.append(structure_dict(e));
        d["target_structure"] = st;
        return d;
      },
      py::arg("pencil"), py::arg("state_size"), py::arg("target"), py::arg("excluded") = py::none(),
      py::arg("points") = py::none());

  m.def(
      "transfer_function",
      [](const Rows& pencil_rows, std::size_t state_size) {
        const QPolyMatrix l = parse_poly_matrix(pencil_rows);
        const std::size_t n = state_size;
        const SystemMatrix sys = SystemMatrix::make(l.block(0, 0, n, n), l.block(0, n, n, l.cols() - n),
                                                    -l.block(n, 0, l.rows() - n, n),
                                                    l.block(n, n, l.rows() - n, l.cols() - n));
        const QRatMatrix g = transfer_function(sys);
        Rows out(g.rows(), std::vector<std::string>(g.cols()));
        for (std::size_t i = 0; i < g.rows(); ++i)
          for (std::size_t j = 0; j < g.cols(); ++j) out[i][j] = to_string(g(i, j));
        return out;
      },
      py::arg("pencil"), py::arg("state_size"));

  m.def(
      "smith_invariant_factors",
      [](const Rows& rows) {
        std::vector<std::string> out;
        for (const auto& f : smith_invariant_factors(parse_poly_matrix(rows))) out.push_back(to_string(f));
        return out;
      },
      py::arg("matrix"));

  m.def(
      "local_orders",
      [](const Rows& rows, const std::string& point) { return local_orders(parse_rat_matrix(rows), parse_rational(point)).orders; },
      py::arg("matrix"), py::arg("point"));

  m.def(
      "pole_zero_structure",
      [](const Rows& rows) {
        const SmithMcMillan sm(parse_rat_matrix(rows));
        py::list out;
        for (const auto& l : loci_of({&sm})) {
          const LocalStructure s = sm.orders_at(l);
          if (!s.is_pole() && !s.is_zero()) continue;
          py::dict d;
          d["locus"] = l.label();
          d["poles"] = s.pole_multiplicities();
          d["zeros"] = s.zero_multiplicities();
          out.append(d);
        }
        return out;
      },
      py::arg("matrix"));

  m.def(
      "aaa",
      [](const std::vector<Complex>& points, const std::vector<Complex>& values, double tol, std::size_t max_m) {
        return barycentric_dict(aaa_approximate(samples_from(points, {values}), tol, max_m));
      },
      py::arg("points"), py::arg("values"), py::arg("tol") = 1e-12, py::arg("max_m") = 50);

  m.def(
      "set_valued_aaa",
      [](const std::vector<Complex>& points, const std::vector<std::vector<Complex>>& values, double tol, std::size_t max_m) {
        py::list out;
        for (const auto& r : set_valued_aaa(samples_from(points, values), tol, max_m)) out.append(barycentric_dict(r));
        return out;
      },
      py::arg("points"), py::arg("values"), py::arg("tol") = 1e-12, py::arg("max_m") = 50);

  m.def(
      "barycentric_eval",
      [](const std::vector<Complex>& z, const std::vector<Complex>& w, const std::vector<Complex>& g, const Complex& x) {
        return barycentric_eval(barycentric_from(z, w, g), x);
      },
      py::arg("z"), py::arg("w"), py::arg("g"), py::arg("x"));

  m.def(
      "irreducible",
      [](const std::vector<Complex>& z, const std::vector<Complex>& w, const std::vector<Complex>& g) {
        const auto rep = irreducibility_report(barycentric_from(z, w, g));
        return py::make_tuple(rep.irreducible, rep.common_roots);
      },
      py::arg("z"), py::arg("w"), py::arg("g"));

  m.def(
      "sample",
      [](const std::string& name, const std::vector<Complex>& points, const Complex& shift) {
        const ScalarFunction f = ScalarFunction::parse(name, shift);
        std::vector<Complex> out;
        for (const auto& p : points) out.push_back(f(p));
        return out;
      },
      py::arg("function"), py::arg("points"), py::arg("shift") = Complex(0.0, 0.0));

  m.def(
      "eigenvalues",
      [](const std::vector<std::vector<Complex>>& l0, const std::vector<std::vector<Complex>>& l1) {
        std::vector<std::optional<Complex>> out;
        for (const auto& e : qz_solve(cmatrix_from(l0), cmatrix_from(l1)))
          out.push_back(e.infinite ? std::nullopt : std::optional<Complex>(e.value));
        return out;
      },
      py::arg("L0"), py::arg("L1"), "Eigenvalues of L0 + x L1; None marks an infinite eigenvalue.");

  m.attr("__version__") = "0.1.0";
}
