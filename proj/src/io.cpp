#include "ratlin/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace ratlin {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Expression parser.

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  RatFun<Rational> parse() {
    RatFun<Rational> r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ProblemParseError, "cannot parse '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_variable() {
    skip();
    if (pos_ >= s_.size()) return false;
    return s_[pos_] == 'x' || s_.compare(pos_, 2, "\xCE\xBB") == 0 || s_.compare(pos_, 6, "lambda") == 0;
  }
  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == '.' || starts_variable();
  }

  RatFun<Rational> expr() {
    RatFun<Rational> r = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        r += term();
      } else if (peek('-')) {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }

  RatFun<Rational> term() {
    RatFun<Rational> r = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        r *= unary();
      } else if (peek('/')) {
        ++pos_;
        r /= unary();
      } else if (starts_atom()) {
        r *= power();
      } else {
        return r;
      }
    }
  }

  RatFun<Rational> unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatFun<Rational> power() {
    RatFun<Rational> base = atom();
    if (!peek('^')) return base;
    ++pos_;
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    }
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer");
    const int e = std::stoi(s_.substr(start, pos_ - start));
    RatFun<Rational> r = RatFun<Rational>::one();
    for (int i = 0; i < e; ++i) r *= base;
    return neg ? RatFun<Rational>::one() / r : r;
  }

  RatFun<Rational> atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_[pos_] == '(') {
      ++pos_;
      RatFun<Rational> r = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return r;
    }
    if (s_[pos_] == 'x') {
      ++pos_;
      return RatFun<Rational>(Poly<Rational>::x());
    }
    if (s_.compare(pos_, 2, "\xCE\xBB") == 0) {
      pos_ += 2;
      return RatFun<Rational>(Poly<Rational>::x());
    }
    if (s_.compare(pos_, 6, "lambda") == 0) {
      pos_ += 6;
      return RatFun<Rational>(Poly<Rational>::x());
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    if (start == pos_) fail("expected a number, x or '('");
    try {
      return RatFun<Rational>::constant(parse_rational(s_.substr(start, pos_ - start)));
    } catch (const Error&) {
      fail("bad number");
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// JSON helpers.

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ProblemParseError, what); }

struct ScalarValue {
  bool exact = true;
  Rational q;
  Complex c;
};

ScalarValue scalar(const json& j, const std::string& where) {
  ScalarValue v;
  if (j.is_number_integer()) {
    v.q = Rational(std::to_string(j.get<long long>()));
  } else if (j.is_number()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) parse_error(where + ": non-finite number");
    v.q = exact_from_double(d);
  } else if (j.is_string()) {
    try {
      v.q = parse_rational(j.get<std::string>());
    } catch (const Error&) {
      parse_error(where + ": bad rational '" + j.get<std::string>() + "'");
    }
  } else if (j.is_array() && j.size() == 2) {
    const ScalarValue re = scalar(j[0], where), im = scalar(j[1], where);
    if (!re.exact || !im.exact) parse_error(where + ": nested complex");
    v.c = Complex(re.q.get_d(), im.q.get_d());
    if (is_zero(im.q)) {
      v.q = re.q;
      return v;
    }
    v.exact = false;
    return v;
  } else {
    parse_error(where + ": expected a number, \"p/q\" string or [re, im]");
  }
  v.c = to_complex(v.q);
  return v;
}

Complex complex_value(const json& j, const std::string& where) { return scalar(j, where).c; }

MatrixData matrix(const json& j, const std::string& where, std::size_t n) {
  if (!j.is_array() || j.size() != n) parse_error(where + ": expected " + std::to_string(n) + " rows");
  MatrixData m{true, QMatrix(n, n), CMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) parse_error(where + ": row " + std::to_string(i) + " has wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      const ScalarValue v = scalar(j[i][k], where);
      m.exact = m.exact && v.exact;
      m.q(i, k) = v.q;
      m.c(i, k) = v.c;
    }
  }
  return m;
}

MatrixData zero_matrix(std::size_t n) { return MatrixData{true, QMatrix(n, n), CMatrix(n, n)}; }

std::vector<std::vector<std::string>> string_rows(const json& j, const std::string& where) {
  if (!j.is_array()) parse_error(where + ": expected an array of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) parse_error(where + ": expected an array of rows");
    std::vector<std::string> row;
    for (const auto& e : r) {
      if (e.is_string()) {
        row.push_back(e.get<std::string>());
      } else if (e.is_number_integer()) {
        row.push_back(std::to_string(e.get<long long>()));
      } else {
        parse_error(where + ": entries must be strings or integers");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Complex> complex_list(const json& j, const std::string& where) {
  if (!j.is_array()) parse_error(where + ": expected an array");
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_value(e, where));
  return out;
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

SamplingRegion sampling_region(const json& j) {
  SamplingRegion s;
  const std::string kind = j.value("kind", "segment");
  s.count = j.value("count", static_cast<std::size_t>(100));
  if (kind == "disc") {
    s.kind = SamplingKind::Disc;
    if (j.contains("center")) s.center = complex_value(j["center"], "sampling.center");
    s.radius = j.value("radius", 1.0);
  } else if (kind == "segment") {
    s.kind = SamplingKind::Segment;
    if (j.contains("a")) s.a = complex_value(j["a"], "sampling.a");
    if (j.contains("b")) s.b = complex_value(j["b"], "sampling.b");
  } else if (kind == "points") {
    s.kind = SamplingKind::Points;
    s.points = complex_list(j.at("points"), "sampling.points");
  } else {
    parse_error("unknown sampling kind '" + kind + "'");
  }
  return s;
}

json sampling_json(const SamplingRegion& s) {
  json j;
  switch (s.kind) {
    case SamplingKind::Disc:
      j = {{"kind", "disc"}, {"center", complex_json(s.center)}, {"radius", s.radius}, {"count", s.count}};
      break;
    case SamplingKind::Segment:
      j = {{"kind", "segment"}, {"a", complex_json(s.a)}, {"b", complex_json(s.b)}, {"count", s.count}};
      break;
    case SamplingKind::Points: {
      json pts = json::array();
      for (const auto& p : s.points) pts.push_back(complex_json(p));
      j = {{"kind", "points"}, {"points", pts}};
      break;
    }
  }
  return j;
}

EigenRegion eigen_region(const json& j) {
  const std::string kind = j.value("kind", "all");
  if (kind == "all") return EigenRegion::all();
  if (kind == "disc")
    return EigenRegion::disc(j.contains("center") ? complex_value(j["center"], "target.center") : Complex(0.0, 0.0),
                             j.value("radius", 1.0));
  if (kind == "box")
    return EigenRegion::box(j.at("re_min").get<double>(), j.at("re_max").get<double>(), j.at("im_min").get<double>(),
                            j.at("im_max").get<double>());
  parse_error("unknown target region kind '" + kind + "'");
}

json eigen_region_json(const EigenRegion& e) {
  switch (e.kind) {
    case EigenRegion::Kind::All: return {{"kind", "all"}};
    case EigenRegion::Kind::Disc: return {{"kind", "disc"}, {"center", complex_json(e.center)}, {"radius", e.radius}};
    case EigenRegion::Kind::Box:
      return {{"kind", "box"}, {"re_min", e.re_min}, {"re_max", e.re_max}, {"im_min", e.im_min}, {"im_max", e.im_max}};
  }
  return {};
}

RegionSpec region_spec(const json& j) {
  const std::string kind = j.value("kind", "cofinite");
  auto points = [&j](const char* key) {
    std::vector<Rational> pts;
    if (j.contains(key))
      for (const auto& p : j[key]) {
        const ScalarValue v = scalar(p, std::string("region.") + key);
        if (!v.exact) parse_error("region points must be rational");
        pts.push_back(v.q);
      }
    return pts;
  };
  if (kind == "cofinite") return RegionSpec::cofinite(points("excluded"));
  if (kind == "finite") return RegionSpec::finite_set(points("points"));
  if (kind == "infinity") return RegionSpec::infinity(j.value("grade", 1));
  parse_error("unknown region kind '" + kind + "'");
}

LinearizationProblem linearization_problem(const json& j) {
  LinearizationProblem p;
  p.pencil = parse_poly_matrix(string_rows(j.at("pencil"), "pencil"), 1);
  p.state_size = j.value("state_size", static_cast<std::size_t>(0));
  p.target = parse_rat_matrix(string_rows(j.at("target"), "target"));
  if (j.contains("regions"))
    for (const auto& r : j["regions"]) p.regions.push_back(region_spec(r));
  if (p.regions.empty()) p.regions.push_back(RegionSpec::cofinite());
  if (j.contains("bfr")) {
    const json& b = j["bfr"];
    LinearizationProblem::Bfr bfr;
    const std::string layout = b.value("layout", "standard");
    if (layout == "standard") {
      bfr.layout = BfrLayout::Standard;
    } else if (layout == "state_last") {
      bfr.layout = BfrLayout::StateLast;
    } else {
      parse_error("unknown layout '" + layout + "'");
    }
    bfr.shape.n = p.state_size;
    bfr.shape.m_rows = b.at("m_rows").get<std::size_t>();
    bfr.shape.m_cols = b.at("m_cols").get<std::size_t>();
    bfr.shape.k1 = b.value("k1", static_cast<std::size_t>(0));
    bfr.shape.k2 = b.value("k2", static_cast<std::size_t>(0));
    if (b.contains("N1")) bfr.N1 = parse_rat_matrix(string_rows(b["N1"], "bfr.N1"));
    if (b.contains("N2")) bfr.N2 = parse_rat_matrix(string_rows(b["N2"], "bfr.N2"));
    p.bfr = std::move(bfr);
  }
  return p;
}

NlepProblem nlep_problem(const json& j) {
  NlepProblem p;
  p.n = j.at("n").get<std::size_t>();
  if (j.contains("Q"))
    for (const auto& m : j["Q"]) p.Q.push_back(matrix(m, "Q", p.n));
  if (j.contains("relation")) {
    const json& r = j["relation"];
    std::vector<RatFun<Rational>> f;
    for (const auto& e : r.at("f")) f.push_back(parse_ratfun(e.get<std::string>()));
    const std::size_t k = f.size();
    auto plain = [k](const json& m, const char* name) {
      QMatrix out(k - 1, k);
      if (!m.is_array() || m.size() != k - 1) parse_error(std::string("relation.") + name + ": wrong shape");
      for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t c = 0; c < k; ++c) {
          const ScalarValue v = scalar(m[i].at(c), std::string("relation.") + name);
          if (!v.exact) parse_error("relation matrices must be rational");
          out(i, c) = v.q;
        }
      return out;
    };
    p.relation = custom_relation(std::move(f), plain(r.at("X"), "X"), plain(r.at("Y"), "Y"));
    for (const auto& m : j.at("A")) p.A.push_back(matrix(m, "A", p.n));
    for (const auto& m : j.at("B")) p.B.push_back(matrix(m, "B", p.n));
  }
  if (p.Q.empty() && !p.relation) parse_error("nlep problem needs Q or a relation with A and B");
  if (j.contains("terms"))
    for (const auto& t : j["terms"]) {
      TermSpec ts;
      ts.C = t.contains("C") ? matrix(t["C"], "terms.C", p.n) : zero_matrix(p.n);
      ts.D = t.contains("D") ? matrix(t["D"], "terms.D", p.n) : zero_matrix(p.n);
      if (t.contains("function")) {
        const json& f = t["function"];
        const Complex shift = f.contains("shift") ? complex_value(f["shift"], "function.shift") : Complex(0.0, 0.0);
        ts.function = ScalarFunction::parse(f.at("name").get<std::string>(), shift);
      }
      if (t.contains("samples")) ts.sample_values = complex_list(t["samples"], "terms.samples");
      if (t.contains("barycentric")) {
        const json& b = t["barycentric"];
        try {
          ts.barycentric = BarycentricApprox::make(complex_list(b.at("z"), "barycentric.z"),
                                                   complex_list(b.at("w"), "barycentric.w"),
                                                   complex_list(b.at("g"), "barycentric.g"));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::ProblemParseError) throw;
          parse_error(std::string("barycentric data: ") + e.what());
        }
      }
      if (!ts.function && !ts.sample_values && !ts.barycentric)
        parse_error("each term needs a function, samples or barycentric data");
      p.terms.push_back(std::move(ts));
    }
  if (j.contains("sampling")) p.sampling = sampling_region(j["sampling"]);
  if (j.contains("target")) p.target = eigen_region(j["target"]);
  return p;
}

json report_json(const RunReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["mode"] = r.mode;
  j["problem_kind"] = r.problem_kind;
  j["config"] = r.config.empty() ? json::object() : json::parse(r.config);
  j["approximations"] = json::array();
  for (const auto& a : r.approximations)
    j["approximations"].push_back(
        {{"function", a.function}, {"m", a.m}, {"relative_error", a.relative_error}, {"irreducible", a.irreducible}});
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"check", c.check}, {"passed", c.passed}, {"gating", c.gating}, {"detail", c.detail}});
  j["eigenpairs"] = json::array();
  for (const auto& e : r.eigenpairs) {
    json row = {{"re", e.re}, {"im", e.im}, {"classification", e.classification}};
    row["residual"] = e.residual ? json(*e.residual) : json(nullptr);
    row["residual_nonlinear"] = e.residual_nonlinear ? json(*e.residual_nonlinear) : json(nullptr);
    j["eigenpairs"].push_back(row);
  }
  j["sizes"] = json::object();
  for (const auto& [k, v] : r.sizes) j["sizes"][k] = v;
  if (!r.timings.empty()) {
    j["timings"] = json::object();
    for (const auto& [k, v] : r.timings) j["timings"][k] = v;
  }
  j["plot"] = json::array();
  for (const auto& p : r.plot)
    j["plot"].push_back({{"function", p.function}, {"re", p.re}, {"im", p.im}, {"abs_error", p.abs_error}});
  j["passed"] = r.passed;
  return j;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

RatFun<Rational> parse_ratfun(const std::string& text) { return ExprParser(text).parse(); }

QRatMatrix parse_rat_matrix(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows.front().size() : 0;
  QRatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::ProblemParseError, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_ratfun(rows[i][j]);
  }
  return m;
}

QPolyMatrix parse_poly_matrix(const std::vector<std::vector<std::string>>& rows, int max_degree) {
  const QRatMatrix r = parse_rat_matrix(rows);
  QPolyMatrix p(r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      if (!r(i, j).is_polynomial()) throw Error(ErrorCode::ProblemParseError, "entry '" + rows[i][j] + "' is not a polynomial");
      p(i, j) = r(i, j).num() * (Rational(1) / r(i, j).den().lead());
      if (max_degree >= 0 && p(i, j).degree() && *p(i, j).degree() > max_degree)
        throw Error(ErrorCode::ProblemParseError, "entry '" + rows[i][j] + "' has degree above " + std::to_string(max_degree));
    }
  return p;
}

Problem parse_problem(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.value("schema_version", 1) != 1) parse_error("unsupported schema_version");
    Problem p;
    p.kind = j.value("kind", "");
    if (p.kind == "linearization") {
      p.linearization = linearization_problem(j);
    } else if (p.kind == "nlep") {
      p.nlep = nlep_problem(j);
    } else {
      parse_error("problem kind must be \"linearization\" or \"nlep\"");
    }
    return p;
  } catch (const json::exception& e) {
    parse_error(std::string("malformed problem: ") + e.what());
  }
}

Problem load_problem(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    parse_error(std::string("cannot read problem file: ") + e.what());
  }
  return parse_problem(text);
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::VerifyLinearization: return "verify_linearization";
    case Mode::SolveRep: return "solve_rep";
    case Mode::SolveNlep: return "solve_nlep";
  }
  return "";
}

void PipelineConfig::validate() const {
  auto bad = [](const std::string& w) { throw Error(ErrorCode::ConfigError, w); };
  if (problem_path.empty()) bad("problem path is required");
  if (!(aaa_tol > 0.0)) bad("aaa.tol must be positive");
  if (aaa_max_m < 1) bad("aaa.max_m must be at least 1");
  if (form != "full" && form != "trimmed") bad("linearization.form must be full or trimmed");
  if (basis != "monomial" && basis != "chebyshev" && basis != "custom") bad("linearization.basis must be monomial, chebyshev or custom");
  if (!(low_rank_tol >= 0.0)) bad("linearization.low_rank_tol must be nonnegative");
  if (output_format != "json" && output_format != "csv") bad("output.format must be json or csv");
  if (!(residual_threshold > 0.0)) bad("residual_threshold must be positive");
}

PipelineConfig parse_config(const std::string& json_text, const std::string& base_dir) {
  PipelineConfig c;
  try {
    const json j = json::parse(json_text);
    if (j.value("schema_version", 1) != 1) throw Error(ErrorCode::ConfigError, "unsupported schema_version");
    c.problem_path = j.value("problem", "");
    if (!c.problem_path.empty() && !base_dir.empty() && std::filesystem::path(c.problem_path).is_relative())
      c.problem_path = (std::filesystem::path(base_dir) / c.problem_path).lexically_normal().string();
    const std::string mode = j.value("mode", "solve_nlep");
    if (mode == "verify_linearization") {
      c.mode = Mode::VerifyLinearization;
    } else if (mode == "solve_rep") {
      c.mode = Mode::SolveRep;
    } else if (mode == "solve_nlep") {
      c.mode = Mode::SolveNlep;
    } else {
      throw Error(ErrorCode::ConfigError, "unknown mode '" + mode + "'");
    }
    if (j.contains("aaa")) {
      const json& a = j["aaa"];
      c.aaa_tol = a.value("tol", c.aaa_tol);
      c.aaa_max_m = a.value("max_m", c.aaa_max_m);
      c.set_valued = a.value("set_valued", c.set_valued);
    }
    if (j.contains("linearization")) {
      const json& l = j["linearization"];
      c.form = l.value("form", c.form);
      c.basis = l.value("basis", c.basis);
      c.low_rank_tol = l.value("low_rank_tol", c.low_rank_tol);
    }
    if (j.contains("sampling")) c.sampling = sampling_region(j["sampling"]);
    if (j.contains("target")) c.target = eigen_region(j["target"]);
    if (j.contains("output")) {
      const json& o = j["output"];
      c.output_format = o.value("format", c.output_format);
      c.output_path = o.value("path", c.output_path);
      c.timings = o.value("timings", c.timings);
    }
    c.seed = j.value("seed", c.seed);
    c.residual_threshold = j.value("residual_threshold", c.residual_threshold);
    c.direct_minimality_check = j.value("direct_minimality_check", c.direct_minimality_check);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ConfigError, e.what());
  }
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, std::string("cannot read config: ") + e.what());
  }
  return parse_config(text, std::filesystem::path(path).parent_path().string());
}

std::string config_to_json(const PipelineConfig& c) {
  json j;
  j["schema_version"] = 1;
  j["problem"] = c.problem_path;
  j["mode"] = to_string(c.mode);
  j["aaa"] = {{"tol", c.aaa_tol}, {"max_m", c.aaa_max_m}, {"set_valued", c.set_valued}};
  j["linearization"] = {{"form", c.form}, {"basis", c.basis}, {"low_rank_tol", c.low_rank_tol}};
  if (c.sampling) j["sampling"] = sampling_json(*c.sampling);
  if (c.target) j["target"] = eigen_region_json(*c.target);
  j["output"] = {{"format", c.output_format}, {"path", c.output_path}, {"timings", c.timings}};
  j["seed"] = c.seed;
  j["residual_threshold"] = c.residual_threshold;
  j["direct_minimality_check"] = c.direct_minimality_check;
  return j.dump();
}

std::string report_to_json(const RunReport& r) { return report_json(r).dump(2) + "\n"; }

RunReport report_from_json(const std::string& text) {
  RunReport r;
  try {
    const json j = json::parse(text);
    r.schema_version = j.at("schema_version").get<int>();
    r.mode = j.at("mode").get<std::string>();
    r.problem_kind = j.at("problem_kind").get<std::string>();
    r.config = j.at("config").is_null() ? std::string() : j.at("config").dump();
    for (const auto& a : j.at("approximations"))
      r.approximations.push_back({a.at("function").get<std::string>(), a.at("m").get<std::size_t>(),
                                  a.at("relative_error").get<double>(), a.at("irreducible").get<bool>()});
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("check").get<std::string>(), c.at("passed").get<bool>(), c.at("gating").get<bool>(),
                          c.at("detail").get<std::string>()});
    for (const auto& e : j.at("eigenpairs")) {
      EigenRow row;
      row.re = e.at("re").get<double>();
      row.im = e.at("im").get<double>();
      if (!e.at("residual").is_null()) row.residual = e.at("residual").get<double>();
      if (!e.at("residual_nonlinear").is_null()) row.residual_nonlinear = e.at("residual_nonlinear").get<double>();
      row.classification = e.at("classification").get<std::string>();
      r.eigenpairs.push_back(row);
    }
    for (const auto& [k, v] : j.at("sizes").items()) r.sizes[k] = v.get<std::size_t>();
    if (j.contains("timings"))
      for (const auto& [k, v] : j["timings"].items()) r.timings[k] = v.get<double>();
    for (const auto& p : j.at("plot"))
      r.plot.push_back({p.at("function").get<std::size_t>(), p.at("re").get<double>(), p.at("im").get<double>(),
                        p.at("abs_error").get<double>()});
    r.passed = j.at("passed").get<bool>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ProblemParseError, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string eigenpairs_csv(const RunReport& r) {
  std::ostringstream os;
  os << "re,im,residual,residual_nonlinear,classification\n";
  for (const auto& e : r.eigenpairs) {
    os << format_double(e.re) << ',' << format_double(e.im) << ',' << (e.residual ? format_double(*e.residual) : "")
       << ',' << (e.residual_nonlinear ? format_double(*e.residual_nonlinear) : "") << ',' << e.classification << '\n';
  }
  return os.str();
}

std::string plot_csv(const RunReport& r) {
  std::ostringstream os;
  os << "function,re,im,abs_error\n";
  for (const auto& p : r.plot)
    os << p.function << ',' << format_double(p.re) << ',' << format_double(p.im) << ',' << format_double(p.abs_error)
       << '\n';
  return os.str();
}

void emit(const RunReport& r, const std::string& format, const std::string& path) {
  if (format == "json") {
    write_file(path, report_to_json(r));
  } else if (format == "csv") {
    write_file(path, eigenpairs_csv(r));
  } else {
    throw Error(ErrorCode::ConfigError, "unknown output format '" + format + "'");
  }
  if (!r.plot.empty()) write_file(path + ".samples.csv", plot_csv(r));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace ratlin
