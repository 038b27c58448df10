#include "rrk/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace rrk {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError("cannot parse number '" + std::string(whole) + "'");
  }
  return value;
}

// Imaginary coefficient text: "", "+", "-" stand for 1, 1, -1.
double parse_imaginary(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty complex value");
  if (s.back() != 'i' && s.back() != 'j') return Complex(parse_real(s, text), 0.0);

  const std::string_view body = s.substr(0, s.size() - 1);
  for (std::size_t k = body.size(); k-- > 1;) {
    const char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      return Complex(parse_real(body.substr(0, k), text), parse_imaginary(body.substr(k), text));
    }
  }
  return Complex(0.0, parse_imaginary(body, text));
}

json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw ParseError("expected a number, [re, im] or \"a+bi\", got " + j.dump());
}

json vector_to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Eigen::VectorXcd vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

json matrix_to_json(const OpMatrix& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(vector_to_json(a.row(i).transpose()));
  return out;
}

OpMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  OpMatrix a;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::VectorXcd row = vector_from_json(j[static_cast<std::size_t>(i)]);
    if (i == 0) a.resize(rows, row.size());
    if (row.size() != a.cols()) throw ParseError("matrix rows have unequal length");
    a.row(i) = row.transpose();
  }
  return a;
}

json point_to_json(const Point& p) {
  json out = json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) out.push_back(p[i]);
  return out;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a point coordinate array");
  std::vector<double> coords;
  for (const auto& c : j) {
    if (!c.is_number()) throw ParseError("point coordinates must be numbers");
    coords.push_back(c.get<double>());
  }
  return Point(coords);
}

// Kernel specs ----------------------------------------------------------------------

namespace {

json base_to_json(const BaseKernel& b) {
  json out{{"name", to_string(b.name)}};
  switch (b.name) {
    case BaseKernelName::gaussian:
    case BaseKernelName::laplacian:
      out["gamma"] = b.gamma;
      break;
    case BaseKernelName::polynomial:
      out["degree"] = b.degree;
      out["offset"] = b.offset;
      break;
    case BaseKernelName::linear:
    case BaseKernelName::negative_distance:
      break;
  }
  return out;
}

BaseKernel base_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name")) throw ParseError("base kernel needs a \"name\"");
  BaseKernel b;
  b.name = parse_base_kernel_name(j.at("name").get<std::string>());
  if (j.contains("gamma")) b.gamma = j.at("gamma").get<double>();
  if (j.contains("degree")) b.degree = j.at("degree").get<int>();
  if (j.contains("offset")) b.offset = j.at("offset").get<double>();
  return b;
}

}  // namespace

json kernel_spec_to_json(const KernelSpec& spec) {
  json out{{"variant", to_string(spec.variant)}, {"m", spec.m}};
  if (spec.base) out["base"] = base_to_json(*spec.base);
  if (spec.variant == KernelVariant::separable) out["A"] = matrix_to_json(spec.mixing);
  if (!spec.children.empty()) {
    json children = json::array();
    for (const auto& c : spec.children) children.push_back(kernel_spec_to_json(c));
    out["children"] = std::move(children);
  }
  if (spec.variant == KernelVariant::scaled) out["scale"] = spec.scale;
  return out;
}

KernelSpec kernel_spec_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("kernel spec must be a JSON object");
    KernelSpec spec;
    spec.variant = parse_kernel_variant(j.at("variant").get<std::string>());
    if (j.contains("base")) spec.base = base_from_json(j.at("base"));
    if (j.contains("A")) spec.mixing = matrix_from_json(j.at("A"));
    if (j.contains("children")) {
      for (const auto& c : j.at("children")) spec.children.push_back(kernel_spec_from_json(c));
    }
    if (j.contains("scale")) spec.scale = j.at("scale").get<double>();
    if (j.contains("m")) {
      const auto m = j.at("m").get<long long>();
      if (m < 1) throw ParseError("kernel spec: m must be >= 1");
      spec.m = static_cast<std::size_t>(m);
    } else if (spec.variant == KernelVariant::separable && spec.mixing.rows() > 0) {
      spec.m = static_cast<std::size_t>(spec.mixing.rows());
    } else if (!spec.children.empty()) {
      spec.m = spec.children.front().m;
    }
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("kernel spec: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("kernel spec: ") + e.what());
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

KernelSpec load_kernel_spec(const std::filesystem::path& path) {
  return kernel_spec_from_json(load_json(path));
}

// CSV -----------------------------------------------------------------------------------

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError("CSV row has " + std::to_string(fields.size()) + " fields, header has " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw ParseError("CSV input is empty (header row required)");
  return table;
}

namespace {

// Number of leading columns named prefix_1, prefix_2, ... starting at `from`.
std::size_t count_columns(const std::vector<std::string>& header, std::size_t from,
                          const std::string& prefix) {
  std::size_t k = 0;
  while (from + k < header.size() && header[from + k] == prefix + "_" + std::to_string(k + 1)) ++k;
  return k;
}

// Validates that the header is exactly the given prefix groups in order and
// returns their widths. A width of 0 in `expected` means "any positive width".
std::vector<std::size_t> match_header(const std::vector<std::string>& header,
                                      const std::vector<std::pair<std::string, std::size_t>>& expected) {
  std::vector<std::size_t> widths;
  std::size_t at = 0;
  for (const auto& [prefix, want] : expected) {
    const std::size_t got = count_columns(header, at, prefix);
    if (got == 0 || (want != 0 && got != want)) {
      throw ParseError("CSV header: expected columns " + prefix + "_1.." + prefix + "_" +
                       (want ? std::to_string(want) : std::string("n")) + " at position " +
                       std::to_string(at + 1));
    }
    widths.push_back(got);
    at += got;
  }
  if (at != header.size()) throw ParseError("CSV header: unexpected column '" + header[at] + "'");
  return widths;
}

Point row_point(const std::vector<std::string>& row, std::size_t from, std::size_t d) {
  std::vector<double> coords;
  for (std::size_t i = 0; i < d; ++i) coords.push_back(parse_real(row[from + i], row[from + i]));
  return Point(coords);
}

OutVector row_vector(const std::vector<std::string>& row, std::size_t from, std::size_t m) {
  OutVector v(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) v[static_cast<Eigen::Index>(i)] = parse_complex(row[from + i]);
  return v;
}

}  // namespace

std::vector<Point> read_points_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  const auto w = match_header(t.header, {{"x", 0}});
  std::vector<Point> pts;
  for (const auto& row : t.rows) pts.push_back(row_point(row, 0, w[0]));
  return pts;
}

std::vector<ValueConstraint> read_value_constraints_csv(std::istream& in, std::size_t m) {
  const CsvTable t = read_csv(in);
  const auto w = match_header(t.header, {{"x", 0}, {"v", m}});
  std::vector<ValueConstraint> out;
  for (const auto& row : t.rows) out.push_back({row_point(row, 0, w[0]), row_vector(row, w[0], m)});
  return out;
}

std::vector<DifferenceConstraint> read_difference_constraints_csv(std::istream& in, std::size_t m) {
  const CsvTable t = read_csv(in);
  const std::size_t d = count_columns(t.header, 0, "x");
  const auto w = match_header(t.header, {{"x", 0}, {"y", d}, {"d", m}});
  std::vector<DifferenceConstraint> out;
  for (const auto& row : t.rows) {
    out.push_back({row_point(row, 0, w[0]), row_point(row, w[0], w[1]),
                   row_vector(row, w[0] + w[1], m)});
  }
  return out;
}

Anchor parse_anchor(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("anchor must look like \"x1,..,xd:v1,..,vm\"");
  std::vector<double> coords;
  for (const auto& f : split(text.substr(0, colon), ',')) coords.push_back(parse_real(f, text));
  const auto values = split(text.substr(colon + 1), ',');
  OutVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_complex(values[i]);
  return Anchor{Point(coords), v};
}

json to_json(const SipAxiomReport& r) {
  return json{{"p", r.p},
              {"dim", r.dim},
              {"trials", r.trials},
              {"seed", r.seed},
              {"homogeneity_form", to_string(r.homogeneity_form)},
              {"linearity_defect", r.linearity_defect},
              {"positivity_ok", r.positivity_ok},
              {"conj_homogeneity_defect", r.conj_homogeneity_defect},
              {"literal_form_complex_defect", r.literal_form_complex_defect},
              {"compatibility_defect", r.compatibility_defect},
              {"cauchy_schwarz_violations", r.cauchy_schwarz_violations},
              {"max_cauchy_schwarz_ratio", r.max_cauchy_schwarz_ratio}};
}

// Models ----------------------------------------------------------------------------------

namespace {

json spec_of(const KernelEval& k) {
  if (!k.spec()) throw InvalidArgument("only spec-built kernels can be serialized");
  return kernel_spec_to_json(*k.spec());
}

json coefficients_to_json(const std::vector<OutVector>& coeffs) {
  json out = json::array();
  for (const auto& c : coeffs) out.push_back(vector_to_json(c));
  return out;
}

std::vector<OutVector> coefficients_from_json(const json& j, std::size_t m) {
  std::vector<OutVector> out;
  for (const auto& c : j) {
    OutVector v = vector_from_json(c);
    require_dim(v, m, "model coefficient");
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

json model_to_json(const ValueFit& fit) {
  json centers = json::array();
  for (const auto& c : fit.element.centers()) centers.push_back(point_to_json(c));
  return json{{"kind", "values"},
              {"kernel_spec", spec_of(fit.element.kernel())},
              {"centers", std::move(centers)},
              {"coefficients", coefficients_to_json(fit.element.coefficients())},
              {"residual", fit.info.residual},
              {"max_residual", fit.max_residual},
              {"pseudo_inverse", fit.info.pseudo_inverse}};
}

json model_to_json(const DifferenceFit& fit) {
  json pairs = json::array();
  for (const auto& p : fit.element.pairs()) {
    pairs.push_back(json{{"x", point_to_json(p.x)}, {"y", point_to_json(p.y)}});
  }
  json out{{"kind", "differences"},
           {"kernel_spec", spec_of(fit.element.kernel())},
           {"pairs", std::move(pairs)},
           {"coefficients", coefficients_to_json(fit.element.coefficients())},
           {"residual", fit.residual},
           {"max_residual", fit.max_residual},
           {"feasible", fit.feasible},
           {"pseudo_inverse", fit.info.pseudo_inverse},
           {"gauge", to_string(fit.gauge)}};
  if (fit.anchor) {
    out["anchor"] = json{{"x", point_to_json(fit.anchor->x)}, {"value", vector_to_json(fit.anchor->value)}};
    out["offset"] = vector_to_json(fit.offset);
  }
  return out;
}

FittedModel FittedModel::from_json(const json& j) {
  try {
    FittedModel model(build_kernel(kernel_spec_from_json(j.at("kernel_spec"))));
    const std::size_t m = model.kernel_.output_dim();
    const std::string kind = j.at("kind").get<std::string>();
    auto coeffs = coefficients_from_json(j.at("coefficients"), m);
    if (kind == "values") {
      std::vector<Point> centers;
      for (const auto& c : j.at("centers")) centers.push_back(point_from_json(c));
      model.values_ = RkhsElement(model.kernel_, std::move(centers), std::move(coeffs));
    } else if (kind == "differences") {
      std::vector<PointPair> pairs;
      for (const auto& p : j.at("pairs")) {
        pairs.push_back({point_from_json(p.at("x")), point_from_json(p.at("y"))});
      }
      model.differences_ = RelativeElement(model.kernel_, std::move(pairs), std::move(coeffs));
      if (j.contains("offset")) {
        model.offset_ = vector_from_json(j.at("offset"));
        require_dim(model.offset_, m, "model offset");
      }
    } else {
      throw ParseError("unknown model kind '" + kind + "'");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

OutVector FittedModel::evaluate(const Point& t) const {
  if (values_) return rrk::evaluate(*values_, t);
  OutVector v = rrk::evaluate(*differences_, t);
  if (offset_.size() == v.size()) v += offset_;
  return v;
}

}  // namespace rrk
