#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rrk/core.hpp"
#include "rrk/kernels.hpp"
#include "rrk/relative.hpp"
#include "rrk/rkhs.hpp"
#include "rrk/sip_banach.hpp"

namespace rrk {

class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Complex scalars ------------------------------------------------------------------
//
// Text form: "a", "a+bi", "a-bi", "bi", "i". JSON form: a number when the
// imaginary part is zero, else [re, im]; strings in text form are accepted on
// input.

Complex parse_complex(std::string_view text);
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd vector_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const OpMatrix& a);
OpMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

// Kernel specs ---------------------------------------------------------------------
//
// {"variant": ..., "base": {"name": "gaussian", "gamma": 1.0}, "m": 2,
//  "A": [[...]], "children": [...], "scale": ...}

nlohmann::json kernel_spec_to_json(const KernelSpec& spec);
KernelSpec kernel_spec_from_json(const nlohmann::json& j);
KernelSpec load_kernel_spec(const std::filesystem::path& path);

nlohmann::json load_json(const std::filesystem::path& path);

// CSV ----------------------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Comma-separated, header row required, blank lines skipped, no quoting.
CsvTable read_csv(std::istream& in);

/// Columns x_1..x_d.
std::vector<Point> read_points_csv(std::istream& in);
/// Columns x_1..x_d, v_1..v_m.
std::vector<ValueConstraint> read_value_constraints_csv(std::istream& in, std::size_t m);
/// Columns x_1..x_d, y_1..y_d, d_1..d_m.
std::vector<DifferenceConstraint> read_difference_constraints_csv(std::istream& in,
                                                                  std::size_t m);

/// "x1,...,xd:v1,...,vm"
Anchor parse_anchor(std::string_view text);

/// {"p": ..., "trials": ..., "linearity_defect": ..., "cauchy_schwarz_violations": ..., ...}
nlohmann::json to_json(const SipAxiomReport& report);

// Model files ---------------------------------------------------------------------------

nlohmann::json model_to_json(const ValueFit& fit);
nlohmann::json model_to_json(const DifferenceFit& fit);

/// A fitted model read back from its JSON file. Self-contained: the kernel
/// is rebuilt from the embedded spec.
class FittedModel {
 public:
  static FittedModel from_json(const nlohmann::json& j);

  OutVector evaluate(const Point& t) const;
  const KernelEval& kernel() const { return kernel_; }
  bool is_difference_model() const { return differences_.has_value(); }

 private:
  explicit FittedModel(KernelEval kernel) : kernel_(std::move(kernel)) {}

  KernelEval kernel_;
  std::optional<RkhsElement> values_;
  std::optional<RelativeElement> differences_;
  OutVector offset_;
};

}  // namespace rrk
