#include "ritzvar/io.hpp"

#include <cmath>
#include <fstream>

#include "ritzvar/errors.hpp"

namespace ritzvar {

using nlohmann::json;

std::string to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Hermitian: return "hermitian";
    case MatrixKind::General: return "general";
    case MatrixKind::Isometry: return "isometry";
  }
  return "general";
}

namespace {

MatrixKind parse_kind(const std::string& s) {
  if (s == "hermitian") return MatrixKind::Hermitian;
  if (s == "general") return MatrixKind::General;
  if (s == "isometry") return MatrixKind::Isometry;
  throw InputError("unknown matrix kind '" + s + "'");
}

double number_at(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string("matrix ") + what + " is not a number");
  return j.get<double>();
}

}  // namespace

MatrixFile matrix_from_json(const json& j) {
  if (!j.is_object()) throw InputError("matrix file must be a JSON object");
  for (const char* key : {"kind", "rows", "cols", "data"}) {
    if (!j.contains(key)) throw InputError(std::string("matrix file is missing '") + key + "'");
  }
  if (!j["kind"].is_string()) throw InputError("matrix 'kind' must be a string");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw InputError("matrix 'rows' and 'cols' must be integers");
  }
  MatrixFile out;
  out.kind = parse_kind(j["kind"].get<std::string>());
  const auto rows = j["rows"].get<long long>();
  const auto cols = j["cols"].get<long long>();
  if (rows < 1 || cols < 1) throw InputError("matrix dimensions must be positive");
  if (out.kind == MatrixKind::Hermitian && rows != cols) {
    throw InputError("hermitian matrix files need rows == cols");
  }
  const json& data = j["data"];
  if (!data.is_array() || static_cast<long long>(data.size()) != rows) {
    throw InputError("matrix 'data' must hold exactly 'rows' rows");
  }
  out.data.resize(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    const json& row = data[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<long long>(row.size()) != cols) {
      throw InputError("matrix row " + std::to_string(i) + " must hold exactly 'cols' entries");
    }
    for (long long c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) {
        throw InputError("matrix entry must be a [re, im] pair");
      }
      const double re = number_at(e[0], "real part");
      const double im = number_at(e[1], "imaginary part");
      if (!std::isfinite(re) || !std::isfinite(im)) throw InputError("matrix entry is not finite");
      out.data(i, c) = cdouble(re, im);
    }
  }
  return out;
}

json matrix_to_json(const CMat& m, MatrixKind kind) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(i, c).real(), m(i, c).imag()});
    data.push_back(std::move(row));
  }
  return json{{"kind", to_string(kind)}, {"rows", m.rows()}, {"cols", m.cols()},
              {"data", std::move(data)}};
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::filesystem::path& path, const CMat& m, MatrixKind kind) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file " + path.string());
  out << matrix_to_json(m, kind).dump(2) << '\n';
}

HermitianMatrix load_hermitian(const std::filesystem::path& path, const Tolerances& tol) {
  return HermitianMatrix(read_matrix_file(path).data, tol);
}

Isometry load_isometry(const std::filesystem::path& path, const Tolerances& tol) {
  return Isometry(read_matrix_file(path).data, tol);
}

ComplexMatrix load_general(const std::filesystem::path& path) {
  return ComplexMatrix(read_matrix_file(path).data);
}

json spectrum_to_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) {
    if (std::isnan(x)) {
      out.push_back(nullptr);
    } else {
      out.push_back(x);
    }
  }
  return out;
}

json spectrum_to_json(const OrderedSpectrum& v) { return spectrum_to_json(v.values()); }

json verdict_to_json(const MajorizationVerdict& v) {
  return json{{"holds", v.holds},
              {"partial_sums_lhs", spectrum_to_json(v.partial_sums_lhs)},
              {"partial_sums_rhs", spectrum_to_json(v.partial_sums_rhs)},
              {"worst_margin", v.worst_margin},
              {"tolerance", v.tolerance},
              {"trace_gap", v.trace_gap}};
}

json report_to_json(const BoundReport& r) {
  json j{{"check", r.check_name},
         {"lhs", spectrum_to_json(r.lhs)},
         {"rhs", spectrum_to_json(r.rhs)},
         {"partial_sums_lhs", spectrum_to_json(r.verdict.partial_sums_lhs)},
         {"partial_sums_rhs", spectrum_to_json(r.verdict.partial_sums_rhs)},
         {"worst_margin", r.verdict.worst_margin},
         {"holds", r.verdict.holds},
         {"ratio_profile", r.ratio_profile ? spectrum_to_json(*r.ratio_profile) : json(nullptr)},
         {"tolerances", json(r.tolerances)},
         {"inputs_digest", r.inputs_digest}};
  j["tolerances"]["verdict"] = r.verdict.tolerance;
  if (!r.diagnostics.empty()) j["diagnostics"] = json(r.diagnostics);
  if (r.conjectural) j["conjectural"] = true;
  return j;
}

json decomposition_to_json(const PairDecomposition& dec) {
  return json{{"ambient_dim", dec.ambient_dim},
              {"sub_dim", dec.sub_dim},
              {"s", dec.s},
              {"p", dec.p},
              {"r", dec.r},
              {"generic_dim", dec.generic_dim()},
              {"theta_prime", spectrum_to_json(dec.theta_prime)},
              {"angles", spectrum_to_json(dec.angles())},
              {"tol_int", dec.tol_int},
              {"tol_perp", dec.tol_perp},
              {"warnings", dec.warnings},
              {"basis_xy", matrix_to_json(dec.basis_xy, MatrixKind::General)},
              {"basis_s1", matrix_to_json(dec.basis_s1, MatrixKind::General)},
              {"basis_s2", matrix_to_json(dec.basis_s2, MatrixKind::General)},
              {"basis_xperp_yperp", matrix_to_json(dec.basis_xperp_yperp, MatrixKind::General)}};
}

}  // namespace ritzvar
