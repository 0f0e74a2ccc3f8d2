#pragma once

// JSON matrix files and report serialization.
//
// Matrix schema:
//   { "kind": "hermitian" | "general" | "isometry", "rows": int, "cols": int,
//     "data": [[[re, im], ...cols], ...rows] }

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ritzvar/bounds.hpp"

namespace ritzvar {

enum class MatrixKind { Hermitian, General, Isometry };

struct MatrixFile {
  MatrixKind kind = MatrixKind::General;
  CMat data;
};

std::string to_string(MatrixKind kind);

/// Parses and validates the schema; "hermitian" requires rows == cols.
MatrixFile matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const CMat& m, MatrixKind kind);

MatrixFile read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const CMat& m, MatrixKind kind);

HermitianMatrix load_hermitian(const std::filesystem::path& path, const Tolerances& tol = {});
Isometry load_isometry(const std::filesystem::path& path, const Tolerances& tol = {});
ComplexMatrix load_general(const std::filesystem::path& path);

/// Doubles as JSON numbers; NaN becomes null.
nlohmann::json spectrum_to_json(const std::vector<double>& v);
nlohmann::json spectrum_to_json(const OrderedSpectrum& v);

nlohmann::json verdict_to_json(const MajorizationVerdict& v);
nlohmann::json report_to_json(const BoundReport& r);
nlohmann::json decomposition_to_json(const PairDecomposition& dec);

}  // namespace ritzvar
