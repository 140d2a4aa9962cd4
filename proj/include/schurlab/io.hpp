#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "schurlab/extremality.hpp"
#include "schurlab/fullness.hpp"
#include "schurlab/matrix.hpp"
#include "schurlab/multiplier_norm.hpp"

namespace schurlab {

enum class MatrixFormat { Auto, Json, Csv };

MatrixFormat parse_format(std::string_view name);

/// JSON: {"rows": m, "cols": n, "entries": [[re, im], ...]} row-major.
/// CSV: one matrix row per line; entries "a", "a+bi", "a-bi", "bi", "-bi".
Mat parse_matrix_text(std::string_view text, MatrixFormat format = MatrixFormat::Auto);
Mat parse_matrix_stream(std::istream& in, MatrixFormat format = MatrixFormat::Auto);
Mat parse_matrix_file(const std::string& path, MatrixFormat format = MatrixFormat::Auto);

std::string write_matrix_json(const Mat& m);
std::string write_matrix_csv(const Mat& m);
std::string format_complex(cplx z);
/// Parses one CSV entry; throws ParseError on malformed input.
cplx parse_complex(std::string_view token);

/// FNV-1a over the shape and the raw entry bits, hex encoded.
std::string matrix_digest(const Mat& m);

struct Report {
    std::string command;
    std::string input_digest;
    nlohmann::json tolerances = nlohmann::json::object();
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
    int exit_code = 0;
    nlohmann::json result = nlohmann::json::object();
    std::optional<std::string> error_kind;
    std::optional<std::string> error_message;

    friend bool operator==(const Report&, const Report&) = default;
};

void to_json(nlohmann::json& j, const Mat& m);
void from_json(const nlohmann::json& j, Mat& m);
void to_json(nlohmann::json& j, const SchurFactorization& f);
void to_json(nlohmann::json& j, const NormResult& r);
void to_json(nlohmann::json& j, const FullnessResult& r);
void to_json(nlohmann::json& j, const ConvexSplit& s);
void to_json(nlohmann::json& j, const ExtremalityReport& r);
void to_json(nlohmann::json& j, const FvgFactorization& f);
void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

}  // namespace schurlab
