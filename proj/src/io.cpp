#include "schurlab/io.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "schurlab/error.hpp"

namespace schurlab {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_real(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

// Imaginary coefficient text such as "", "+", "-", "2.5", "-1e-3".
bool parse_imag(std::string_view s, double& out) {
    if (s.empty() || s == "+") {
        out = 1.0;
        return true;
    }
    if (s == "-") {
        out = -1.0;
        return true;
    }
    return parse_real(s, out);
}

std::string location(std::size_t line, std::size_t col) {
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Mat parse_csv(std::string_view text) {
    std::vector<cplx> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty() || trim(line).front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        std::size_t count = 0;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            const std::string_view tok = line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start);
            try {
                entries.push_back(parse_complex(tok));
            } catch (const Error&) {
                std::size_t col = start + 1;
                while (col - 1 < line.size() && std::isspace(static_cast<unsigned char>(line[col - 1]))) ++col;
                throw Error(ErrorKind::ParseError,
                            "bad entry '" + std::string(trim(tok)) + "' at " + location(line_no, col));
            }
            ++count;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (rows == 0) cols = count;
        else if (count != cols)
            throw Error(ErrorKind::ShapeError, "row " + std::to_string(rows + 1) + " has " +
                                                   std::to_string(count) + " entries, expected " +
                                                   std::to_string(cols) + " (" + location(line_no, 1) + ")");
        ++rows;
        if (end == text.size()) break;
    }
    if (rows == 0) throw Error(ErrorKind::ParseError, "no matrix rows found");
    return Mat(rows, cols, std::move(entries));
}

Mat parse_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t k = 0; k < upto; ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorKind::ParseError, "invalid JSON at " + location(line, col));
    }
    Mat m;
    from_json(j, m);
    return m;
}

}  // namespace

MatrixFormat parse_format(std::string_view name) {
    if (name == "auto") return MatrixFormat::Auto;
    if (name == "json") return MatrixFormat::Json;
    if (name == "csv") return MatrixFormat::Csv;
    throw Error(ErrorKind::InvalidArgument, "unknown format '" + std::string(name) + "'");
}

cplx parse_complex(std::string_view token) {
    std::string_view s = trim(token);
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty entry");
    if (s.back() != 'i') {
        double re;
        if (!parse_real(s, re)) throw Error(ErrorKind::ParseError, "not a number");
        return {re, 0.0};
    }
    s.remove_suffix(1);
    // split at the last sign that is not an exponent sign or the leading sign
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    double re = 0.0, im = 0.0;
    if (split == std::string_view::npos) {
        if (!parse_imag(s, im)) throw Error(ErrorKind::ParseError, "bad imaginary part");
    } else {
        if (!parse_real(trim(s.substr(0, split)), re) || !parse_imag(trim(s.substr(split)), im))
            throw Error(ErrorKind::ParseError, "bad complex entry");
    }
    return {re, im};
}

Mat parse_matrix_text(std::string_view text, MatrixFormat format) {
    if (format == MatrixFormat::Auto) {
        const std::string_view t = trim(text);
        format = !t.empty() && t.front() == '{' ? MatrixFormat::Json : MatrixFormat::Csv;
    }
    return format == MatrixFormat::Json ? parse_json(text) : parse_csv(text);
}

Mat parse_matrix_stream(std::istream& in, MatrixFormat format) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix_text(ss.str(), format);
}

Mat parse_matrix_file(const std::string& path, MatrixFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    if (format == MatrixFormat::Auto) {
        if (path.ends_with(".json")) format = MatrixFormat::Json;
        else if (path.ends_with(".csv")) format = MatrixFormat::Csv;
    }
    return parse_matrix_stream(in, format);
}

std::string write_matrix_json(const Mat& m) { return json(m).dump(); }

std::string format_complex(cplx z) {
    char buf[64];
    if (z.imag() == 0.0 && !std::signbit(z.imag())) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    }
    return buf;
}

std::string write_matrix_csv(const Mat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += format_complex(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string matrix_digest(const Mat& m) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(m.rows());
    mix(m.cols());
    for (const auto& z : m.data()) {
        mix(std::bit_cast<std::uint64_t>(z.real()));
        mix(std::bit_cast<std::uint64_t>(z.imag()));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void to_json(json& j, const Mat& m) {
    json entries = json::array();
    for (const auto& z : m.data()) entries.push_back({z.real(), z.imag()});
    j = json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

void from_json(const json& j, Mat& m) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw Error(ErrorKind::ParseError, "matrix object needs rows, cols and entries");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned() || !j["entries"].is_array())
        throw Error(ErrorKind::ParseError, "rows/cols must be non-negative integers, entries an array");
    const auto rows = j["rows"].get<std::size_t>();
    const auto cols = j["cols"].get<std::size_t>();
    const json& e = j["entries"];
    if (e.size() != rows * cols)
        throw Error(ErrorKind::ShapeError, "entries has " + std::to_string(e.size()) +
                                               " items, expected " + std::to_string(rows * cols));
    std::vector<cplx> data;
    data.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        const json& p = e[k];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw Error(ErrorKind::ParseError, "entry " + std::to_string(k) + " is not a [re, im] pair");
        data.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    m = Mat(rows, cols, std::move(data));
}

void to_json(json& j, const SchurFactorization& f) {
    j = json{{"L", f.L}, {"R", f.R}, {"value", f.value}, {"residual", f.residual}, {"rows", f.L.rows()}};
}

void to_json(json& j, const NormResult& r) {
    j = json{{"upper", r.upper},
             {"lower", r.lower},
             {"eps_target", r.eps_target},
             {"width", r.upper - r.lower},
             {"precision_reached", r.precision_reached},
             {"iterations", r.iterations},
             {"upper_source", r.upper_source},
             {"lower_source", r.lower_source},
             {"factorization", r.factorization}};
}

void to_json(json& j, const FullnessResult& r) {
    j = json{{"is_full", r.is_full},
             {"span_rank", r.span_rank},
             {"required_rank", r.required_rank},
             {"achieved_rank", r.achieved_rank},
             {"margin", r.margin},
             {"complement_dimension", r.complement.size()},
             {"singular_values", r.singular_values},
             {"witness", r.witness ? json(*r.witness) : json(nullptr)}};
}

void to_json(json& j, const ConvexSplit& s) {
    j = json{{"alpha", s.alpha},
             {"Y", s.Y},
             {"Z", s.Z},
             {"reconstruction_residual", s.reconstruction_residual},
             {"distinctness", s.distinctness}};
    if (s.y_factor) j["y_norm_upper"] = s.y_factor->value;
    if (s.z_factor) j["z_norm_upper"] = s.z_factor->value;
}

void to_json(json& j, const ExtremalityReport& r) {
    j = json{{"verdict", std::string(to_string(r.verdict))},
             {"rank", r.rank},
             {"rank_bound", r.rank_bound},
             {"rank_bound_holds", r.rank_bound_holds},
             {"margin", r.margin},
             {"fullness", r.fullness},
             {"split", r.split ? json(*r.split) : json(nullptr)},
             {"unit_indices", r.unit_indices},
             {"unit_columns", r.unit_columns},
             {"scale", r.scale},
             {"relative_to_factorization", r.relative_to_factorization},
             {"notes", r.notes}};
    if (r.factorization) j["factorization"] = *r.factorization;
    if (r.short_column)
        j["short_column"] = json{{"factor", std::string(1, r.short_column->factor)},
                                 {"index", r.short_column->index},
                                 {"norm", r.short_column->norm}};
}

void to_json(json& j, const FvgFactorization& f) {
    j = json{{"F", f.F}, {"V", f.V}, {"G", f.G}, {"residual", f.residual}};
}

void to_json(json& j, const Report& r) {
    j = json{{"command", r.command},
             {"input_digest", r.input_digest},
             {"tolerances", r.tolerances},
             {"seed", r.seed},
             {"wall_time_s", r.wall_time_s},
             {"exit_code", r.exit_code},
             {"result", r.result}};
    if (r.error_kind || r.error_message)
        j["error"] = json{{"kind", r.error_kind.value_or("")}, {"message", r.error_message.value_or("")}};
}

void from_json(const json& j, Report& r) {
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.tolerances = j.at("tolerances");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.exit_code = j.at("exit_code").get<int>();
    r.result = j.at("result");
    r.error_kind.reset();
    r.error_message.reset();
    if (j.contains("error")) {
        r.error_kind = j["error"].at("kind").get<std::string>();
        r.error_message = j["error"].at("message").get<std::string>();
    }
}

}  // namespace schurlab
