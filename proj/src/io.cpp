#include "ila/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ila::io {

namespace {

template <typename T>
T parse_entry(std::string_view token, std::size_t line)
{
    T value{};
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+')
        ++first;
    std::from_chars_result res;
    if constexpr (std::is_floating_point_v<T>)
        res = std::from_chars(first, last, value, std::chars_format::general);
    else
        res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError("line " + std::to_string(line) + ": invalid entry '" + std::string(token) + "'");
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value))
            throw ParseError("line " + std::to_string(line) + ": non-finite entry");
    }
    return value;
}

template <typename T>
Matrix<T> parse_matrix(std::string_view text)
{
    std::vector<std::vector<T>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        std::vector<T> row;
        std::size_t i = 0;
        auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
        while (i < line.size() && is_sep(line[i]))
            ++i;
        if (i == line.size() || line[i] == '#')
            continue;
        while (i < line.size()) {
            std::size_t j = i;
            while (j < line.size() && !is_sep(line[j]))
                ++j;
            row.push_back(parse_entry<T>(line.substr(i, j - i), line_no));
            i = j;
            while (i < line.size() && is_sep(line[i]))
                ++i;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(rows.front().size()) +
                             " entries, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw ParseError("matrix file contains no rows");
    Matrix<T> m(Index(rows.size()), Index(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[std::size_t(i)][std::size_t(j)];
    return m;
}

} // namespace

IntMatrix parse_int_matrix(std::string_view text) { return parse_matrix<std::int64_t>(text); }
RealMatrix parse_real_matrix(std::string_view text) { return parse_matrix<double>(text); }

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

IntMatrix read_int_matrix(const std::filesystem::path& path)
{
    try {
        return parse_int_matrix(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

RealMatrix read_real_matrix(const std::filesystem::path& path)
{
    try {
        return parse_real_matrix(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

RealVector read_real_vector(const std::filesystem::path& path)
{
    const RealMatrix m = read_real_matrix(path);
    if (m.cols() == 1)
        return m.col(0);
    if (m.rows() == 1)
        return m.row(0).transpose();
    throw ParseError(path.string() + ": expected a single row or column");
}

void write_matrix(std::ostream& out, const IntMatrix& m)
{
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j)
            out << (j ? " " : "") << m(i, j);
        out << '\n';
    }
}

std::string format_matrix(const IntMatrix& m)
{
    std::ostringstream ss;
    write_matrix(ss, m);
    return ss.str();
}

void write_matrix_file(const std::filesystem::path& path, const IntMatrix& m)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    write_matrix(out, m);
}

std::string fnv1a_hex(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace ila::io
