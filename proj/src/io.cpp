#include "planecode/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "planecode/error.hpp"

namespace planecode {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    while (!out.empty() && out.back().find_first_not_of(" \t") == std::string_view::npos) out.pop_back();
    return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        auto j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint32_t to_u32(std::string_view s, std::size_t lineno) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::ParseError, fmt::format("line {}: '{}' is not a non-negative integer", lineno, s));
    return v;
}

// Header "<kind> k1=v1 k2=v2 ..." with exactly the given keys, in order.
std::vector<std::uint32_t> parse_header(std::string_view line, std::string_view kind,
                                        std::initializer_list<std::string_view> keys) {
    auto tok = tokens(line);
    if (tok.empty() || tok[0] != kind)
        throw Error(ErrorCode::ParseError, fmt::format("line 1: expected a '{}' header", kind));
    if (tok.size() != keys.size() + 1)
        throw Error(ErrorCode::ParseError, fmt::format("line 1: '{}' header takes {} fields", kind, keys.size()));
    std::vector<std::uint32_t> vals;
    std::size_t i = 1;
    for (auto key : keys) {
        auto t = tok[i++];
        auto eq = t.find('=');
        if (eq == std::string_view::npos || t.substr(0, eq) != key)
            throw Error(ErrorCode::ParseError, fmt::format("line 1: expected '{}=<value>', got '{}'", key, t));
        vals.push_back(to_u32(t.substr(eq + 1), 1));
    }
    return vals;
}

std::vector<std::vector<std::uint32_t>> parse_rows(const std::vector<std::string_view>& lines, std::uint32_t expected) {
    if (lines.size() - 1 != expected)
        throw Error(ErrorCode::ParseError,
                    fmt::format("header announces {} lines, file has {}", expected, lines.size() - 1));
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(expected);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::uint32_t> row;
        for (auto t : tokens(lines[i])) row.push_back(to_u32(t, i + 1));
        for (std::size_t k = 1; k < row.size(); ++k)
            if (row[k - 1] >= row[k])
                throw Error(ErrorCode::ParseError, fmt::format("line {}: point indices not strictly increasing", i + 1));
        rows.push_back(std::move(row));
    }
    return rows;
}

void append_rows(std::string& out, const std::vector<std::vector<std::uint32_t>>& rows) {
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(r[i]);
        }
        out += '\n';
    }
}

}  // namespace

std::string plane_to_text(const Plane& plane) {
    std::string out = fmt::format("plane n={} points={} lines={}\n", plane.order(), plane.num_points(), plane.num_lines());
    append_rows(out, plane.lines());
    return out;
}

Plane plane_from_text(std::string_view text, std::string source_id) {
    auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "empty plane file");
    auto h = parse_header(lines[0], "plane", {"n", "points", "lines"});
    const auto n = h[0];
    if (n > 0xFFFF || h[1] != n * n + n + 1 || h[2] != h[1])
        throw Error(ErrorCode::BadShape,
                    fmt::format("order {} needs {} points and lines, header says {} and {}", n, n * n + n + 1, h[1], h[2]));
    return Plane::from_incidence(parse_rows(lines, h[2]), n, std::move(source_id));
}

std::string pls_to_text(const PartialLinearSpace& pls) {
    std::string out = fmt::format("pls points={} lines={}\n", pls.num_points(), pls.num_lines());
    append_rows(out, pls.lines());
    return out;
}

PartialLinearSpace pls_from_text(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "empty pls file");
    auto h = parse_header(lines[0], "pls", {"points", "lines"});
    return PartialLinearSpace::from_lines(h[0], parse_rows(lines, h[1]));
}

std::string word_to_text(const CodeWord& w) {
    std::string out = fmt::format("word p={} len={}\n", w.p(), w.length());
    for (auto pos : w.support()) out += fmt::format("{}:{}\n", pos, w[pos]);
    return out;
}

CodeWord word_from_text(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "empty word file");
    auto h = parse_header(lines[0], "word", {"p", "len"});
    const auto p = h[0], len = h[1];
    if (p < 2 || p > 255) throw Error(ErrorCode::ParseError, fmt::format("line 1: unsupported p={}", p));
    std::vector<std::uint8_t> values(len, 0);
    std::int64_t last = -1;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto tok = tokens(lines[i]);
        if (tok.size() != 1) throw Error(ErrorCode::ParseError, fmt::format("line {}: expected one pos:value pair", i + 1));
        auto colon = tok[0].find(':');
        if (colon == std::string_view::npos)
            throw Error(ErrorCode::ParseError, fmt::format("line {}: missing ':'", i + 1));
        const auto pos = to_u32(tok[0].substr(0, colon), i + 1);
        const auto val = to_u32(tok[0].substr(colon + 1), i + 1);
        if (pos >= len) throw Error(ErrorCode::ParseError, fmt::format("line {}: position {} >= len", i + 1, pos));
        if (val == 0 || val >= p)
            throw Error(ErrorCode::ParseError, fmt::format("line {}: value {} not in 1..{}", i + 1, val, p - 1));
        if (std::int64_t(pos) <= last)
            throw Error(ErrorCode::ParseError, fmt::format("line {}: positions not strictly increasing", i + 1));
        last = pos;
        values[pos] = static_cast<std::uint8_t>(val);
    }
    return CodeWord(p, std::move(values));
}

nlohmann::json word_to_json(const CodeWord& w) {
    auto support = nlohmann::json::array();
    for (auto pos : w.support()) support.push_back({pos, w[pos]});
    return {{"p", w.p()}, {"len", w.length()}, {"weight", w.weight()}, {"support", support}};
}

CodeWord word_from_json(const nlohmann::json& j) {
    try {
        std::string text = fmt::format("word p={} len={}\n", j.at("p").get<std::uint32_t>(), j.at("len").get<std::uint32_t>());
        for (const auto& e : j.at("support"))
            text += fmt::format("{}:{}\n", e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
        return word_from_text(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("word JSON: ") + e.what());
    }
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot read '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot write '{}'", path.string()));
    out << contents;
    if (!out) throw Error(ErrorCode::InvalidArgument, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace planecode
