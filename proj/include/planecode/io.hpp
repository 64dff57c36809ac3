#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "planecode/antipodal.hpp"
#include "planecode/codes.hpp"
#include "planecode/geometry.hpp"

namespace planecode {

/// "plane n=<n> points=<N> lines=<N>" followed by one sorted, 0-based point
/// list per line, in line order.
std::string plane_to_text(const Plane& plane);
/// Throws ParseError on malformed text, BadShape or AxiomViolation on a
/// well-formed file that is not a projective plane.
Plane plane_from_text(std::string_view text, std::string source_id = "ingested");

/// Same shape as the plane format with header "pls points=<N> lines=<M>".
std::string pls_to_text(const PartialLinearSpace& pls);
PartialLinearSpace pls_from_text(std::string_view text);

/// "word p=<p> len=<L>" then one "pos:value" pair per support position.
std::string word_to_text(const CodeWord& w);
CodeWord word_from_text(std::string_view text);

nlohmann::json word_to_json(const CodeWord& w);
CodeWord word_from_json(const nlohmann::json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Whole-file helpers; failures are InvalidArgument naming the path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace planecode
