#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "nilj/degeneration.hpp"
#include "nilj/tensor.hpp"

namespace nilj {

/// Parse failure with the 1-based line it refers to (0 when not tied to a
/// line). what() already carries the "line N: " prefix.
class ParseError : public Error {
public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

private:
  int line_;
};

/// Metadata lines `key value` that are not part of the mathematical content
/// (`source J4_1`, `target J4_7`, `label published`, `note ...`).
using Metadata = std::map<std::string, std::string>;

struct AlgebraFile {
  BilinearTensor law;
  bool bilinear = false;  // products were given for ordered pairs
  Metadata meta;
};

/// Header `dim N`, optional `field Q|Qi` (default Qi), optional `bilinear`,
/// then product lines `ei*ej = <sum of terms>`. Without `bilinear` each line
/// also sets ej*ei. Lines starting with '#' are comments.
AlgebraFile parse_algebra_file(std::string_view text);
/// Same, but the law must be symmetric.
StructureTensor parse_algebra(std::string_view text);
std::string format_algebra(const StructureTensor& phi, const Metadata& meta = {});
std::string format_bilinear(const BilinearTensor& b, const Metadata& meta = {});

struct FamilyFile {
  ContractionFamily family;
  Metadata meta;
};

/// Lines `f(ei) = <terms>` where a term is a '*'-separated product of a
/// scalar literal, a power `t`, `t^k` or `t^(p/q)`, and one basis vector.
/// Omitted images fix their basis vector. The dimension comes from a `dim`
/// header, from `n`, or from the class named by a `source` line.
FamilyFile parse_family_file(std::string_view text, std::optional<std::size_t> n = std::nullopt);
std::string format_family(const ContractionFamily& f, const Metadata& meta = {});

struct DeformationFile {
  DeformationDirection direction;
  Metadata meta;
};

/// `dim N`, then blocks `deg K:` each followed by product lines.
DeformationFile parse_deformation_file(std::string_view text, std::optional<std::size_t> n = std::nullopt);

/// Reads a whole file; throws ParseError(0, ...) when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace nilj
