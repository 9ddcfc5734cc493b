#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grpdb/permutation.hpp"

namespace grpdb {

/// One block of a generator file:
///
///     group 6.1 degree 3 name S3
///     (1,2)
///     (1,2,3)
///
/// The label may be omitted (`group degree 3`); the store then assigns one. The name is
/// optional and a single token.
struct GeneratorBlock {
  std::optional<std::string> label;
  std::size_t degree = 0;
  std::string name;
  std::vector<Permutation> generators;
  int line = 0;
};

/// Parses every block. Lines starting with `#` outside a block are comments. Throws
/// ParseError with the offending line and column.
std::vector<GeneratorBlock> parse_generator_file(std::string_view text);
std::vector<GeneratorBlock> read_generator_file(const std::string& path);

std::string format_generator_block(const GeneratorBlock& block);

/// `N.i` with N a positive integer and i a positive integer or a lowercase letter code.
bool is_group_label(std::string_view label);

}  // namespace grpdb
