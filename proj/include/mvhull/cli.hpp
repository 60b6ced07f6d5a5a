// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mvhull/error.hpp"
#include "mvhull/mvcore.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mvhull::cli {

/// Algebra file contents:
///   {"points": ["x1", "x2"], "den": 2, "generators": [["1/2", "0"]]}
struct AlgebraSpec {
    std::vector<std::string> points;
    std::int64_t den = 1;
    std::vector<std::vector<std::string>> generators;
};

AlgebraSpec parse_algebra_spec(std::string_view json_text);
mv::GridAlgebra build_algebra(const AlgebraSpec& spec);
mv::GridAlgebra load_algebra_file(const std::string& path);

/// Canonical JSON: spec fields plus the element list in lexicographic order.
std::string serialize_algebra(const mv::GridAlgebra& a);

/// Point map text, one "target_point=source_point" per line; '#' starts a
/// comment. The source point stands for its class. Every target point must
/// appear exactly once.
std::vector<std::size_t> parse_point_map(std::string_view text, const mv::GridAlgebra& source,
                                         const mv::PointSet& target);

/// Process exit codes per error kind.
int exit_code(ErrorCode code) noexcept;

/// Runs one command line (args exclude the program name). Results go to
/// `out`; failures print "CODE: message" on one line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvhull::cli
