#ifndef RSQ_JSON_IO_HPP
#define RSQ_JSON_IO_HPP

#include <string>

#include "rsq/complex.hpp"
#include "rsq/cover.hpp"
#include "rsq/rep.hpp"

namespace rsq {

/// {"vertices": ["a","b"], "arrows": [{"id":"alpha","src":"a","tgt":"b"}]}
QuiverPtr quiver_from_json(const std::string& text);
std::string quiver_to_json(const Quiver& q);
std::string quiver_to_dot(const Quiver& q);

/// Window emitted as a DOT digraph with "v@n" labels, one rank per level.
std::string cover_to_dot(const CoverWindow& cw);

/// {"field": "fp:32003", "terms": {"-1":[{"vertex":"b","mult":1}], ...},
///  "diff": {"-1":[{"tgt":"a","src":"b","arrow":"alpha","matrix":[[1]]}]},
///  "truncated_below": false}
RadicalComplex complex_from_json(const std::string& text, QuiverPtr q);
std::string complex_to_json(const RadicalComplex& c);

/// Reconstructs the smallest quiver a complex file mentions (for operations
/// that only need the support structure).
QuiverPtr quiver_from_complex_json(const std::string& text);

/// {"dims": {"a@0": 1, "b@1": 1}, "maps": {"alpha@0": [[1]]}} — keys are
/// "vertex@level" / "arrow@level"; maps are indexed by the opposite arrow of
/// the named covering arrow.
QuiverRep rep_from_json(const std::string& text, const CoverWindow& cw, FieldSpec f);
/// Level range mentioned by a rep file (to size the window).
std::pair<int, int> rep_json_level_range(const std::string& text);

}  // namespace rsq

#endif
