#pragma once

#include <iosfwd>
#include <string>

#include "qslie/strichartz.hpp"

namespace qslie::series_io {

// JSON schema:
// {
//   "flavor": "stratonovich" | "ito",
//   "form": "expanded" | "resummed",        (ito only)
//   "d": int, "weight": int,
//   "terms": [
//     { "word": "<word>",
//       "integral": { "<word>": "p/q", ... },
//       "bracket": [ { "lword": "<word>", "coeff": "p/q" }, ... ] }, ... ]
// }
// Term order, map order, and rational formatting are all canonical, so a
// fixed series serializes byte-for-byte identically.

std::string to_json(const strichartz::LieSeries& series);
strichartz::LieSeries from_json(const std::string& text);

void save(const strichartz::LieSeries& series, const std::string& path);
strichartz::LieSeries load(const std::string& path);

}  // namespace qslie::series_io
