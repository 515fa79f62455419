#pragma once

// FnTable files and JSON views of every report.
//
// FnTable JSON: {"p": 2, "k": 2, "n": 2, "values": [...]} with p^(kn)
// entries in point-codec order. FnTable CSV: a "p,k,n" header line, a line
// with the three numbers, then one value per line. A CSV whose first line is
// already numeric is accepted too.

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "hyperrank/check.hpp"
#include "hyperrank/geometry.hpp"
#include "hyperrank/hyperplane.hpp"
#include "hyperrank/incidence.hpp"
#include "hyperrank/phi.hpp"
#include "hyperrank/suites.hpp"

namespace hyperrank {

using Json = nlohmann::ordered_json;

/// Parses JSON or CSV (detected from the first non-blank character).
/// Throws ParseError for malformed input, bad lengths, entries >= p, or a
/// context different from `expected`.
FnTable read_fn_table(std::istream& is, const std::optional<RingCtx>& expected = std::nullopt);
FnTable read_fn_table_file(const std::string& path, const std::optional<RingCtx>& expected = std::nullopt);

void write_fn_table_json(std::ostream& os, const FnTable& f);
void write_fn_table_csv(std::ostream& os, const FnTable& f);

Json to_json(const RingCtx& ctx);
Json to_json(const Point& x);
Json to_json(const Check& c);
Json to_json(const std::vector<Check>& checks);
/// Report objects omit their timing fields; callers attach timing once.
Json to_json(const RankReport& r);
Json to_json(const FactorizationReport& r);
Json to_json(const TheoremBounds& b);
Json to_json(const Fan& f, const RingCtx& ctx);
Json to_json(const FanTestReport& r);
Json to_json(const SuiteResult& r);

}  // namespace hyperrank
