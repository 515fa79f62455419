#include "hyperrank/io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hyperrank/errors.hpp"

namespace hyperrank {

namespace {

std::uint64_t parse_uint(const std::string& field, const std::string& what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    if (field.empty() || field[0] == '-') throw std::invalid_argument(field);
    v = std::stoull(field, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid " + what + " '" + field + "'");
  }
  if (used != field.size()) throw ParseError("invalid " + what + " '" + field + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(trim(field));
  return out;
}

RingCtx make_ctx(std::uint64_t p, std::uint64_t k, std::uint64_t n) {
  if (p > 255 || k > 64 || n > 64) throw ParseError("context out of range");
  try {
    return RingCtx(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(n));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid context: ") + e.what());
  }
}

FnTable finish(const RingCtx& ctx, std::vector<std::uint64_t> raw, const std::optional<RingCtx>& expected) {
  if (expected && !(*expected == ctx)) {
    throw ParseError("table context (" + std::to_string(ctx.p()) + "," + std::to_string(ctx.k()) + "," +
                     std::to_string(ctx.n()) + ") does not match (" + std::to_string(expected->p()) + "," +
                     std::to_string(expected->k()) + "," + std::to_string(expected->n()) + ")");
  }
  if (raw.size() != ctx.size()) {
    throw ParseError("expected " + std::to_string(ctx.size()) + " values, got " + std::to_string(raw.size()));
  }
  std::vector<std::uint8_t> values(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] >= ctx.p()) {
      throw ParseError("value " + std::to_string(raw[i]) + " at index " + std::to_string(i) + " is not below p = " +
                       std::to_string(ctx.p()));
    }
    values[i] = static_cast<std::uint8_t>(raw[i]);
  }
  return FnTable(ctx, std::move(values));
}

FnTable read_json(std::istream& is, const std::optional<RingCtx>& expected) {
  Json doc;
  try {
    doc = Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  auto field = [&](const char* key) -> const Json& {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return doc.at(key);
  };
  auto uint_field = [&](const char* key) {
    const Json& v = field(key);
    if (!v.is_number_unsigned()) throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
  };
  const RingCtx ctx = make_ctx(uint_field("p"), uint_field("k"), uint_field("n"));
  const Json& vals = field("values");
  if (!vals.is_array()) throw ParseError("field 'values' must be an array");
  std::vector<std::uint64_t> raw;
  raw.reserve(vals.size());
  for (const auto& v : vals) {
    if (!v.is_number_unsigned()) throw ParseError("values must be non-negative integers");
    raw.push_back(v.get<std::uint64_t>());
  }
  return finish(ctx, std::move(raw), expected);
}

FnTable read_csv(std::istream& is, const std::optional<RingCtx>& expected) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  std::size_t pos = 0;
  if (pos < lines.size() && split(lines[pos], ',') == std::vector<std::string>{"p", "k", "n"}) ++pos;
  if (pos >= lines.size()) throw ParseError("CSV table has no context line");
  const auto head = split(lines[pos++], ',');
  if (head.size() != 3) throw ParseError("CSV context line must be 'p,k,n'");
  const RingCtx ctx = make_ctx(parse_uint(head[0], "p"), parse_uint(head[1], "k"), parse_uint(head[2], "n"));
  std::vector<std::uint64_t> raw;
  for (; pos < lines.size(); ++pos) raw.push_back(parse_uint(lines[pos], "value"));
  return finish(ctx, std::move(raw), expected);
}

Json opt(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

FnTable read_fn_table(std::istream& is, const std::optional<RingCtx>& expected) {
  is >> std::ws;
  if (is.peek() == '{') return read_json(is, expected);
  return read_csv(is, expected);
}

FnTable read_fn_table_file(const std::string& path, const std::optional<RingCtx>& expected) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_fn_table(in, expected);
}

void write_fn_table_json(std::ostream& os, const FnTable& f) {
  Json doc = to_json(f.ctx());
  doc["values"] = Json(std::vector<std::uint32_t>(f.values().begin(), f.values().end()));
  os << doc.dump() << '\n';
}

void write_fn_table_csv(std::ostream& os, const FnTable& f) {
  os << "p,k,n\n" << f.ctx().p() << ',' << f.ctx().k() << ',' << f.ctx().n() << '\n';
  for (auto v : f.values()) os << static_cast<unsigned>(v) << '\n';
}

Json to_json(const RingCtx& ctx) { return Json{{"p", ctx.p()}, {"k", ctx.k()}, {"n", ctx.n()}}; }

Json to_json(const Point& x) { return Json(x.coords); }

Json to_json(const Check& c) {
  Json j{{"name", c.name}, {"relation", c.relation}, {"lhs", opt(c.lhs)}, {"rhs", opt(c.rhs)}, {"pass", c.pass}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json to_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(to_json(c));
  return arr;
}

Json to_json(const RankReport& r) {
  return Json{{"context", to_json(r.ctx)},
              {"rank_W", opt(r.rank_W)},
              {"rank_Wstar", opt(r.rank_Wstar)},
              {"dim_H", opt(r.dim_H)},
              {"dim_H_path", r.dim_H_path},
              {"rank_Astar_literal", opt(r.rank_Astar_literal)},
              {"checks", to_json(r.checks)},
              {"omitted", r.omitted},
              {"pass", r.passed()}};
}

Json to_json(const FactorizationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.zero_pattern_violations) {
    violations.push_back(Json{{"m", v.m}, {"alpha", v.alpha}, {"beta", v.beta}, {"value", v.value}});
  }
  return Json{{"context", to_json(r.ctx)},
              {"dim", r.dim},
              {"product_matches", r.product_matches},
              {"rank_H", r.rank_H},
              {"rank_B", r.rank_B},
              {"rank_Psi", r.rank_Psi},
              {"dim_H", opt(r.dim_H)},
              {"zero_pattern_violations", violations},
              {"checks", to_json(r.checks)},
              {"pass", r.passed()}};
}

Json to_json(const TheoremBounds& b) {
  return Json{{"trivial_bound", b.trivial_bound}, {"fan_bound", b.fan_bound}, {"ubn_bound", b.ubn_bound}};
}

Json to_json(const Fan& f, const RingCtx& ctx) {
  Json lines = Json::array();
  for (const auto& l : f.lines) lines.push_back(Json{{"base", to_json(l.a)}, {"direction", to_json(l.b.rep)}});
  Json j{{"scale", f.scale},
         {"stated_scale_bound", stated_scale_bound(ctx)},
         {"qprime_base", to_json(f.qprime.base)},
         {"q_base", to_json(f.q.base)},
         {"lines", lines},
         {"plane", nullptr},
         {"points", f.points}};
  if (f.plane) {
    j["plane"] = Json{{"anchor", to_json(f.plane->anchor)},
                      {"u", to_json(f.plane->u.rep)},
                      {"v", to_json(f.plane->v.rep)},
                      {"nbhd_scale", f.plane->nbhd_scale}};
  }
  return j;
}

Json to_json(const FanTestReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(Json{{"fan_index", v.fan_index}, {"sum", v.sum}});
  return Json{{"fans_checked", r.fans_checked}, {"violations", violations}, {"pass", r.passed()}};
}

Json to_json(const SuiteResult& r) {
  return Json{{"suite", r.suite}, {"checks", to_json(r.checks)}, {"pass", r.passed()}};
}

}  // namespace hyperrank
