#include "grpdb/query.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <cctype>
#include <json.hpp>
#include <limits>

#include "grpdb/families.hpp"
#include "grpdb/generator_file.hpp"
#include "grpdb/iso_hash.hpp"
#include "grpdb/pipeline.hpp"
#include "grpdb/store.hpp"
#include "grpdb/structure.hpp"

namespace grpdb {

bool IntPredicate::matches(std::int64_t v) const {
  switch (op) {
    case Op::eq: return v == lo;
    case Op::lt: return v < lo;
    case Op::le: return v <= lo;
    case Op::gt: return v > lo;
    case Op::ge: return v >= lo;
    case Op::range: return lo <= v && v <= hi;
  }
  return false;
}

std::string IntPredicate::str() const {
  switch (op) {
    case Op::eq: return std::to_string(lo);
    case Op::lt: return "<" + std::to_string(lo);
    case Op::le: return "<=" + std::to_string(lo);
    case Op::gt: return ">" + std::to_string(lo);
    case Op::ge: return ">=" + std::to_string(lo);
    case Op::range: return std::to_string(lo) + ".." + std::to_string(hi);
  }
  return "";
}

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

template <typename T>
std::string list_str(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

bool bare_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '^' || c == ':' || c == '.' || c == '_';
}

}  // namespace

std::string SubgroupPredicate::str() const {
  std::vector<std::string> args;
  if (iso) {
    const bool bare = !iso->empty() && std::all_of(iso->begin(), iso->end(), bare_name_char);
    args.push_back("iso=" + (bare ? *iso : "\"" + *iso + "\""));
  }
  if (normal) args.push_back("normal=" + bool_str(*normal));
  if (abelian) args.push_back("abelian=" + bool_str(*abelian));
  if (cyclic) args.push_back("cyclic=" + bool_str(*cyclic));
  if (maximal) args.push_back("maximal=" + bool_str(*maximal));
  if (index) args.push_back("index=" + index->str());
  if (order) args.push_back("order=" + order->str());
  std::string s = "has_subgroup(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i];
  return s + ")";
}

std::string QueryAST::str() const {
  std::vector<std::string> terms;
  if (order) terms.push_back("order:" + order->str());
  if (exponent) terms.push_back("exponent:" + exponent->str());
  if (factors) terms.push_back("factors:" + list_str(*factors));
  for (const auto& [k, v] : flags) terms.push_back(k + ":" + bool_str(v));
  if (abelianization) terms.push_back("abelianization:" + list_str(*abelianization));
  if (nilpotency_class) terms.push_back("nilpotency_class:" + nilpotency_class->str());
  if (derived_length) terms.push_back("derived_length:" + derived_length->str());
  if (class_count) terms.push_back("classes:" + class_count->str());
  for (const auto& s : subgroups) terms.push_back(s.str());
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " " : "") + terms[i];
  return out;
}

std::vector<std::uint64_t> invariant_factors(const std::vector<std::uint64_t>& cyclic_orders) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
  for (auto n : cyclic_orders) {
    if (n == 0) throw DomainError("cyclic factor of order 0");
    for (auto [p, e] : factorize(n)) {
      std::uint64_t q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      by_prime[p].push_back(q);
    }
  }
  std::size_t length = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.rbegin(), powers.rend());
    length = std::max(length, powers.size());
  }
  std::vector<std::uint64_t> out(length, 1);
  for (const auto& [p, powers] : by_prime)
    for (std::size_t i = 0; i < powers.size(); ++i) out[length - 1 - i] *= powers[i];
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  QueryAST parse() {
    QueryAST ast;
    skip_ws();
    while (pos_ < text_.size()) {
      term(ast);
      if (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
        fail("expected whitespace between terms");
      skip_ws();
    }
    return ast;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, static_cast<int>(pos_) + 1); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, 1, static_cast<int>(at) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view s) {
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    if (pos_ - start > 15) fail_at("integer too large", start);
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  IntPredicate int_pred() {
    IntPredicate p;
    if (accept(">=")) {
      p.op = IntPredicate::Op::ge;
    } else if (accept("<=")) {
      p.op = IntPredicate::Op::le;
    } else if (accept(">")) {
      p.op = IntPredicate::Op::gt;
    } else if (accept("<")) {
      p.op = IntPredicate::Op::lt;
    }
    p.lo = integer();
    if (p.op == IntPredicate::Op::eq && accept("..")) {
      p.op = IntPredicate::Op::range;
      const std::size_t at = pos_;
      p.hi = integer();
      if (p.hi < p.lo) fail_at("empty range", at);
    }
    return p;
  }

  std::vector<std::int64_t> int_list() {
    expect('[');
    std::vector<std::int64_t> out;
    skip_ws();
    if (accept("]")) return out;
    while (true) {
      skip_ws();
      out.push_back(integer());
      skip_ws();
      if (accept("]")) return out;
      if (!accept(",")) fail("expected ',' or ']'");
    }
  }

  bool boolean() {
    if (accept("true")) return true;
    if (accept("false")) return false;
    fail("expected true or false");
  }

  std::string name() {
    if (accept("\"")) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
      if (pos_ >= text_.size()) fail_at("unterminated string", start - 1);
      std::string out(text_.substr(start, pos_ - start));
      ++pos_;
      if (out.empty()) fail_at("empty name", start);
      return out;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && bare_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a group name");
    return std::string(text_.substr(start, pos_ - start));
  }

  template <typename T>
  void once(std::optional<T>& slot, T value, std::size_t at, const std::string& key) {
    if (slot) fail_at("'" + key + "' given twice", at);
    slot = std::move(value);
  }

  void term(QueryAST& ast) {
    const std::size_t start = pos_;
    const std::string key = word();
    if (key.empty()) fail("expected a keyword");
    if (key == "has_subgroup") {
      ast.subgroups.push_back(subgroup_args());
      return;
    }
    expect(':');
    if (key == "order") {
      once(ast.order, int_pred(), start, key);
    } else if (key == "exponent") {
      once(ast.exponent, int_pred(), start, key);
    } else if (key == "nilpotency_class") {
      once(ast.nilpotency_class, int_pred(), start, key);
    } else if (key == "derived_length") {
      once(ast.derived_length, int_pred(), start, key);
    } else if (key == "classes") {
      once(ast.class_count, int_pred(), start, key);
    } else if (key == "factors") {
      const std::size_t at = pos_;
      std::vector<int> pattern;
      for (auto e : int_list()) {
        if (e < 1) fail_at("factor exponents must be positive", at);
        pattern.push_back(static_cast<int>(e));
      }
      std::sort(pattern.rbegin(), pattern.rend());
      once(ast.factors, pattern, start, key);
    } else if (key == "abelianization") {
      const std::size_t at = pos_;
      std::vector<std::uint64_t> orders;
      for (auto e : int_list()) {
        if (e < 1) fail_at("cyclic factors must be positive", at);
        if (e > 1) orders.push_back(static_cast<std::uint64_t>(e));
      }
      once(ast.abelianization, invariant_factors(orders), start, key);
    } else if (std::find(query_flags().begin(), query_flags().end(), key) != query_flags().end()) {
      if (ast.flags.contains(key)) fail_at("'" + key + "' given twice", start);
      ast.flags[key] = boolean();
    } else {
      fail_at("unknown keyword '" + key + "'", start);
    }
  }

  SubgroupPredicate subgroup_args() {
    SubgroupPredicate s;
    expect('(');
    skip_ws();
    if (accept(")")) return s;
    while (true) {
      skip_ws();
      const std::size_t at = pos_;
      const std::string key = word();
      skip_ws();
      expect('=');
      skip_ws();
      if (key == "iso") {
        once(s.iso, name(), at, key);
      } else if (key == "normal") {
        once(s.normal, boolean(), at, key);
      } else if (key == "abelian") {
        once(s.abelian, boolean(), at, key);
      } else if (key == "cyclic") {
        once(s.cyclic, boolean(), at, key);
      } else if (key == "maximal") {
        once(s.maximal, boolean(), at, key);
      } else if (key == "index") {
        once(s.index, int_pred(), at, key);
      } else if (key == "order") {
        once(s.order, int_pred(), at, key);
      } else {
        fail_at("unknown has_subgroup argument '" + key + "'", at);
      }
      skip_ws();
      if (accept(")")) return s;
      if (!accept(",")) fail("expected ',' or ')'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string sql_int(const std::string& column, const IntPredicate& p) {
  switch (p.op) {
    case IntPredicate::Op::eq: return column + " = " + std::to_string(p.lo);
    case IntPredicate::Op::lt: return column + " < " + std::to_string(p.lo);
    case IntPredicate::Op::le: return column + " <= " + std::to_string(p.lo);
    case IntPredicate::Op::gt: return column + " > " + std::to_string(p.lo);
    case IntPredicate::Op::ge: return column + " >= " + std::to_string(p.lo);
    case IntPredicate::Op::range:
      return "(" + column + " BETWEEN " + std::to_string(p.lo) + " AND " + std::to_string(p.hi) + ")";
  }
  return "0";
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::optional<std::vector<std::uint64_t>> parse_abelian_name(const std::string& name) {
  // C2^2xC4, C6, C1
  std::vector<std::uint64_t> orders;
  std::size_t pos = 0;
  while (pos < name.size()) {
    if (name[pos] != 'C') return std::nullopt;
    ++pos;
    const std::size_t start = pos;
    while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) ++pos;
    if (pos == start || pos - start > 9) return std::nullopt;
    const std::uint64_t n = std::stoull(name.substr(start, pos - start));
    std::uint64_t reps = 1;
    if (pos < name.size() && name[pos] == '^') {
      const std::size_t e = ++pos;
      while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) ++pos;
      if (pos == e || pos - e > 2) return std::nullopt;
      reps = std::stoull(name.substr(e, pos - e));
    }
    if (n == 0) return std::nullopt;
    for (std::uint64_t i = 0; i < reps; ++i)
      if (n > 1) orders.push_back(n);
    if (pos < name.size()) {
      if (name[pos] != 'x') return std::nullopt;
      ++pos;
      if (pos == name.size()) return std::nullopt;
    }
  }
  return orders;
}

struct Compiled {
  std::string sql;
  // Hashes of each iso predicate's target, for confirmation after the SQL pass.
  std::vector<std::optional<PermGroup>> iso_groups;
};

std::string subgroup_conditions(const SubgroupPredicate& s, const std::optional<std::string>& hash) {
  std::string c = "sg.group_label = groups.label";
  if (hash) c += " AND sg.hash = " + quote(*hash);
  if (s.normal) c += std::string(" AND sg.normal = ") + (*s.normal ? "1" : "0");
  if (s.abelian) c += std::string(" AND sg.abelian = ") + (*s.abelian ? "1" : "0");
  if (s.cyclic) c += std::string(" AND sg.cyclic = ") + (*s.cyclic ? "1" : "0");
  if (s.maximal) c += std::string(" AND sg.maximal = ") + (*s.maximal ? "1" : "0") + " AND groups.lattice_complete = 1";
  if (s.index) c += " AND " + sql_int("sg.idx", *s.index);
  if (s.order) c += " AND " + sql_int("sg.order_", *s.order);
  return c;
}

Compiled compile(const Store& store, const QueryAST& ast) {
  Compiled out;
  std::vector<std::string> parts;
  if (ast.order) parts.push_back(sql_int("order_", *ast.order));
  if (ast.exponent) parts.push_back(sql_int("exponent", *ast.exponent));
  if (ast.factors) parts.push_back("factor_pattern = " + quote(pattern_string(*ast.factors)));
  for (const auto& [k, v] : ast.flags) parts.push_back("(" + k + " = " + (v ? "1" : "0") + ")");
  if (ast.abelianization) {
    std::string s = "[";
    for (std::size_t i = 0; i < ast.abelianization->size(); ++i)
      s += (i ? "," : "") + std::to_string((*ast.abelianization)[i]);
    parts.push_back("abelianization = " + quote(s + "]"));
  }
  // -1 marks "not nilpotent" / "not solvable": a definite no, unlike NULL for stubs.
  if (ast.nilpotency_class)
    parts.push_back("(nilpotency_class >= 0 AND " + sql_int("nilpotency_class", *ast.nilpotency_class) + ")");
  if (ast.derived_length)
    parts.push_back("(derived_length >= 0 AND " + sql_int("derived_length", *ast.derived_length) + ")");
  if (ast.class_count) parts.push_back(sql_int("class_count", *ast.class_count));
  for (const auto& s : ast.subgroups) {
    std::optional<std::string> hash;
    std::optional<PermGroup> target;
    if (s.iso) {
      target = resolve_iso(store, *s.iso);
      hash = group_hash(*target).hex();
    }
    out.iso_groups.push_back(std::move(target));
    parts.push_back("(CASE WHEN EXISTS (SELECT 1 FROM subgroups sg WHERE " + subgroup_conditions(s, hash) +
                    ") THEN 1 WHEN groups.lattice_complete = 1 THEN 0 ELSE NULL END)");
  }
  std::string where = "1";
  for (std::size_t i = 0; i < parts.size(); ++i) where = i == 0 ? parts[i] : where + " AND " + parts[i];
  out.sql = "SELECT label, lattice_complete, (" + where + ") AS m FROM groups ORDER BY order_, label_rank, label";
  return out;
}

}  // namespace

QueryAST parse_query(std::string_view text) { return Parser(text).parse(); }

PermGroup resolve_iso(const Store& store, const std::string& name) {
  if (is_group_label(name)) {
    if (auto rec = store.get(name)) return group_of(*rec);
    throw UnsupportedQuery("no stored group with label " + name);
  }
  if (auto orders = parse_abelian_name(name)) {
    std::uint64_t n = 1;
    for (auto o : *orders) n *= o;
    if (n > 100000) throw UnsupportedQuery("abelian group " + name + " is too large");
    if (orders->empty()) return PermGroup::generate({Permutation::identity(1)});
    return PermGroup::generate(families::abelian(std::vector<std::size_t>(orders->begin(), orders->end())));
  }
  for (auto& g : families::reference_groups())
    if (g.name == name) return PermGroup::generate(g.generators);
  throw UnsupportedQuery("unknown isomorphism type '" + name + "'");
}

QueryResult run_query(const Store& store, const QueryAST& ast) {
  const Compiled compiled = compile(store, ast);
  struct Row {
    std::string label;
    bool lattice_complete;
    std::optional<bool> match;
  };
  std::vector<Row> rows;
  store.with_connection([&](sqlite3* db) {
    sqlite3_stmt* stmt = nullptr;
    if (sqlite3_prepare_v2(db, compiled.sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK)
      throw Error(std::string("query compilation failed: ") + sqlite3_errmsg(db));
    int rc;
    while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
      Row r;
      r.label = reinterpret_cast<const char*>(sqlite3_column_text(stmt, 0));
      r.lattice_complete = sqlite3_column_int(stmt, 1) == 1;
      if (sqlite3_column_type(stmt, 2) != SQLITE_NULL) r.match = sqlite3_column_int(stmt, 2) != 0;
      rows.push_back(std::move(r));
    }
    sqlite3_finalize(stmt);
    if (rc != SQLITE_DONE) throw Error(std::string("query failed: ") + sqlite3_errmsg(db));
  });

  // A hash match is only a candidate: confirm one isomorphic subgroup per iso predicate.
  auto confirm = [&](const std::string& label) -> std::optional<bool> {
    const auto rec = store.get(label);
    if (!rec || !rec->lattice) return std::nullopt;
    for (std::size_t i = 0; i < ast.subgroups.size(); ++i) {
      const auto& target = compiled.iso_groups[i];
      if (!target) continue;
      const auto& pred = ast.subgroups[i];
      const std::string hash = group_hash(*target).hex();
      bool found = false;
      for (const auto& sub : rec->lattice->classes) {
        if (sub.hash != hash) continue;
        if (pred.normal && sub.normal != *pred.normal) continue;
        if (pred.abelian && sub.abelian != *pred.abelian) continue;
        if (pred.cyclic && sub.cyclic != *pred.cyclic) continue;
        if (pred.maximal && sub.maximal != *pred.maximal) continue;
        if (pred.index && !pred.index->matches(static_cast<std::int64_t>(sub.index))) continue;
        if (pred.order && !pred.order->matches(static_cast<std::int64_t>(sub.order))) continue;
        const PermGroup g = group_from_cycles(rec->degree, sub.generators);
        if (is_isomorphic(g, *target).status != IsoStatus::not_isomorphic) {
          found = true;
          break;
        }
      }
      if (!found) return rec->lattice->complete ? std::optional<bool>(false) : std::nullopt;
    }
    return true;
  };

  const bool needs_confirmation =
      std::any_of(compiled.iso_groups.begin(), compiled.iso_groups.end(), [](const auto& g) { return g.has_value(); });
  QueryResult out;
  for (auto& r : rows) {
    if (r.match && *r.match && needs_confirmation) r.match = confirm(r.label);
    if (!r.match)
      out.unknown.push_back(r.label);
    else if (*r.match)
      out.labels.push_back(r.label);
  }
  return out;
}

}  // namespace grpdb
