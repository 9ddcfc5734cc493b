#include "grpdb/store.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <istream>
#include <ostream>
#include <thread>

#include "grpdb/error.hpp"
#include "grpdb/iso_hash.hpp"
#include "grpdb/labeling.hpp"
#include "grpdb/record_json.hpp"

namespace grpdb {

namespace {

constexpr std::size_t kIngestIsomorphismBudget = 2048;

const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS meta(key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS groups(
  label TEXT PRIMARY KEY,
  order_ INTEGER NOT NULL,
  label_rank INTEGER NOT NULL,
  exponent INTEGER NOT NULL,
  hash TEXT NOT NULL,
  factor_pattern TEXT NOT NULL,
  computed INTEGER NOT NULL,
  abelian INTEGER, cyclic INTEGER, nilpotent INTEGER, solvable INTEGER, simple INTEGER, perfect INTEGER,
  nilpotency_class INTEGER,
  derived_length INTEGER,
  class_count INTEGER,
  abelianization TEXT,
  lattice_complete INTEGER,
  record TEXT NOT NULL);
CREATE INDEX IF NOT EXISTS groups_order ON groups(order_, label_rank);
CREATE INDEX IF NOT EXISTS groups_hash ON groups(order_, hash);
CREATE TABLE IF NOT EXISTS aliases(
  label TEXT NOT NULL, source TEXT NOT NULL, degree INTEGER NOT NULL, generators TEXT NOT NULL);
CREATE INDEX IF NOT EXISTS aliases_label ON aliases(label);
CREATE TABLE IF NOT EXISTS subgroups(
  group_label TEXT NOT NULL, label TEXT NOT NULL, aut_label TEXT NOT NULL,
  order_ INTEGER NOT NULL, idx INTEGER NOT NULL, normal INTEGER NOT NULL, maximal INTEGER NOT NULL,
  abelian INTEGER NOT NULL, cyclic INTEGER NOT NULL, hash TEXT NOT NULL, iso TEXT NOT NULL,
  generators TEXT NOT NULL,
  PRIMARY KEY(group_label, label));
CREATE INDEX IF NOT EXISTS subgroups_hash ON subgroups(hash);
CREATE TABLE IF NOT EXISTS classes(
  group_label TEXT NOT NULL, label TEXT NOT NULL, order_ INTEGER NOT NULL, size INTEGER NOT NULL,
  PRIMARY KEY(group_label, label));
CREATE TABLE IF NOT EXISTS characters(
  group_label TEXT NOT NULL, label TEXT NOT NULL, degree INTEGER NOT NULL, indicator INTEGER NOT NULL,
  PRIMARY KEY(group_label, label));
)sql";

class Statement {
 public:
  Statement(sqlite3* db, const std::string& sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK)
      throw Error(std::string("sqlite prepare: ") + sqlite3_errmsg(db));
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int i, const std::string& v) {
    sqlite3_bind_text(stmt_, i, v.c_str(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
    return *this;
  }
  Statement& bind(int i, long long v) {
    sqlite3_bind_int64(stmt_, i, v);
    return *this;
  }
  Statement& bind_null(int i) {
    sqlite3_bind_null(stmt_, i);
    return *this;
  }
  template <typename T>
  Statement& bind_opt(int i, const std::optional<T>& v) {
    if (v) return bind(i, static_cast<long long>(*v));
    return bind_null(i);
  }

  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw Error(std::string("sqlite step: ") + sqlite3_errmsg(db_));
  }
  void run() {
    while (step()) {
    }
  }
  std::string text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char*>(p), static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col)))
             : std::string();
  }
  long long integer(int col) const { return sqlite3_column_int64(stmt_, col); }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::string join_json(const std::vector<std::string>& v) { return nlohmann::json(v).dump(); }

template <typename T>
std::string list_string(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

std::vector<int> factor_pattern(std::uint64_t n) {
  std::vector<int> out;
  for (auto [p, e] : factorize(n)) out.push_back(e);
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::string pattern_string(const std::vector<int>& pattern) { return list_string(pattern); }

long long label_rank(const std::string& label) {
  const auto dot = label.find('.');
  const std::string tail = dot == std::string::npos ? label : label.substr(dot + 1);
  if (!tail.empty() && std::all_of(tail.begin(), tail.end(), [](unsigned char c) { return std::isdigit(c); }))
    return tail.size() > 12 ? (1LL << 40) : std::stoll(tail);
  if (auto k = parse_letter_code(tail)) return (1LL << 41) + static_cast<long long>(*k);
  return 1LL << 42;
}

Store::Store(const std::string& path) {
  if (sqlite3_open(path.c_str(), &db_) != SQLITE_OK) {
    const std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    throw Error("cannot open store " + path + ": " + msg);
  }
  sqlite3_busy_timeout(db_, 5000);
  exec(kSchema);
  Statement s(db_, "SELECT value FROM meta WHERE key = 'schema_version'");
  if (s.step()) {
    if (s.text(0) != std::to_string(kStoreSchemaVersion))
      throw Error("store schema version " + s.text(0) + " is not supported");
  } else {
    exec("INSERT INTO meta(key, value) VALUES('schema_version', '" + std::to_string(kStoreSchemaVersion) + "')");
  }
}

Store::~Store() { sqlite3_close(db_); }

void Store::exec(const std::string& sql) const {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    const std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw Error("sqlite: " + msg);
  }
}

void Store::with_connection(const std::function<void(sqlite3*)>& f) const {
  std::lock_guard lock(mutex_);
  f(db_);
}

std::string Store::next_letter_label(std::uint64_t order) const {
  Statement s(db_, "SELECT COUNT(*), MAX(label_rank) FROM groups WHERE order_ = ? AND label_rank >= ? AND label_rank < ?");
  s.bind(1, static_cast<long long>(order)).bind(2, 1LL << 41).bind(3, 1LL << 42);
  std::size_t next = 0;
  if (s.step() && s.integer(0) > 0) next = static_cast<std::size_t>(s.integer(1) - (1LL << 41)) + 1;
  return std::to_string(order) + "." + letter_code(next);
}

IngestResult Store::ingest(const std::optional<std::string>& label, const std::string& name, const PermGroup& group) {
  std::lock_guard lock(mutex_);
  const std::string hash = group_hash(group).hex();
  std::vector<std::string> gens;
  for (const auto& g : group.generators()) gens.push_back(g.cycles());
  const std::string source = label.value_or(name);

  auto add_alias = [&](const std::string& target, const std::string& note) {
    auto rec = get_locked(target);
    for (const auto& a : rec->aliases)
      if (a.degree == group.degree() && a.generators == gens) return IngestResult{target, true, "already recorded"};
    if (rec->degree == group.degree() && rec->generators == gens) return IngestResult{target, true, "same realization"};
    rec->aliases.push_back({source, group.degree(), gens});
    put_locked(*rec);
    return IngestResult{target, true, note};
  };

  // Same-order records with the same hash are confirmed with an isomorphism witness.
  std::vector<std::string> same_hash;
  {
    Statement s(db_, "SELECT label FROM groups WHERE order_ = ? AND hash = ? ORDER BY label_rank");
    s.bind(1, static_cast<long long>(group.order())).bind(2, hash);
    while (s.step()) same_hash.push_back(s.text(0));
  }
  std::string unresolved;
  for (const auto& other : same_hash) {
    const auto rec = get_locked(other);
    const PermGroup existing = group_of(*rec);
    const IsoResult iso = is_isomorphic(group, existing, kIngestIsomorphismBudget);
    if (iso.status == IsoStatus::isomorphic) return add_alias(other, "isomorphic to " + other);
    if (iso.status == IsoStatus::inconclusive) unresolved = other;
  }

  std::string target;
  if (label) {
    if (!is_group_label(*label)) throw DomainError("malformed label " + *label);
    if (std::stoull(label->substr(0, label->find('.'))) != group.order())
      throw DomainError("label " + *label + " does not match group order " + std::to_string(group.order()));
    if (get_locked(*label)) throw DomainError("label " + *label + " already holds a non-isomorphic group");
    target = *label;
  } else {
    target = next_letter_label(group.order());
  }
  GroupRecord stub = make_stub(target, name, group);
  put_locked(stub);
  IngestResult out{target, false, ""};
  if (!unresolved.empty()) out.note = "isomorphism with " + unresolved + " unresolved";
  return out;
}

IngestResult Store::ingest(const GeneratorBlock& block, const std::string& name) {
  const PermGroup group = PermGroup::generate(block.generators);
  return ingest(block.label, name.empty() ? block.name : name, group);
}

std::vector<IngestResult> Store::ingest_text(std::string_view text) {
  std::vector<IngestResult> out;
  for (const auto& block : parse_generator_file(text)) out.push_back(ingest(block));
  return out;
}

std::vector<IngestResult> Store::ingest_file(const std::string& path) {
  std::vector<IngestResult> out;
  for (const auto& block : read_generator_file(path)) out.push_back(ingest(block));
  return out;
}

void Store::put(const GroupRecord& record) {
  std::lock_guard lock(mutex_);
  put_locked(record);
}

void Store::put_locked(const GroupRecord& r) {
  exec("BEGIN IMMEDIATE");
  try {
    for (const char* table : {"aliases WHERE label", "subgroups WHERE group_label", "classes WHERE group_label",
                              "characters WHERE group_label"}) {
      Statement del(db_, std::string("DELETE FROM ") + table + " = ?");
      del.bind(1, r.label).run();
    }
    Statement g(db_,
                "INSERT OR REPLACE INTO groups(label, order_, label_rank, exponent, hash, factor_pattern, computed, "
                "abelian, cyclic, nilpotent, solvable, simple, perfect, nilpotency_class, derived_length, class_count, "
                "abelianization, lattice_complete, record) VALUES(?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?)");
    g.bind(1, r.label)
        .bind(2, static_cast<long long>(r.order))
        .bind(3, label_rank(r.label))
        .bind(4, static_cast<long long>(r.exponent))
        .bind(5, r.hash)
        .bind(6, pattern_string(factor_pattern(r.order)))
        .bind(7, r.computed ? 1LL : 0LL);
    if (r.computed) {
      const auto& a = r.attributes;
      int col = 8;
      for (bool flag : {a.abelian, a.cyclic, a.nilpotent, a.solvable, a.simple, a.perfect}) g.bind(col++, flag ? 1LL : 0LL);
      // Non-nilpotent groups have no class; store -1 so the column is NULL only for stubs.
      g.bind(14, r.nilpotency_class ? static_cast<long long>(*r.nilpotency_class) : -1LL);
      g.bind(15, r.derived_length ? static_cast<long long>(*r.derived_length) : -1LL);
      g.bind(16, static_cast<long long>(r.class_count));
      g.bind(17, list_string(r.abelianization));
      if (r.lattice)
        g.bind(18, r.lattice->complete ? 1LL : 0LL);
      else
        g.bind_null(18);
    } else {
      for (int col = 8; col <= 18; ++col) g.bind_null(col);
    }
    g.bind(19, dump_record(r));
    g.run();

    for (const auto& a : r.aliases) {
      Statement s(db_, "INSERT INTO aliases(label, source, degree, generators) VALUES(?,?,?,?)");
      s.bind(1, r.label).bind(2, a.source).bind(3, static_cast<long long>(a.degree)).bind(4, join_json(a.generators)).run();
    }
    if (r.lattice) {
      for (const auto& sub : r.lattice->classes) {
        Statement row(db_,
                      "INSERT OR REPLACE INTO subgroups(group_label, label, aut_label, order_, idx, normal, maximal, "
                      "abelian, cyclic, hash, iso, generators) VALUES(?,?,?,?,?,?,?,?,?,?,?,?)");
        row.bind(1, r.label)
            .bind(2, sub.label)
            .bind(3, sub.aut_label)
            .bind(4, static_cast<long long>(sub.order))
            .bind(5, static_cast<long long>(sub.index))
            .bind(6, sub.normal ? 1LL : 0LL)
            .bind(7, sub.maximal ? 1LL : 0LL)
            .bind(8, sub.abelian ? 1LL : 0LL)
            .bind(9, sub.cyclic ? 1LL : 0LL)
            .bind(10, sub.hash)
            .bind(11, sub.iso)
            .bind(12, join_json(sub.generators))
            .run();
      }
    }
    for (const auto& c : r.classes) {
      Statement s(db_, "INSERT OR REPLACE INTO classes(group_label, label, order_, size) VALUES(?,?,?,?)");
      s.bind(1, r.label).bind(2, c.label).bind(3, static_cast<long long>(c.order)).bind(4, static_cast<long long>(c.size)).run();
    }
    if (r.characters)
      for (const auto& c : r.characters->characters) {
        Statement s(db_, "INSERT OR REPLACE INTO characters(group_label, label, degree, indicator) VALUES(?,?,?,?)");
        s.bind(1, r.label).bind(2, c.label).bind(3, static_cast<long long>(c.degree)).bind(4, static_cast<long long>(c.indicator)).run();
      }
    exec("COMMIT");
  } catch (...) {
    exec("ROLLBACK");
    throw;
  }
}

std::optional<GroupRecord> Store::get(const std::string& label) const {
  std::lock_guard lock(mutex_);
  return get_locked(label);
}

std::optional<GroupRecord> Store::get_locked(const std::string& label) const {
  Statement s(db_, "SELECT record FROM groups WHERE label = ?");
  s.bind(1, label);
  if (!s.step()) return std::nullopt;
  return record_from_json(nlohmann::json::parse(s.text(0)));
}

bool Store::contains(const std::string& label) const {
  std::lock_guard lock(mutex_);
  Statement s(db_, "SELECT 1 FROM groups WHERE label = ?");
  s.bind(1, label);
  return s.step();
}

std::vector<std::string> Store::labels() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  Statement s(db_, "SELECT label FROM groups ORDER BY order_, label_rank, label");
  while (s.step()) out.push_back(s.text(0));
  return out;
}

std::vector<std::string> Store::labels_of_order(std::uint64_t n) const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  Statement s(db_, "SELECT label FROM groups WHERE order_ = ? ORDER BY label_rank, label");
  s.bind(1, static_cast<long long>(n));
  while (s.step()) out.push_back(s.text(0));
  return out;
}

std::size_t Store::size() const {
  std::lock_guard lock(mutex_);
  Statement s(db_, "SELECT COUNT(*) FROM groups");
  s.step();
  return static_cast<std::size_t>(s.integer(0));
}

void Store::compute(const std::vector<std::string>& labels, const Budgets& budgets, unsigned threads,
                    const std::function<void(const std::string&)>& progress) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, labels.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next++;
      if (i >= labels.size()) return;
      try {
        auto stub = get(labels[i]);
        if (!stub) throw DomainError("unknown label " + labels[i]);
        const GroupRecord done = compute_all(std::move(*stub), budgets);
        put(done);
        if (progress) {
          std::lock_guard lock(failure_mutex);
          progress(labels[i]);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void Store::export_jsonl(std::ostream& out, const std::vector<std::string>& labels) const {
  nlohmann::json header = {{"kind", "header"}, {"schema", kRecordSchemaVersion}, {"count", labels.size()}, {"table", "groups"}};
  out << header.dump() << "\n";
  for (const auto& label : labels) {
    auto rec = get(label);
    if (!rec) continue;
    nlohmann::json j = to_json(*rec);
    j["kind"] = "group";
    out << j.dump() << "\n";
  }
}

void Store::export_subgroups_jsonl(std::ostream& out, const std::vector<std::string>& labels) const {
  std::vector<nlohmann::json> rows;
  for (const auto& label : labels) {
    auto rec = get(label);
    if (!rec || !rec->lattice) continue;
    for (const auto& s : rec->lattice->classes) {
      nlohmann::json j = to_json(s);
      j["kind"] = "subgroup";
      j["group"] = label;
      rows.push_back(std::move(j));
    }
  }
  nlohmann::json header = {{"kind", "header"}, {"schema", kRecordSchemaVersion}, {"count", rows.size()}, {"table", "subgroups"}};
  out << header.dump() << "\n";
  for (const auto& j : rows) out << j.dump() << "\n";
}

std::size_t Store::import_jsonl(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::size_t count = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no, static_cast<int>(e.byte));
    }
    const std::string kind = j.value("kind", "");
    if (kind == "header") {
      if (j.value("schema", 0) != kRecordSchemaVersion) throw ParseError("unsupported export schema", line_no, 1);
      if (j.value("table", "") != "groups") throw ParseError("not a group export", line_no, 1);
      saw_header = true;
      continue;
    }
    if (!saw_header) throw ParseError("missing header record", line_no, 1);
    if (kind != "group") throw ParseError("unexpected record kind '" + kind + "'", line_no, 1);
    j.erase("kind");
    try {
      put(record_from_json(j));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, 1);
    }
    ++count;
  }
  return count;
}

void Store::clear() {
  std::lock_guard lock(mutex_);
  exec("DELETE FROM groups; DELETE FROM aliases; DELETE FROM subgroups; DELETE FROM classes; DELETE FROM characters;");
}

}  // namespace grpdb
