#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "grpdb/generator_file.hpp"
#include "grpdb/pipeline.hpp"

struct sqlite3;

namespace grpdb {

inline constexpr int kStoreSchemaVersion = 1;

struct IngestResult {
  std::string label;
  bool alias = false;  // merged into an existing record
  std::string note;
};

/// "[3,2,1]": exponents of the prime factorisation of n, largest first.
std::vector<int> factor_pattern(std::uint64_t n);
std::string pattern_string(const std::vector<int>& pattern);

/// Sort key of the `i` part of `N.i`: numeric ids first, then letter codes.
long long label_rank(const std::string& label);

/// SQLite-backed record store with tables groups, aliases, subgroups, classes and
/// characters. One connection guarded by a mutex: a single writer, readers see whole
/// transactions.
class Store {
 public:
  /// Opens or creates the database; ":memory:" gives a private in-memory store.
  explicit Store(const std::string& path = ":memory:");
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  /// Adds a group, or records it as an alias when an isomorphic group of the same order
  /// is already stored (hash match confirmed by an isomorphism witness). Throws
  /// DomainError when an explicit label is taken by a non-isomorphic group.
  IngestResult ingest(const std::optional<std::string>& label, const std::string& name, const PermGroup& group);
  IngestResult ingest(const GeneratorBlock& block, const std::string& name = "");
  std::vector<IngestResult> ingest_text(std::string_view text);
  std::vector<IngestResult> ingest_file(const std::string& path);

  /// Inserts or replaces a record and its index rows.
  void put(const GroupRecord& record);
  std::optional<GroupRecord> get(const std::string& label) const;
  bool contains(const std::string& label) const;

  /// All labels ordered by (order, label).
  std::vector<std::string> labels() const;
  std::size_t size() const;
  /// Labels of groups of order `n`, by label.
  std::vector<std::string> labels_of_order(std::uint64_t n) const;

  /// Runs compute_all for each label on `threads` workers; each job writes only its own rows.
  void compute(const std::vector<std::string>& labels, const Budgets& budgets = {}, unsigned threads = 0,
               const std::function<void(const std::string&)>& progress = {});

  /// Header line then one line per record, in label order.
  void export_jsonl(std::ostream& out, const std::vector<std::string>& labels) const;
  /// Header line then one line per subgroup class.
  void export_subgroups_jsonl(std::ostream& out, const std::vector<std::string>& labels) const;
  /// Reads an export written by export_jsonl; returns the number of records.
  std::size_t import_jsonl(std::istream& in);

  void clear();

  /// Runs `f` with exclusive access to the connection.
  void with_connection(const std::function<void(sqlite3*)>& f) const;

 private:
  void exec(const std::string& sql) const;
  void put_locked(const GroupRecord& record);
  std::optional<GroupRecord> get_locked(const std::string& label) const;
  std::string next_letter_label(std::uint64_t order) const;

  sqlite3* db_ = nullptr;
  mutable std::recursive_mutex mutex_;
};

}  // namespace grpdb
