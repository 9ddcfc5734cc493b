#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace grpdb {

class Store;

inline constexpr int kApiVersion = 1;
inline constexpr std::size_t kDefaultPerPage = 50;
inline constexpr std::size_t kMaxPerPage = 500;
inline constexpr std::size_t kLatticeDisplayCap = 100;

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON, keys sorted
  std::string content_type = "application/json";
};

using ApiParams = std::map<std::string, std::string>;

/// Read-only request handler shared by `grpdb serve` and the tests.
///
///   GET /groups?q=&page=&per_page=
///   GET /group/{label}
///   GET /group/{label}/lattice?mode=conj|aut&normals_only=bool&full=bool
///   GET /group/{label}/characters
///   GET /subgroup/{label}
///   GET /character/{label}
///
/// Every response is an envelope {"v": 1, "kind": ..., ...}; errors carry
/// {"error": {"status", "message", ...}}. OPTIONS answers 204 for CORS preflight.
ApiResponse handle_request(const Store& store, const std::string& method, const std::string& path,
                           const ApiParams& params);

/// Opaque page token for `offset` within the results of the canonical query `query`.
std::string page_token(const std::string& query, std::size_t per_page, std::size_t offset);

}  // namespace grpdb
