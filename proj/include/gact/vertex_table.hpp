#pragma once

#include "gact/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gact {

using VertexId = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using Simplex = std::vector<VertexId>;

Simplex make_simplex(std::vector<VertexId> ids);
bool is_face(const Simplex& face, const Simplex& of);
Simplex simplex_union(const Simplex& a, const Simplex& b);
Simplex simplex_intersection(const Simplex& a, const Simplex& b);

/**
 * One vertex. Base vertices carry a name; subdivided vertices are the pair
 * (color, carrier) where the carrier holds at least two vertices of the level below
 * and exactly one of them (`own`) has the same color. A singleton carrier is never
 * stored: (p, {p}) is p itself.
 */
struct VertexRecord {
  int color = 0;
  std::string base_name;
  Simplex carrier;
  VertexId own = 0;
  int natural_level = 0;
  Simplex base_carrier;
  bool has_coords = false;
  Point coords;
  std::uint64_t serial = 0;
};

/**
 * Append-only store shared by every complex built over the same base.
 * Supports mark/rollback so that large enumerations can discard scratch vertices.
 */
class VertexTable {
 public:
  struct Mark {
    std::size_t records = 0;
  };

  VertexId add_base(const std::string& name, int color, std::optional<Point> coords = std::nullopt);
  std::optional<VertexId> find_base(const std::string& name) const;

  /// Vertex of `color` over `carrier` (any order; duplicates removed).
  VertexId intern(int color, const std::vector<VertexId>& carrier);
  std::optional<VertexId> find(int color, const std::vector<VertexId>& carrier) const;

  const VertexRecord& operator[](VertexId v) const { return records_.at(v); }
  std::size_t size() const { return records_.size(); }
  bool is_base(VertexId v) const { return records_.at(v).carrier.empty(); }

  /// Canonical name of v viewed as a vertex of the level-`level` subdivision.
  std::string name(VertexId v, int level) const;
  /// Parse a canonical name, interning the vertex. Returns the id and the name's level.
  std::pair<VertexId, int> parse_name(const std::string& text);
  /// Parse without creating vertices.
  std::optional<std::pair<VertexId, int>> find_name(const std::string& text) const;

  /// Vertices of the level-(level-1) simplex that v subdivides when seen at `level`.
  Simplex carrier_at(VertexId v, int level) const;

  Mark mark() const { return Mark{records_.size()}; }
  void rollback(Mark m);

 private:
  struct Key {
    int color;
    std::vector<VertexId> ids;
    bool operator==(const Key& o) const { return color == o.color && ids == o.ids; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  template <class Resolve>
  std::optional<std::pair<VertexId, int>> parse_impl(const std::string& text, std::size_t& pos,
                                                     Resolve&& resolve) const;

  std::vector<VertexRecord> records_;
  std::unordered_map<Key, VertexId, KeyHash> index_;
  std::map<std::string, VertexId> base_index_;
  std::uint64_t next_serial_ = 1;
};

using TablePtr = std::shared_ptr<VertexTable>;

}  // namespace gact
