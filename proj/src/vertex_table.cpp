#include "gact/vertex_table.hpp"

#include "gact/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace gact {

Simplex make_simplex(std::vector<VertexId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool is_face(const Simplex& face, const Simplex& of) {
  return std::includes(of.begin(), of.end(), face.begin(), face.end());
}

Simplex simplex_union(const Simplex& a, const Simplex& b) {
  Simplex out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Simplex simplex_intersection(const Simplex& a, const Simplex& b) {
  Simplex out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t VertexTable::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(k.color);
  for (VertexId v : k.ids) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

static bool valid_base_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (c == '@' || c == '[' || c == ']' || c == ',' || c == ' ' || c == '"') return false;
  return true;
}

VertexId VertexTable::add_base(const std::string& name, int color, std::optional<Point> coords) {
  if (!valid_base_name(name)) throw InvalidArgument("invalid base vertex name '" + name + "'");
  if (color < 0) throw InvalidArgument("negative color for vertex '" + name + "'");
  if (base_index_.count(name)) throw InvalidArgument("duplicate base vertex '" + name + "'");
  VertexRecord r;
  r.color = color;
  r.base_name = name;
  r.own = static_cast<VertexId>(records_.size());
  r.natural_level = 0;
  r.base_carrier = {r.own};
  if (coords) {
    r.has_coords = true;
    r.coords = *coords;
  }
  r.serial = next_serial_++;
  records_.push_back(std::move(r));
  VertexId id = static_cast<VertexId>(records_.size() - 1);
  base_index_[name] = id;
  return id;
}

std::optional<VertexId> VertexTable::find_base(const std::string& name) const {
  auto it = base_index_.find(name);
  if (it == base_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexId> VertexTable::find(int color, const std::vector<VertexId>& carrier) const {
  Simplex ids = make_simplex(carrier);
  if (ids.size() == 1) {
    if (ids[0] >= records_.size() || records_[ids[0]].color != color) return std::nullopt;
    return ids[0];
  }
  auto it = index_.find(Key{color, ids});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId VertexTable::intern(int color, const std::vector<VertexId>& carrier) {
  Simplex ids = make_simplex(carrier);
  if (ids.empty()) throw InvalidArgument("empty carrier");
  for (VertexId v : ids)
    if (v >= records_.size()) throw InvalidArgument("unknown vertex id in carrier");
  if (ids.size() == 1) {
    if (records_[ids[0]].color != color)
      throw InvalidArgument("carrier does not contain a vertex of color " + std::to_string(color));
    return ids[0];
  }
  Key key{color, ids};
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;

  VertexRecord r;
  r.color = color;
  bool found_own = false;
  bool coords = true;
  int level = 0;
  std::vector<int> seen_colors;
  for (VertexId v : ids) {
    const VertexRecord& c = records_[v];
    seen_colors.push_back(c.color);
    if (c.color == color) {
      r.own = v;
      found_own = true;
    }
    level = std::max(level, c.natural_level);
    r.base_carrier = simplex_union(r.base_carrier, c.base_carrier);
    coords = coords && c.has_coords;
  }
  std::sort(seen_colors.begin(), seen_colors.end());
  if (std::adjacent_find(seen_colors.begin(), seen_colors.end()) != seen_colors.end())
    throw InvalidArgument("carrier has repeated colors");
  if (!found_own)
    throw InvalidArgument("carrier does not contain a vertex of color " + std::to_string(color));
  r.natural_level = level + 1;
  r.carrier = ids;
  if (coords) {
    // own corner weight 1/(2k-1), every other vertex 2/(2k-1), k = |carrier|
    const std::size_t k = ids.size();
    const Rational denom(static_cast<long>(2 * k - 1));
    r.coords.assign(records_[ids[0]].coords.size(), 0);
    for (VertexId v : ids) {
      const Point& p = records_[v].coords;
      if (p.size() != r.coords.size()) throw InvalidArgument("coordinate arity mismatch in carrier");
      Rational w = (v == r.own ? Rational(1) : Rational(2)) / denom;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) r.coords[i] += w * p[i];
    }
    r.has_coords = true;
  }
  r.serial = next_serial_++;
  records_.push_back(std::move(r));
  VertexId id = static_cast<VertexId>(records_.size() - 1);
  index_.emplace(std::move(key), id);
  return id;
}

Simplex VertexTable::carrier_at(VertexId v, int level) const {
  const VertexRecord& r = records_.at(v);
  if (level < 1) throw InvalidArgument("carrier_at needs level >= 1");
  if (r.natural_level > level)
    throw InvalidArgument("vertex does not exist at level " + std::to_string(level));
  if (r.natural_level < level) return {v};
  return r.carrier;
}

std::string VertexTable::name(VertexId v, int level) const {
  std::unordered_map<std::uint64_t, std::string> memo;
  std::function<const std::string&(VertexId, int)> rec = [&](VertexId u, int lvl) -> const std::string& {
    std::uint64_t key = (static_cast<std::uint64_t>(u) << 16) | static_cast<std::uint64_t>(lvl);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const VertexRecord& r = records_.at(u);
    std::string out;
    if (r.natural_level > lvl) {
      throw InvalidArgument("vertex does not exist at level " + std::to_string(lvl));
    } else if (lvl == 0) {
      out = r.base_name;
    } else if (r.natural_level < lvl) {
      out = "c" + std::to_string(r.color) + "@[" + rec(u, lvl - 1) + "]";
    } else {
      std::vector<VertexId> members = r.carrier;
      std::sort(members.begin(), members.end(),
                [&](VertexId a, VertexId b) { return records_[a].color < records_[b].color; });
      out = "c" + std::to_string(r.color) + "@[";
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ",";
        out += rec(members[i], lvl - 1);
      }
      out += "]";
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  return rec(v, level);
}

template <class Resolve>
std::optional<std::pair<VertexId, int>> VertexTable::parse_impl(const std::string& text, std::size_t& pos,
                                                                Resolve&& resolve) const {
  auto fail = [&](const std::string& why) -> SchemaError {
    return SchemaError("bad vertex name '" + text + "': " + why);
  };
  // subdivided form: c<digits>@[ ... ]
  std::size_t p = pos;
  bool sub = p < text.size() && text[p] == 'c';
  std::size_t q = p + 1;
  while (sub && q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
  sub = sub && q > p + 1 && q + 1 < text.size() && text[q] == '@' && text[q + 1] == '[';
  if (!sub) {
    std::size_t end = p;
    while (end < text.size() && text[end] != ',' && text[end] != ']') ++end;
    std::string base = text.substr(p, end - p);
    if (base.empty()) throw fail("empty component");
    auto id = find_base(base);
    if (!id) throw fail("unknown base vertex '" + base + "'");
    pos = end;
    return std::make_pair(*id, 0);
  }
  int color = std::stoi(text.substr(p + 1, q - p - 1));
  pos = q + 2;
  std::vector<std::pair<VertexId, int>> items;
  while (true) {
    auto item = parse_impl(text, pos, resolve);
    if (!item) return std::nullopt;
    items.push_back(*item);
    if (pos >= text.size()) throw fail("unterminated carrier");
    if (text[pos] == ',') {
      ++pos;
      continue;
    }
    if (text[pos] == ']') {
      ++pos;
      break;
    }
    throw fail("unexpected character");
  }
  int level = items[0].second;
  std::vector<VertexId> ids;
  for (auto& [id, lvl] : items) {
    if (lvl != level) throw fail("carrier members at different levels");
    ids.push_back(id);
  }
  if (items.size() == 1) {
    if (records_[ids[0]].color != color) throw fail("injected vertex has a different color");
    return std::make_pair(ids[0], level + 1);
  }
  auto id = resolve(color, ids);
  if (!id) return std::nullopt;
  if (records_[*id].natural_level != level + 1) throw fail("carrier is not a simplex of the level below");
  return std::make_pair(*id, level + 1);
}

std::pair<VertexId, int> VertexTable::parse_name(const std::string& text) {
  std::size_t pos = 0;
  auto r = parse_impl(text, pos, [this](int c, const std::vector<VertexId>& ids) -> std::optional<VertexId> {
    return intern(c, ids);
  });
  if (pos != text.size()) throw SchemaError("trailing characters in vertex name '" + text + "'");
  return *r;
}

std::optional<std::pair<VertexId, int>> VertexTable::find_name(const std::string& text) const {
  std::size_t pos = 0;
  std::optional<std::pair<VertexId, int>> r;
  try {
    r = parse_impl(text, pos, [this](int c, const std::vector<VertexId>& ids) { return find(c, ids); });
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
  if (r && pos != text.size()) throw SchemaError("trailing characters in vertex name '" + text + "'");
  return r;
}

void VertexTable::rollback(Mark m) {
  if (m.records > records_.size()) throw InternalError("rollback past the end of the table");
  for (std::size_t i = m.records; i < records_.size(); ++i) {
    const VertexRecord& r = records_[i];
    if (r.carrier.empty())
      base_index_.erase(r.base_name);
    else
      index_.erase(Key{r.color, r.carrier});
  }
  records_.resize(m.records);
}

}  // namespace gact
