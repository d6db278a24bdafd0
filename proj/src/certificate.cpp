#include "gact/certificate.hpp"

#include <cstdio>

namespace gact {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string content_hash(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

Json make_certificate(const std::string& kind, const std::map<std::string, std::string>& inputs,
                      const std::string& verdict, Json bounds, Json witnesses) {
  Json hashes = Json::object();
  for (const auto& [label, content] : inputs) hashes[label] = content_hash(content);
  if (witnesses.is_null()) witnesses = Json::array();
  if (!witnesses.is_array()) witnesses = Json::array({witnesses});
  return Json{{"kind", kind}, {"inputs", hashes}, {"verdict", verdict}, {"bounds", std::move(bounds)},
              {"witnesses", std::move(witnesses)}};
}

}  // namespace gact
