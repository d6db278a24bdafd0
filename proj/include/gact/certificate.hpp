#pragma once

#include "gact/json_io.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace gact {

std::uint64_t fnv1a64(const std::string& bytes);
/// 16 lowercase hex digits.
std::string content_hash(const std::string& bytes);

/// {kind, inputs: {label: hash of the content}, verdict, bounds, witnesses}; `inputs` maps labels to raw contents.
Json make_certificate(const std::string& kind, const std::map<std::string, std::string>& inputs,
                      const std::string& verdict, Json bounds, Json witnesses);

}  // namespace gact
