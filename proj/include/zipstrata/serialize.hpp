#pragma once

// DOT / JSON export of strata posets, and the JSON reader used for round trips.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zipstrata/zip_poset.hpp"

namespace zipstrata {

inline constexpr int kJsonSchema = 1;

/// Plain-data view of a poset as written to disk.
struct PosetDocument {
  int schema = kJsonSchema;
  std::string type;    // "C2", "A3^tw"
  std::string I;       // "{1,3}"
  std::string flavor;  // "EO" | "DL" | "custom"
  std::string side;    // "left" | "right"
  std::vector<std::string> labels;  // reduced words, "e" for the identity
  std::vector<int> lengths;
  std::vector<std::vector<bool>> leq;
  std::vector<std::pair<std::size_t, std::size_t>> hasse;  // (lower, upper)

  friend bool operator==(const PosetDocument&, const PosetDocument&) = default;
};

PosetDocument make_document(const ZipDatum& d, const StrataPoset& p, Side side);

/// Graphviz digraph: one node per label (name = reduced word, xlabel =
/// length), Hasse edges from lower to upper. Node order is the poset order.
std::string to_dot(const PosetDocument& doc);
std::string to_json(const PosetDocument& doc, int indent = 2);
/// Throws ConfigError on malformed input or an unknown schema.
PosetDocument parse_json(const std::string& text);

}  // namespace zipstrata
